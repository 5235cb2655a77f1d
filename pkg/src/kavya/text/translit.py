"""Codecs between Devanagari, IAST and the canonical SLP1 scheme.

IAST and Devanagari are decoded into canonical text and encoded back out
of it; the canonical form is the only representation the analysis code
sees. Spaces and hyphens pass through every codec unchanged.

IAST cannot distinguish the diphthong ``ai`` from the hiatus ``a`` + ``i``
(likewise ``au`` and aspirate digraphs such as ``kh``); the codec reads the
digraph, so canonical text containing such hiatus sequences does not
survive a trip through IAST.
"""

from __future__ import annotations

import unicodedata
from typing import Literal

from ..errors import InvalidCharacter
from .phonemes import ALPHABET, ANUSVARA, CONSONANTS, SEPARATORS, VISARGA, VOWELS

Scheme = Literal["devanagari", "iast", "slp1"]
SCHEMES: tuple[str, ...] = ("devanagari", "iast", "slp1")

_SLP1_TO_IAST = {
    "a": "a", "A": "ā", "i": "i", "I": "ī", "u": "u", "U": "ū",
    "f": "ṛ", "F": "ṝ", "x": "ḷ", "X": "ḹ",
    "e": "e", "E": "ai", "o": "o", "O": "au",
    "M": "ṁ", "H": "ḥ",
    "k": "k", "K": "kh", "g": "g", "G": "gh", "N": "ṅ",
    "c": "c", "C": "ch", "j": "j", "J": "jh", "Y": "ñ",
    "w": "ṭ", "W": "ṭh", "q": "ḍ", "Q": "ḍh", "R": "ṇ",
    "t": "t", "T": "th", "d": "d", "D": "dh", "n": "n",
    "p": "p", "P": "ph", "b": "b", "B": "bh", "m": "m",
    "y": "y", "r": "r", "l": "l", "v": "v",
    "S": "ś", "z": "ṣ", "s": "s", "h": "h",
}
_IAST_TO_SLP1 = {v: k for k, v in _SLP1_TO_IAST.items()}
_IAST_TO_SLP1["ṃ"] = "M"  # common alternative anusvara glyph, decode only
_IAST_MAX = max(len(k) for k in _IAST_TO_SLP1)

_DEV_INDEPENDENT = {
    "अ": "a", "आ": "A", "इ": "i", "ई": "I", "उ": "u", "ऊ": "U",
    "ऋ": "f", "ॠ": "F", "ऌ": "x", "ॡ": "X",
    "ए": "e", "ऐ": "E", "ओ": "o", "औ": "O",
}
_DEV_MATRA = {
    "ा": "A", "ि": "i", "ी": "I", "ु": "u", "ू": "U",
    "ृ": "f", "ॄ": "F", "ॢ": "x", "ॣ": "X",
    "े": "e", "ै": "E", "ो": "o", "ौ": "O",
}
_DEV_CONSONANT = dict(zip("कखगघङचछजझञटठडढणतथदधनपफबभमयरलवशषसह", "kKgGNcCjJYwWqQRtTdDnpPbBmyrlvSzsh"))
_VIRAMA = "्"
_DEV_ANUSVARA = "ं"
_DEV_VISARGA = "ः"

_SLP1_TO_DEV_INDEPENDENT = {v: k for k, v in _DEV_INDEPENDENT.items()}
_SLP1_TO_DEV_MATRA = {v: k for k, v in _DEV_MATRA.items()}
_SLP1_TO_DEV_CONSONANT = {v: k for k, v in _DEV_CONSONANT.items()}


def _check_mark(out: list[str], char: str, pos: int, scheme: str) -> None:
    # anusvara and visarga close a syllable, so a vowel must precede them
    if not out or out[-1] not in VOWELS:
        raise InvalidCharacter(char, pos, scheme, "anusvara/visarga must follow a vowel")


def decode_slp1(text: str) -> str:
    out: list[str] = []
    for pos, ch in enumerate(text):
        if ch in SEPARATORS:
            out.append(ch)
        elif ch in ALPHABET:
            if ch in (ANUSVARA, VISARGA):
                _check_mark(out, ch, pos, "slp1")
            out.append(ch)
        else:
            raise InvalidCharacter(ch, pos, "slp1")
    return "".join(out)


def decode_iast(text: str) -> str:
    text = unicodedata.normalize("NFC", text)
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in SEPARATORS:
            out.append(ch)
            i += 1
            continue
        for size in range(_IAST_MAX, 0, -1):
            code = _IAST_TO_SLP1.get(text[i:i + size])
            if code is not None:
                if code in (ANUSVARA, VISARGA):
                    _check_mark(out, ch, i, "iast")
                out.append(code)
                i += size
                break
        else:
            raise InvalidCharacter(ch, i, "iast")
    return "".join(out)


def decode_devanagari(text: str) -> str:
    text = unicodedata.normalize("NFC", text)
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in SEPARATORS:
            out.append(ch)
        elif ch in _DEV_CONSONANT:
            out.append(_DEV_CONSONANT[ch])
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt in _DEV_MATRA:
                out.append(_DEV_MATRA[nxt])
                i += 1
            elif nxt == _VIRAMA:
                i += 1
            else:
                out.append("a")
        elif ch in _DEV_INDEPENDENT:
            out.append(_DEV_INDEPENDENT[ch])
        elif ch in (_DEV_ANUSVARA, _DEV_VISARGA):
            _check_mark(out, ch, i, "devanagari")
            out.append(ANUSVARA if ch == _DEV_ANUSVARA else VISARGA)
        else:
            # stray matra or virama lands here too
            raise InvalidCharacter(ch, i, "devanagari")
        i += 1
    return "".join(out)


def encode_iast(canonical: str) -> str:
    return "".join(ch if ch in SEPARATORS else _SLP1_TO_IAST[ch] for ch in canonical)


def encode_devanagari(canonical: str) -> str:
    out: list[str] = []
    i = 0
    n = len(canonical)
    while i < n:
        ch = canonical[i]
        if ch in CONSONANTS:
            out.append(_SLP1_TO_DEV_CONSONANT[ch])
            nxt = canonical[i + 1] if i + 1 < n else ""
            if nxt and nxt in VOWELS:
                if nxt != "a":
                    out.append(_SLP1_TO_DEV_MATRA[nxt])
                i += 1
            else:
                out.append(_VIRAMA)
        elif ch in VOWELS:
            out.append(_SLP1_TO_DEV_INDEPENDENT[ch])
        elif ch == ANUSVARA:
            out.append(_DEV_ANUSVARA)
        elif ch == VISARGA:
            out.append(_DEV_VISARGA)
        else:
            out.append(ch)
        i += 1
    return "".join(out)


_DECODERS = {"slp1": decode_slp1, "iast": decode_iast, "devanagari": decode_devanagari}
_ENCODERS = {"slp1": lambda s: s, "iast": encode_iast, "devanagari": encode_devanagari}


def _check_scheme(scheme: str) -> None:
    if scheme not in _DECODERS:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")


def to_canonical(text: str, scheme: str) -> str:
    _check_scheme(scheme)
    return _DECODERS[scheme](text)


def from_canonical(canonical: str, scheme: str) -> str:
    _check_scheme(scheme)
    return _ENCODERS[scheme](canonical)


def transliterate(text: str, from_scheme: str, to_scheme: str) -> str:
    """Convert ``text`` between schemes, preserving every phoneme.

    >>> transliterate("śrī-kṛṣṇa", "iast", "devanagari")
    'श्री-कृष्ण'
    """
    canonical = to_canonical(text, from_scheme)
    return from_canonical(canonical, to_scheme)
