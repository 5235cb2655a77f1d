"""Phoneme inventory over the canonical (SLP1) scheme.

Each phoneme is one character, so string offsets into canonical text are
phoneme offsets. Word separators (space, hyphen) are the only
non-phoneme characters allowed in canonical text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

PhonemeKind = Literal["vowel", "consonant", "anusvara", "visarga"]

SEPARATORS = frozenset(" -")

SHORT_VOWELS = "aiufx"
LONG_VOWELS = "AIUFXeEoO"
VOWELS = SHORT_VOWELS + LONG_VOWELS

# rows of the sparsa grid, position 1..5 (unvoiced, aspirate, voiced,
# voiced aspirate, nasal)
VARGAS: dict[str, str] = {
    "velar": "kKgGN",
    "palatal": "cCjJY",
    "retroflex": "wWqQR",
    "dental": "tTdDn",
    "labial": "pPbBm",
}
SEMIVOWELS = "yrlv"
SIBILANTS = "Szs"
ASPIRATE_H = "h"

CONSONANTS = "".join(VARGAS.values()) + SEMIVOWELS + SIBILANTS + ASPIRATE_H
ANUSVARA = "M"
VISARGA = "H"
ALPHABET = frozenset(VOWELS + CONSONANTS + ANUSVARA + VISARGA)


@dataclass(frozen=True)
class ConsonantClass:
    group: Literal["sparsa", "semivowel", "sibilant", "h"]
    row: Optional[str] = None  # varga name for sparsa consonants
    position: Optional[int] = None  # 1..5 within the varga


@dataclass(frozen=True)
class Phoneme:
    code: str
    kind: PhonemeKind
    vowel_length: Optional[Literal["short", "long"]] = None
    consonant_class: Optional[ConsonantClass] = None

    def __post_init__(self):
        if (self.vowel_length is not None) != (self.kind == "vowel"):
            raise ValueError(f"{self.code}: vowel_length iff vowel")
        if (self.consonant_class is not None) != (self.kind == "consonant"):
            raise ValueError(f"{self.code}: consonant_class iff consonant")

    @property
    def is_vowel(self) -> bool:
        return self.kind == "vowel"

    @property
    def is_consonant(self) -> bool:
        return self.kind == "consonant"


def _build_inventory() -> dict[str, Phoneme]:
    inv: dict[str, Phoneme] = {}
    for v in SHORT_VOWELS:
        inv[v] = Phoneme(v, "vowel", vowel_length="short")
    for v in LONG_VOWELS:
        inv[v] = Phoneme(v, "vowel", vowel_length="long")
    for row, letters in VARGAS.items():
        for pos, c in enumerate(letters, start=1):
            inv[c] = Phoneme(c, "consonant", consonant_class=ConsonantClass("sparsa", row, pos))
    for c in SEMIVOWELS:
        inv[c] = Phoneme(c, "consonant", consonant_class=ConsonantClass("semivowel"))
    for c in SIBILANTS:
        inv[c] = Phoneme(c, "consonant", consonant_class=ConsonantClass("sibilant"))
    inv["h"] = Phoneme("h", "consonant", consonant_class=ConsonantClass("h"))
    inv[ANUSVARA] = Phoneme(ANUSVARA, "anusvara")
    inv[VISARGA] = Phoneme(VISARGA, "visarga")
    return inv


PHONEMES: dict[str, Phoneme] = _build_inventory()


def phoneme(code: str) -> Phoneme:
    return PHONEMES[code]


def is_vowel(code: str) -> bool:
    return code in VOWELS


def is_long(code: str) -> bool:
    return code in LONG_VOWELS


def is_consonant(code: str) -> bool:
    return code in CONSONANTS


def is_sparsa(code: str) -> bool:
    p = PHONEMES.get(code)
    return p is not None and p.consonant_class is not None and p.consonant_class.group == "sparsa"


def varga_of(code: str) -> tuple[str, int] | None:
    """``(row, position)`` for a sparsa consonant, else None."""
    p = PHONEMES.get(code)
    if p is None or p.consonant_class is None or p.consonant_class.group != "sparsa":
        return None
    return p.consonant_class.row, p.consonant_class.position


def is_nasal(code: str) -> bool:
    v = varga_of(code)
    return v is not None and v[1] == 5


# vowel length counterparts, used when phrasing correction hints
LENGTHEN = {"a": "A", "i": "I", "u": "U", "f": "F", "x": "X"}
SHORTEN = {v: k for k, v in LENGTHEN.items()}
