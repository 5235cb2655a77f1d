"""Akshara segmentation and laghu/guru weights.

Segmentation works on canonical text. Every vowel is the nucleus of one
syllable; consonants between two vowels all go to the onset of the second
syllable (word breaks inside a pada are ignored), and anusvara/visarga
close the syllable they follow. Consonants after the last vowel of a pada
form the ``tail`` of the final syllable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from ..errors import InvalidCharacter, NoVowel
from .phonemes import ALPHABET, ANUSVARA, SEPARATORS, VISARGA, is_consonant, is_long, is_vowel


@dataclass(frozen=True)
class Syllable:
    onset: tuple[str, ...]
    nucleus: str
    coda: str | None = None
    tail: tuple[str, ...] = ()
    # char offsets of every phoneme, in onset/nucleus/coda/tail order
    offsets: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_vowel(self.nucleus):
            raise ValueError(f"nucleus must be a vowel, got {self.nucleus!r}")
        if self.coda not in (None, ANUSVARA, VISARGA):
            raise ValueError(f"coda must be anusvara or visarga, got {self.coda!r}")

    @property
    def phonemes(self) -> tuple[str, ...]:
        coda = (self.coda,) if self.coda else ()
        return self.onset + (self.nucleus,) + coda + self.tail

    @property
    def span(self) -> tuple[int, int]:
        """Half-open character span in the pada text."""
        if not self.offsets:
            return (0, 0)
        return (self.offsets[0], self.offsets[-1] + 1)

    @property
    def nucleus_offset(self) -> int:
        return self.offsets[len(self.onset)]

    @property
    def is_conjunct(self) -> bool:
        return len(self.onset) >= 2

    def __str__(self) -> str:
        return "".join(self.phonemes)


@dataclass(frozen=True)
class Weight:
    """A syllable weight; ``anceps`` marks a metrically free final position."""

    value: Literal["L", "G"]
    anceps: bool = False

    def __post_init__(self):
        if self.value not in ("L", "G"):
            raise ValueError(f"weight must be L or G, got {self.value!r}")

    def matches(self, expected: str) -> bool:
        return self.anceps or expected == self.value

    def __str__(self) -> str:
        return self.value


LAGHU = Weight("L")
GURU = Weight("G")


def vowel_count(text: str) -> int:
    return sum(1 for ch in text if is_vowel(ch))


def syllabify(pada_text: str, context: str = "") -> list[Syllable]:
    """Split one pada of canonical text into syllables.

    ``context`` (e.g. ``"stanza 3, pada 2"``) is folded into error messages.
    """
    syllables: list[dict] = []
    pending: list[tuple[str, int]] = []
    saw_phoneme = False

    for pos, ch in enumerate(pada_text):
        if ch in SEPARATORS:
            continue
        if ch not in ALPHABET:
            raise InvalidCharacter(ch, pos, "slp1", context)
        saw_phoneme = True
        if is_vowel(ch):
            syllables.append({
                "onset": [c for c, _ in pending],
                "nucleus": ch,
                "coda": None,
                "offsets": [p for _, p in pending] + [pos],
            })
            pending = []
        elif ch in (ANUSVARA, VISARGA):
            if not syllables or pending or syllables[-1]["coda"] is not None:
                raise InvalidCharacter(ch, pos, "slp1", context or "anusvara/visarga must follow a vowel")
            syllables[-1]["coda"] = ch
            syllables[-1]["offsets"].append(pos)
        else:
            pending.append((ch, pos))

    if not syllables:
        if saw_phoneme:
            raise NoVowel(pada_text, context)
        return []

    tail = tuple(c for c, _ in pending)
    syllables[-1]["offsets"].extend(p for _, p in pending)
    out = []
    for i, s in enumerate(syllables):
        out.append(Syllable(
            onset=tuple(s["onset"]),
            nucleus=s["nucleus"],
            coda=s["coda"],
            tail=tail if i == len(syllables) - 1 else (),
            offsets=tuple(s["offsets"]),
        ))
    return out


def is_heavy(syllables: Sequence[Syllable], i: int) -> bool:
    syl = syllables[i]
    if is_long(syl.nucleus) or syl.coda is not None:
        return True
    if i + 1 < len(syllables):
        return len(syllables[i + 1].onset) >= 2
    # a pada-final syllable closed by a consonant
    return len(syl.tail) >= 1


def weigh(syllables: Sequence[Syllable], pada_final_anceps: bool = True) -> list[Weight]:
    weights = [GURU if is_heavy(syllables, i) else LAGHU for i in range(len(syllables))]
    if pada_final_anceps and weights:
        weights[-1] = Weight(weights[-1].value, anceps=True)
    return weights


def weight_string(weights: Sequence[Weight]) -> str:
    return "".join(w.value for w in weights)


def count_consonants(text: str) -> int:
    return sum(1 for ch in text if is_consonant(ch))
