"""Script normalization, syllabification and syllable weights."""

from .composition import (
    Composition,
    Pada,
    Stanza,
    Word,
    WordUnit,
    load_composition,
    make_pada,
    make_stanza,
    normalize_line,
    parse_composition,
)
from .phonemes import PHONEMES, Phoneme, phoneme
from .syllables import GURU, LAGHU, Syllable, Weight, syllabify, vowel_count, weigh, weight_string
from .translit import SCHEMES, from_canonical, to_canonical, transliterate

__all__ = [
    "Composition", "Pada", "Stanza", "Word", "WordUnit",
    "load_composition", "make_pada", "make_stanza", "normalize_line", "parse_composition",
    "PHONEMES", "Phoneme", "phoneme",
    "GURU", "LAGHU", "Syllable", "Weight", "syllabify", "vowel_count", "weigh", "weight_string",
    "SCHEMES", "from_canonical", "to_canonical", "transliterate",
]
