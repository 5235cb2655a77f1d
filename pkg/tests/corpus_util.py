"""Shared test helpers: the bundled corpus, corruptions and oracles."""

from __future__ import annotations

import functools
import itertools
import re

from kavya.meter import MeterPattern
from kavya.pipeline import bundled_annotations_path, bundled_composition_path
from kavya.text import parse_composition

# (correct reading, corrupted reading, stanza it occurs in)
CORRUPTIONS = {
    "tanuja": ("tanūja", "tanuja", 5),
    "dhuli": ("dhūlī", "dhūli", 5),
    "gadagada": ("gadgada", "gadagada", 6),
}

EXPECTED_METERS = {
    1: "śārdūlavikrīḍita",
    2: "vasantatilakā",
    3: "anuṣṭubh",
    4: "viyoginī",
    5: "viyoginī",
    6: "viyoginī",
    7: "anuṣṭubh",
    8: "upajāti",
}


def corpus_text() -> str:
    return bundled_composition_path().read_text(encoding="utf-8")


def annotations_path():
    return bundled_annotations_path()


def corrupted(which: str):
    good, bad, _ = CORRUPTIONS[which]
    text = corpus_text()
    assert text.count(good) == 1
    return parse_composition(text.replace(good, bad))


# --- independent meter oracles ---------------------------------------------
# Written without reference to the package's DP: plain recursion and regexes.


def oracle_levenshtein(observed: str, slots: str) -> int:
    @functools.lru_cache(maxsize=None)
    def d(i: int, j: int) -> int:
        if i == len(observed):
            return len(slots) - j
        if j == len(slots):
            return len(observed) - i
        same = slots[j] == "X" or slots[j] == observed[i]
        return min(d(i + 1, j + 1) + (not same), d(i + 1, j) + 1, d(i, j + 1) + 1)

    return d(0, 0)


def oracle_hamming(observed: str, slots: str) -> int:
    return sum(1 for w, s in zip(observed, slots) if s != "X" and s != w)


def slot_regex(slots: str) -> re.Pattern:
    return re.compile("".join("[LG]" if s == "X" else s for s in slots))


def oracle_alternatives(meter: MeterPattern, idx: int) -> list[str]:
    """Slot patterns for a pada, rebuilt from the meter fields directly."""
    def free_last(p):
        return p[:-1] + "X"

    if meter.family == "anustubh":
        cads = [meter.pada_patterns[idx % 2]]
        if idx % 2 == 0:
            cads += [c for _, c in meter.variants]
        # syllables 2-3 may not both be light
        mids = [a + b for a in "LG" for b in "LG" if a + b != "LL"]
        return ["X" + m + "X" + c + "X" for c in cads for m in mids]
    if meter.family == "upajati":
        return [free_last(p) for p in meter.pada_patterns]
    return [free_last(meter.pada_patterns[idx % 4])]


def oracle_pada_distance(meter: MeterPattern, idx: int, observed: str) -> int:
    alts = oracle_alternatives(meter, idx)
    if meter.family == "anustubh" and len(observed) == 8:
        return min(oracle_hamming(observed, a) for a in alts)
    return min(oracle_levenshtein(observed, a) for a in alts)


def oracle_exact(meter: MeterPattern, padas: tuple[str, ...]) -> bool:
    if len(padas) != 4:
        return False
    if meter.family == "upajati":
        per = [
            [k for k, alt in enumerate(oracle_alternatives(meter, i)) if slot_regex(alt).fullmatch(p)]
            for i, p in enumerate(padas)
        ]
        return any(set(c) == {0, 1} for c in itertools.product(*per))
    return all(
        any(slot_regex(a).fullmatch(p) for a in oracle_alternatives(meter, i))
        for i, p in enumerate(padas)
    )
