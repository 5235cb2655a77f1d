"""Scanning stanzas and identifying their meter, exactly or fuzzily."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal

from ..errors import EmptyDatabase, NotFuzzy
from ..text.composition import Stanza
from ..text.phonemes import LENGTHEN, SHORTEN, is_long
from ..text.syllables import Syllable, weigh, weight_string
from ..text.translit import encode_iast
from .db import ANUSTUBH_LENGTH, MeterDB, MeterPattern
from .distance import Edit, hamming, levenshtein

DEFAULT_BUDGET = 2


@dataclass(frozen=True)
class ScanResult:
    padas: tuple[str, ...]
    anceps: bool = True

    @property
    def syllable_counts(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.padas)

    def __bool__(self) -> bool:
        return bool(self.padas)


def scan(stanza: Stanza, pada_final_anceps: bool = True) -> ScanResult:
    return ScanResult(
        padas=tuple(weight_string(weigh(p.syllables, pada_final_anceps)) for p in stanza.padas),
        anceps=pada_final_anceps,
    )


@dataclass(frozen=True)
class Mismatch:
    pada: int  # 1-based
    syllable: int  # 0-based index into the observed pada
    expected: str | None
    observed: str | None
    kind: Literal["substitute", "insert", "delete"]


@dataclass(frozen=True)
class MeterMatch:
    meter_name: str
    match_kind: Literal["exact", "fuzzy"]
    distance: int
    mismatches: tuple[Mismatch, ...] = ()
    pada_distances: tuple[int, ...] = ()
    # per-pada variant actually matched (pathyā / ra-vipulā / component name)
    pada_variants: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if (self.match_kind == "exact") != (self.distance == 0):
            raise ValueError("exact iff distance == 0")

    @property
    def sort_key(self) -> tuple:
        return (self.match_kind != "exact", self.distance, self.meter_name)


def _pada_candidates(meter: MeterPattern, idx: int, observed: str,
                     final_anceps: bool = True) -> list[tuple[int, str, list[Edit]]]:
    """All alternatives for one pada as ``(distance, label, edits)``, best first."""
    out = []
    for label, slots in meter.alternatives(idx, final_anceps):
        if meter.family == "anustubh" and len(observed) == ANUSTUBH_LENGTH:
            # rule evaluation: one violation per offending position
            d, edits = hamming(observed, slots)
        else:
            d, edits = levenshtein(observed, slots)
        out.append((d, label, edits))
    out.sort(key=lambda t: t[0])
    return out


def pada_distance(meter: MeterPattern, idx: int, observed: str, final_anceps: bool = True) -> int:
    return _pada_candidates(meter, idx, observed, final_anceps)[0][0]


def match_meter(scan_result: ScanResult, meter: MeterPattern, budget: int = DEFAULT_BUDGET) -> MeterMatch | None:
    """Score one meter; None when a pada exceeds ``budget`` or rules fail."""
    per_pada = [_pada_candidates(meter, i, w, scan_result.anceps) for i, w in enumerate(scan_result.padas)]
    if not per_pada:
        return None

    if meter.family == "upajati":
        chosen = _choose_upajati(per_pada, meter.components)
        if chosen is None:
            return None
    else:
        chosen = [cands[0] for cands in per_pada]

    if any(d > budget for d, _, _ in chosen):
        return None
    total = sum(d for d, _, _ in chosen)
    mismatches = tuple(
        Mismatch(pada=i + 1, syllable=e.observed_index, expected=e.expected, observed=e.observed, kind=e.kind)
        for i, (_, _, edits) in enumerate(chosen)
        for e in edits
    )
    return MeterMatch(
        meter_name=meter.name,
        match_kind="exact" if total == 0 else "fuzzy",
        distance=total,
        mismatches=mismatches,
        pada_distances=tuple(d for d, _, _ in chosen),
        pada_variants=tuple(label for _, label, _ in chosen),
    )


def _choose_upajati(per_pada, components):
    """Best per-pada component choice in which both components occur."""
    best = None
    options = [[c for c in cands if c[0] == cands[0][0]] for cands in per_pada]
    for combo in itertools.product(*options):
        if set(label for _, label, _ in combo) == set(components):
            return list(combo)
    # no minimal assignment uses both components; fall back to the
    # cheapest assignment that does
    for combo in itertools.product(*per_pada):
        if set(label for _, label, _ in combo) != set(components):
            continue
        cost = sum(d for d, _, _ in combo)
        if best is None or cost < best[0]:
            best = (cost, list(combo))
    return best[1] if best else None


def identify(scan_result: ScanResult, db: MeterDB, budget: int = DEFAULT_BUDGET) -> list[MeterMatch]:
    """Every meter within ``budget`` edits per pada, best first.

    Ranking: exact matches first, then ascending total distance, then name.
    """
    if len(db) == 0:
        raise EmptyDatabase("meter database is empty")
    if not scan_result:
        return []
    matches = [m for m in (match_meter(scan_result, meter, budget) for meter in db) if m is not None]
    matches.sort(key=lambda m: m.sort_key)
    return matches


@dataclass(frozen=True)
class Suggestion:
    pada: int
    syllable: int
    span: tuple[int, int]  # char offsets into the canonical pada text
    expected: str | None
    observed: str | None
    kind: str
    word: str  # IAST form of the affected word
    syllable_text: str  # IAST form of the affected syllable
    hint: str


def _hint(m: Mismatch, syl: Syllable, heavy_by_position: bool, after_delete: bool = False) -> str:
    s = encode_iast(str(syl))
    if after_delete and m.kind == "substitute" and m.expected == "G":
        return f"'{s}' turns guru once the extra syllable before it is dropped (conjunct closes it)"
    if m.kind == "delete":
        return f"extra syllable '{s}': remove it (e.g. drop its vowel to form a conjunct)"
    if m.kind == "insert":
        return f"a {'guru' if m.expected == 'G' else 'laghu'} syllable is missing next to '{s}'"
    v = syl.nucleus
    if m.expected == "G":
        if v in LENGTHEN:
            return f"lengthen the vowel of '{s}' ({encode_iast(v)} -> {encode_iast(LENGTHEN[v])})"
        return f"'{s}' should be guru"
    if syl.coda is not None:
        return f"'{s}' is heavy because of {'anusvara' if syl.coda == 'M' else 'visarga'}; check the reading"
    if is_long(v):
        if v in SHORTEN:
            return f"shorten the vowel of '{s}' ({encode_iast(v)} -> {encode_iast(SHORTEN[v])})"
        return f"'{s}' has a diphthong and cannot be laghu; check the reading"
    if heavy_by_position:
        return f"'{s}' is heavy before a conjunct; check the following cluster"
    return f"'{s}' should be laghu"


def suggest_corrections(stanza: Stanza, match: MeterMatch) -> list[Suggestion]:
    """Map each mismatch of a fuzzy match back onto the stanza text."""
    if match.match_kind == "exact":
        raise NotFuzzy(f"{match.meter_name}: exact match has nothing to correct")
    out = []
    prev = None
    for m in match.mismatches:
        pada = stanza.padas[m.pada - 1]
        sylls = pada.syllables
        idx = min(m.syllable, len(sylls) - 1)
        syl = sylls[idx]
        if m.kind == "insert":
            # point at the gap: the end of the previous syllable or start of the next
            anchor = sylls[idx]
            span = (anchor.span[0], anchor.span[0]) if m.syllable < len(sylls) else (anchor.span[1], anchor.span[1])
        else:
            span = syl.span
        heavy_by_position = idx + 1 < len(sylls) and sylls[idx + 1].is_conjunct
        word = stanza.word_at(pada.position, syl.nucleus_offset)
        after_delete = (
            prev is not None and prev.kind == "delete" and prev.pada == m.pada
            and abs(prev.syllable - m.syllable) == 1
        )
        out.append(Suggestion(
            pada=m.pada,
            syllable=m.syllable,
            span=span,
            expected=m.expected,
            observed=m.observed,
            kind=m.kind,
            word=encode_iast(word.text) if word else "",
            syllable_text=encode_iast(str(syl)),
            hint=_hint(m, syl, heavy_by_position, after_delete),
        ))
        prev = m
    return out
