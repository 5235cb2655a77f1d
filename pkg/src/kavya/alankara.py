"""Sound figures detected from the text, meaning figures taken from annotations."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

from .annotations import ARTHA_ALANKARAS, OTHER, ArthaEntry, Span
from .errors import DanglingSpan, DuplicateEntry, KavyaValidationError, UnknownAlankara, ValidationErrors
from .text.composition import Composition, Stanza
from .text.phonemes import SEPARATORS
from .text.translit import from_canonical

SABDA = ("varnanuprasa", "antyanuprasa")

# n and ṇ count as one sound for both alliteration and rhyme
_MERGE = {"R": "n"}


@dataclass(frozen=True)
class Occurrence:
    pada: int
    syllable: int
    offset: int  # char offset in the pada text
    word: int  # stanza-wide word id


@dataclass(frozen=True)
class AlankaraFinding:
    category: Literal["sabda", "artha"]
    name: str
    stanza: int
    stanza_end: int
    padas: Optional[tuple[int, int]] = None
    words: Optional[tuple[int, int]] = None
    evidence: tuple = ()
    unit: str = ""  # repeated phoneme or shared suffix (canonical)
    provenance: Literal["detected", "annotated"] = "detected"
    label: Optional[str] = None
    note: str = ""

    def __post_init__(self):
        if self.category == "sabda" and (self.provenance != "detected" or not self.evidence):
            raise ValueError("sabda findings are detected and carry evidence")
        if self.category == "artha" and self.provenance != "annotated":
            raise ValueError("artha findings are annotated")

    @property
    def display_name(self) -> str:
        return f"other({self.label})" if self.name == OTHER else self.name

    @property
    def sort_key(self) -> tuple:
        first = self.evidence[0] if self.evidence and isinstance(self.evidence[0], Occurrence) else None
        return (self.stanza, self.padas[0] if self.padas else 0,
                first.offset if first else (self.words[0] if self.words else -1), self.name, self.unit)

    def unit_iast(self) -> str:
        return from_canonical(self.unit, "iast")


def _norm(c: str) -> str:
    return _MERGE.get(c, c)


def detect_varnanuprasa(stanza: Stanza, min_count: int = 3) -> list[AlankaraFinding]:
    """Consonants repeated at least ``min_count`` times within one pada."""
    findings = []
    for pada in stanza.padas:
        positions: dict[str, list[Occurrence]] = {}
        for si, syl in enumerate(pada.syllables):
            consonants = syl.onset + syl.tail
            offsets = syl.offsets[: len(syl.onset)] + syl.offsets[len(syl.offsets) - len(syl.tail):]
            for c, off in zip(consonants, offsets):
                w = stanza.word_at(pada.position, off)
                positions.setdefault(_norm(c), []).append(Occurrence(pada.position, si, off, w.index if w else -1))
        for c, occ in positions.items():
            if len(occ) >= min_count:
                words = [o.word for o in occ]
                findings.append(AlankaraFinding(
                    category="sabda", name="varnanuprasa", stanza=stanza.index, stanza_end=stanza.index,
                    padas=(pada.position, pada.position), words=(min(words), max(words)),
                    evidence=tuple(occ), unit=c,
                ))
    return sorted(findings, key=lambda f: f.sort_key)


def rhyme_form(word: str) -> str:
    """Phonemes of ``word`` with ṇ merged into n and a final anusvara as m."""
    ph = [c for c in word if c not in SEPARATORS]
    if ph and ph[-1] == "M":
        ph[-1] = "m"
    return "".join(_norm(c) for c in ph)


@dataclass(frozen=True)
class RhymeWord:
    index: int  # position in the input list
    text: str


def detect_antyanuprasa(
    words: Sequence[str],
    min_words: int = 3,
    min_suffix: int = 2,
    stanza: int = 0,
    word_ids: Sequence[tuple[int, int]] | None = None,
) -> Optional[AlankaraFinding]:
    """Longest phoneme suffix shared by at least ``min_words`` words.

    ``word_ids`` optionally gives the stanza word-id range of each entry so
    the finding's span points into the stanza.
    """
    forms = [rhyme_form(w) for w in words]
    best: tuple[int, int, str] | None = None
    for suffix_len in range(min_suffix, max((len(f) for f in forms), default=0) + 1):
        counts = Counter(f[-suffix_len:] for f in forms if len(f) >= suffix_len)
        for suffix, n in counts.items():
            if n < min_words:
                continue
            key = (suffix_len, n, suffix)
            # longest first, then most participants, then alphabetical
            if best is None or (key[0], key[1]) > (best[0], best[1]) or (
                key[:2] == best[:2] and suffix < best[2]
            ):
                best = key
    if best is None:
        return None
    suffix = best[2]
    members = tuple(RhymeWord(i, w) for i, (w, f) in enumerate(zip(words, forms)) if f.endswith(suffix))
    span_words = None
    if word_ids:
        ids = [word_ids[m.index] for m in members]
        span_words = (min(a for a, _ in ids), max(b for _, b in ids))
    return AlankaraFinding(
        category="sabda", name="antyanuprasa", stanza=stanza, stanza_end=stanza,
        words=span_words, evidence=members, unit=suffix,
    )


def detect_stanza_antyanuprasa(stanza: Stanza, min_words: int = 3, min_suffix: int = 2,
                               pada_final_only: bool = False) -> Optional[AlankaraFinding]:
    """Run end-rhyme detection over the stanza's whitespace-delimited words.

    With ``pada_final_only`` only the last word of each pada takes part.
    """
    units = list(stanza.word_units)
    if pada_final_only:
        last = {}
        for u in units:
            last[u.pada] = u
        units = [last[p] for p in sorted(last)]
    if len(units) < 2:
        return None
    finding = detect_antyanuprasa(
        [u.text for u in units], min_words, min_suffix, stanza=stanza.index,
        word_ids=[(u.first_word, u.last_word) for u in units],
    )
    if finding is None:
        return None
    padas = [units[m.index].pada for m in finding.evidence]
    return AlankaraFinding(
        category="sabda", name="antyanuprasa", stanza=stanza.index, stanza_end=stanza.index,
        padas=(min(padas), max(padas)), words=finding.words, evidence=finding.evidence, unit=finding.unit,
    )


def detect_sabda(stanza: Stanza, min_count: int = 3, min_words: int = 3, min_suffix: int = 2) -> list[AlankaraFinding]:
    out = detect_varnanuprasa(stanza, min_count)
    rhyme = detect_stanza_antyanuprasa(stanza, min_words, min_suffix)
    if rhyme is not None:
        out.append(rhyme)
    return sorted(out, key=lambda f: f.sort_key)


def _span_issue(span: Span, composition: Composition) -> str | None:
    n = len(composition.stanzas)
    for s in (span.stanza_start, span.stanza_end):
        if not 1 <= s <= n:
            return f"stanza {s} does not exist (composition has {n})"
    if span.words is not None:
        words = len(composition.stanza(span.stanza).words)
        if span.words[1] >= words or span.words[0] < 0:
            return f"words {list(span.words)} outside stanza {span.stanza} (0..{words - 1})"
    if span.padas is not None:
        padas = len(composition.stanza(span.stanza).padas)
        if span.padas[0] < 1 or span.padas[1] > padas:
            return f"padas {list(span.padas)} outside stanza {span.stanza} (1..{padas})"
    return None


def artha_issues(entries: Iterable[ArthaEntry], composition: Composition) -> list[tuple[str, str, str]]:
    """``(kind, path, message)`` for every problem in the artha entries."""
    issues = []
    seen: set[tuple] = set()
    for i, e in enumerate(entries):
        path = f"$.artha_alankara[{i}]"
        if e.name == OTHER:
            if not e.label:
                issues.append(("UnknownAlankara", f"{path}.name", "other(...) needs a name"))
        elif e.name not in ARTHA_ALANKARAS:
            issues.append(("UnknownAlankara", f"{path}.name",
                           f"{e.name!r} is not in the vocabulary; use other({e.name}) for figures outside it"))
        problem = _span_issue(e.span, composition)
        if problem:
            issues.append(("DanglingSpan", f"{path}.span", problem))
        key = (e.name, e.label, e.span)
        if key in seen:
            issues.append(("DuplicateEntry", path, f"{e.display_name} annotated twice on the same span"))
        seen.add(key)
    return issues


_ERRORS = {"UnknownAlankara": UnknownAlankara, "DanglingSpan": DanglingSpan, "DuplicateEntry": DuplicateEntry}


def validate_artha_annotations(entries: Iterable[ArthaEntry], composition: Composition) -> list[AlankaraFinding]:
    """Normalize annotated meaning figures into findings.

    A single problem raises its own error type; several are raised together
    as :class:`ValidationErrors`.
    """
    entries = list(entries)
    issues = artha_issues(entries, composition)
    if issues:
        errors: list[KavyaValidationError] = [_ERRORS[k](f"{p}: {m}") for k, p, m in issues]
        if len(errors) == 1:
            raise errors[0]
        raise ValidationErrors(errors)
    findings = []
    for e in entries:
        padas = e.span.padas
        if padas is None and e.span.words is not None:
            st = composition.stanza(e.span.stanza)
            padas = (st.words[e.span.words[0]].pada, st.words[e.span.words[1]].pada)
        findings.append(AlankaraFinding(
            category="artha", name=e.name, stanza=e.span.stanza_start, stanza_end=e.span.stanza_end,
            padas=padas, words=e.span.words, provenance="annotated", label=e.label, note=e.note,
        ))
    return sorted(findings, key=lambda f: f.sort_key)


def count_by_name(findings: Iterable[AlankaraFinding]) -> dict[str, int]:
    return dict(sorted(Counter(f.display_name for f in findings).items()))
