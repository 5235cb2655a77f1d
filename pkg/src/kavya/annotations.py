"""Human annotation layers for one composition, bound to it by content hash.

The annotation file is JSON::

    {
      "schema_version": 1,
      "composition_hash": "sha256:...",
      "compounds":      [{"span": SPAN, "constituents": [...], "samasa_type": "..."}],
      "dependencies":   [{"stanza": 1, "head": 4, "dependent": 2, "relation": "karma"}],
      "anvaya":         [{"stanza": 1, "order": [3, 0, 1, 2, ...]}],
      "morph":          [{"stanza": 1, "word": 0, "tag": "..."}],
      "rasa":           [{"scope": "composition", "rasa": "srngara", "subtype": "vipralambha",
                          "vibhava": [EVIDENCE], "anubhava": [...], "vyabhicari": [...]}],
      "artha_alankara": [{"name": "rupaka", "span": SPAN, "note": "..."}],
      "vakrokti":       [{"level": 1, "span": SPAN, "note": "..."}],
      "dhvani":         [{"meaning_level": "vyangya", "dhvani_type": "vastu",
                          "dominance": "dominant", "description": "...", "span": SPAN}]
    }

``SPAN`` is ``{"stanza": n}``, ``{"stanza": n, "words": [a, b]}`` (inclusive,
0-based word ids), ``{"stanza": n, "padas": [a, b]}`` or
``{"stanzas": [a, b]}``. ``EVIDENCE`` is a SPAN with an optional ``"note"``.
Word ids index the stanza's tokens after splitting on spaces and hyphens.

Labels are matched after stripping diacritics and case, so ``"śṛṅgāra"``
and ``"srngara"`` are the same label. An empty file is an empty set.

Vakrokti levels follow Kuntaka's six-fold list (``VAKROKTI_LEVELS``). Some
treatments order or name the upper levels differently, for example calling
level 4 contextual rather than sentential. Annotators should map those onto
the numbers here; either the number or the name is accepted.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .errors import HashMismatch, SchemaError, UnknownLabel
from .text.composition import Composition

SCHEMA_VERSION = 1

RASAS = ("srngara", "hasya", "karuna", "raudra", "vira", "bhayanaka", "bibhatsa", "adbhuta", "santa")
SRNGARA_SUBTYPES = ("sambhoga", "vipralambha")
KARAKAS = ("karta", "karma", "karana", "sampradana", "apadana", "adhikarana", "sasthi_sambandha", "other")
VAKROKTI_LEVELS = {
    1: "phonetic",
    2: "lexical_root",
    3: "suffix",
    4: "sentential",
    5: "sectional",
    6: "compositional",
}
MEANING_LEVELS = ("vacya", "laksana", "vyangya")
DHVANI_TYPES = ("vastu", "alankara", "rasa")
DOMINANCE = ("dominant", "subordinate")
ARTHA_ALANKARAS = (
    "rupaka", "upama", "malopama", "vyatireka", "tulyayogita", "visesokti_ukta", "visesokti_anukta",
)
OTHER = "other"

_SECTIONS = ("compounds", "dependencies", "anvaya", "morph", "rasa", "artha_alankara", "vakrokti", "dhvani")


def normalize_label(label: str) -> str:
    """Strip diacritics and case; spaces and hyphens become underscores."""
    decomposed = unicodedata.normalize("NFD", label)
    plain = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return re.sub(r"[\s\-]+", "_", plain.strip().lower())


# --- value types -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Span:
    """Stanza range with an optional word or pada range inside a single stanza."""

    stanza_start: int
    stanza_end: int
    words: Optional[tuple[int, int]] = None
    padas: Optional[tuple[int, int]] = None

    @property
    def stanza(self) -> int:
        return self.stanza_start

    @property
    def single_stanza(self) -> bool:
        return self.stanza_start == self.stanza_end

    def to_json(self) -> dict:
        if not self.single_stanza:
            return {"stanzas": [self.stanza_start, self.stanza_end]}
        out: dict[str, Any] = {"stanza": self.stanza_start}
        if self.words is not None:
            out["words"] = list(self.words)
        if self.padas is not None:
            out["padas"] = list(self.padas)
        return out


@dataclass(frozen=True)
class Evidence:
    span: Span
    note: str = ""


@dataclass(frozen=True)
class CompoundAnnotation:
    span: Span
    constituents: tuple[str, ...]
    samasa_type: Optional[str] = None

    def __post_init__(self):
        if len(self.constituents) < 2:
            raise ValueError("a compound has at least two constituents")

    @property
    def stanza(self) -> int:
        return self.span.stanza


@dataclass(frozen=True)
class DependencyAnnotation:
    stanza: int
    head: int
    dependent: int
    relation: str


@dataclass(frozen=True)
class AnvayaAnnotation:
    stanza: int
    order: tuple[int, ...]


@dataclass(frozen=True)
class MorphAnnotation:
    stanza: int
    word: int
    tag: str


@dataclass(frozen=True)
class RasaAnnotation:
    scope: str  # "composition" or "stanza"
    rasa: str
    subtype: Optional[str] = None
    stanza: Optional[int] = None
    vibhava: tuple[Evidence, ...] = ()
    anubhava: tuple[Evidence, ...] = ()
    vyabhicari: tuple[Evidence, ...] = ()

    @property
    def has_evidence(self) -> bool:
        return bool(self.vibhava or self.anubhava or self.vyabhicari)

    @property
    def label(self) -> str:
        return f"{self.subtype}-{self.rasa}" if self.subtype else self.rasa


@dataclass(frozen=True)
class ArthaEntry:
    name: str
    span: Span
    label: Optional[str] = None  # free name when ``name == "other"``
    note: str = ""

    @property
    def display_name(self) -> str:
        return f"other({self.label})" if self.name == OTHER else self.name


@dataclass(frozen=True)
class VakroktiAnnotation:
    level: int
    span: Span
    note: str = ""

    @property
    def level_name(self) -> str:
        return VAKROKTI_LEVELS[self.level]


@dataclass(frozen=True)
class DhvaniAnnotation:
    meaning_level: str
    dhvani_type: Optional[str] = None
    dominance: str = "subordinate"
    description: str = ""
    span: Optional[Span] = None


@dataclass(frozen=True)
class AnnotationSet:
    composition_hash: Optional[str] = None
    compounds: tuple[CompoundAnnotation, ...] = ()
    dependencies: tuple[DependencyAnnotation, ...] = ()
    anvaya: tuple[AnvayaAnnotation, ...] = ()
    morph: tuple[MorphAnnotation, ...] = ()
    rasa: tuple[RasaAnnotation, ...] = ()
    artha_alankara: tuple[ArthaEntry, ...] = ()
    vakrokti: tuple[VakroktiAnnotation, ...] = ()
    dhvani: tuple[DhvaniAnnotation, ...] = ()
    schema_version: int = SCHEMA_VERSION

    @property
    def is_empty(self) -> bool:
        return not any(getattr(self, s) for s in _SECTIONS)

    def composition_rasa(self) -> Optional[RasaAnnotation]:
        """The composition-scope rasa, or the first stanza-scope one."""
        for r in self.rasa:
            if r.scope == "composition":
                return r
        return self.rasa[0] if self.rasa else None


# --- parsing -----------------------------------------------------------------


def _expect(value, kind, path: str):
    if kind is int and isinstance(value, bool):
        raise SchemaError(path, f"expected int, got {type(value).__name__}")
    if not isinstance(value, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SchemaError(path, f"expected {name}, got {type(value).__name__}")
    return value


def _pair(value, path: str) -> tuple[int, int]:
    _expect(value, list, path)
    if len(value) != 2:
        raise SchemaError(path, "expected a [start, end] pair")
    a, b = (_expect(v, int, f"{path}[{i}]") for i, v in enumerate(value))
    if a > b:
        raise SchemaError(path, f"start {a} after end {b}")
    return a, b


def _span(obj, path: str) -> Span:
    _expect(obj, dict, path)
    unknown = set(obj) - {"stanza", "stanzas", "words", "padas", "note"}
    if unknown:
        raise SchemaError(path, f"unknown span keys {sorted(unknown)}")
    if "stanzas" in obj:
        if any(k in obj for k in ("stanza", "words", "padas")):
            raise SchemaError(path, "'stanzas' cannot be combined with stanza/words/padas")
        a, b = _pair(obj["stanzas"], f"{path}.stanzas")
        return Span(a, b)
    if "stanza" not in obj:
        raise SchemaError(path, "span needs 'stanza' or 'stanzas'")
    s = _expect(obj["stanza"], int, f"{path}.stanza")
    if "words" in obj and "padas" in obj:
        raise SchemaError(path, "give either 'words' or 'padas', not both")
    words = _pair(obj["words"], f"{path}.words") if "words" in obj else None
    padas = _pair(obj["padas"], f"{path}.padas") if "padas" in obj else None
    return Span(s, s, words, padas)


def _label(value, allowed, path: str) -> str:
    _expect(value, str, path)
    norm = normalize_label(value)
    if norm not in allowed:
        raise UnknownLabel(path, value, allowed)
    return norm


def _str(obj: dict, key: str, path: str, default: str = "") -> str:
    return _expect(obj.get(key, default), str, f"{path}.{key}")


def _list(doc: dict, key: str) -> list:
    return _expect(doc.get(key, []), list, f"$.{key}")


def _evidence(items, path: str) -> tuple[Evidence, ...]:
    _expect(items, list, path)
    return tuple(
        Evidence(_span(it, f"{path}[{i}]"), _str(it, "note", f"{path}[{i}]"))
        for i, it in enumerate(items)
    )


def _parse_rasa(obj, path: str) -> RasaAnnotation:
    _expect(obj, dict, path)
    scope = _label(obj.get("scope", "composition"), ("composition", "stanza"), f"{path}.scope")
    raw = _expect(obj.get("rasa"), str, f"{path}.rasa")
    subtype = obj.get("subtype")
    norm = normalize_label(raw)
    # accept the combined "vipralambha-srngara" spelling
    for st in SRNGARA_SUBTYPES:
        if norm == f"{st}_srngara" and subtype is None:
            norm, subtype = "srngara", st
    if norm not in RASAS:
        raise UnknownLabel(f"{path}.rasa", raw, RASAS)
    if subtype is not None:
        if norm != "srngara":
            raise SchemaError(f"{path}.subtype", "only srngara has sub-types")
        subtype = _label(subtype, SRNGARA_SUBTYPES, f"{path}.subtype")
    stanza = None
    if scope == "stanza":
        stanza = _expect(obj.get("stanza"), int, f"{path}.stanza")
    elif "stanza" in obj:
        raise SchemaError(f"{path}.stanza", "composition-scope rasa takes no stanza")
    return RasaAnnotation(
        scope=scope,
        rasa=norm,
        subtype=subtype,
        stanza=stanza,
        vibhava=_evidence(obj.get("vibhava", []), f"{path}.vibhava"),
        anubhava=_evidence(obj.get("anubhava", []), f"{path}.anubhava"),
        vyabhicari=_evidence(obj.get("vyabhicari", []), f"{path}.vyabhicari"),
    )


_OTHER_RE = re.compile(r"^other\((.+)\)$")


def _parse_artha(obj, path: str) -> ArthaEntry:
    _expect(obj, dict, path)
    raw = _expect(obj.get("name"), str, f"{path}.name")
    label = obj.get("label")
    m = _OTHER_RE.match(raw.strip())
    if m:
        name, label = OTHER, m.group(1)
    else:
        name = normalize_label(raw)
    if label is not None:
        label = normalize_label(_expect(label, str, f"{path}.label"))
    if "span" not in obj:
        raise SchemaError(path, "missing 'span'")
    # vocabulary is checked by the alankara validator, so unknown names
    # survive parsing and are reported with their span
    return ArthaEntry(name=name, span=_span(obj["span"], f"{path}.span"), label=label,
                      note=_str(obj, "note", path))


def _parse_vakrokti(obj, path: str) -> VakroktiAnnotation:
    _expect(obj, dict, path)
    level = obj.get("level")
    if isinstance(level, str):
        names = {v: k for k, v in VAKROKTI_LEVELS.items()}
        level = names.get(normalize_label(level), level)
    if isinstance(level, bool) or level not in VAKROKTI_LEVELS:
        raise UnknownLabel(f"{path}.level", level, [str(k) for k in VAKROKTI_LEVELS] + list(VAKROKTI_LEVELS.values()))
    if "span" not in obj:
        raise SchemaError(path, "missing 'span'")
    return VakroktiAnnotation(level, _span(obj["span"], f"{path}.span"), _str(obj, "note", path))


def _parse_dhvani(obj, path: str) -> DhvaniAnnotation:
    _expect(obj, dict, path)
    level = _label(obj.get("meaning_level", ""), MEANING_LEVELS, f"{path}.meaning_level")
    dtype = obj.get("dhvani_type")
    if dtype is not None:
        dtype = _label(dtype, DHVANI_TYPES, f"{path}.dhvani_type")
    dominance = _label(obj.get("dominance", "subordinate"), DOMINANCE, f"{path}.dominance")
    span = _span(obj["span"], f"{path}.span") if "span" in obj else None
    return DhvaniAnnotation(level, dtype, dominance, _str(obj, "description", path), span)


def _parse_compound(obj, path: str) -> CompoundAnnotation:
    _expect(obj, dict, path)
    if "span" not in obj:
        raise SchemaError(path, "missing 'span'")
    span = _span(obj["span"], f"{path}.span")
    if not span.single_stanza or span.words is None:
        raise SchemaError(f"{path}.span", "a compound spans words of one stanza")
    parts = _expect(obj.get("constituents"), list, f"{path}.constituents")
    parts = tuple(_expect(p, str, f"{path}.constituents[{i}]") for i, p in enumerate(parts))
    if len(parts) < 2:
        raise SchemaError(f"{path}.constituents", "a compound needs at least two constituents")
    samasa = obj.get("samasa_type")
    if samasa is not None:
        samasa = normalize_label(_expect(samasa, str, f"{path}.samasa_type"))
    return CompoundAnnotation(span, parts, samasa)


def _parse_dependency(obj, path: str) -> DependencyAnnotation:
    _expect(obj, dict, path)
    return DependencyAnnotation(
        stanza=_expect(obj.get("stanza"), int, f"{path}.stanza"),
        head=_expect(obj.get("head"), int, f"{path}.head"),
        dependent=_expect(obj.get("dependent"), int, f"{path}.dependent"),
        relation=_label(obj.get("relation", ""), KARAKAS, f"{path}.relation"),
    )


def _parse_anvaya(obj, path: str) -> AnvayaAnnotation:
    _expect(obj, dict, path)
    order = _expect(obj.get("order"), list, f"{path}.order")
    return AnvayaAnnotation(
        stanza=_expect(obj.get("stanza"), int, f"{path}.stanza"),
        order=tuple(_expect(v, int, f"{path}.order[{i}]") for i, v in enumerate(order)),
    )


def _parse_morph(obj, path: str) -> MorphAnnotation:
    _expect(obj, dict, path)
    return MorphAnnotation(
        stanza=_expect(obj.get("stanza"), int, f"{path}.stanza"),
        word=_expect(obj.get("word"), int, f"{path}.word"),
        tag=_expect(obj.get("tag"), str, f"{path}.tag"),
    )


_PARSERS = {
    "compounds": _parse_compound,
    "dependencies": _parse_dependency,
    "anvaya": _parse_anvaya,
    "morph": _parse_morph,
    "rasa": _parse_rasa,
    "artha_alankara": _parse_artha,
    "vakrokti": _parse_vakrokti,
    "dhvani": _parse_dhvani,
}


def annotations_from_dict(doc: dict, composition: Composition | None = None) -> AnnotationSet:
    _expect(doc, dict, "$")
    unknown = set(doc) - set(_SECTIONS) - {"schema_version", "composition_hash"}
    if unknown:
        raise SchemaError("$", f"unknown top-level keys {sorted(unknown)}")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if _expect(version, int, "$.schema_version") != SCHEMA_VERSION:
        raise SchemaError("$.schema_version", f"unsupported version {version}; expected {SCHEMA_VERSION}")
    chash = doc.get("composition_hash")
    if chash is not None:
        _expect(chash, str, "$.composition_hash")
    sections = {
        key: tuple(_PARSERS[key](item, f"$.{key}[{i}]") for i, item in enumerate(_list(doc, key)))
        for key in _SECTIONS
    }
    aset = AnnotationSet(composition_hash=chash, schema_version=version, **sections)
    if composition is not None and chash is not None and chash != composition.content_hash:
        raise HashMismatch(chash, composition.content_hash)
    return aset


def parse_annotations(source: str | Path | dict, composition: Composition | None = None) -> AnnotationSet:
    """Parse an annotation file (path), JSON text, or an already-loaded dict.

    With ``composition`` given, a ``composition_hash`` that does not match
    raises :class:`HashMismatch`.
    """
    if isinstance(source, dict):
        return annotations_from_dict(source, composition)
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{") and Path(source).exists()):
        label = str(source)
        try:
            text = Path(source).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise SchemaError(label, f"cannot read annotation file: {exc}") from exc
    else:
        label, text = "<string>", source
    if not text.strip():
        return AnnotationSet()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{label}:{exc.lineno}:{exc.colno}", f"invalid JSON: {exc.msg}") from exc
    return annotations_from_dict(doc, composition)


# --- serialization -----------------------------------------------------------


def _evidence_json(ev: tuple[Evidence, ...]) -> list:
    out = []
    for e in ev:
        d = e.span.to_json()
        if e.note:
            d["note"] = e.note
        out.append(d)
    return out


def to_dict(aset: AnnotationSet) -> dict:
    doc: dict[str, Any] = {"schema_version": aset.schema_version}
    if aset.composition_hash is not None:
        doc["composition_hash"] = aset.composition_hash
    doc["compounds"] = [
        {"span": c.span.to_json(), "constituents": list(c.constituents),
         **({"samasa_type": c.samasa_type} if c.samasa_type else {})}
        for c in aset.compounds
    ]
    doc["dependencies"] = [
        {"stanza": d.stanza, "head": d.head, "dependent": d.dependent, "relation": d.relation}
        for d in aset.dependencies
    ]
    doc["anvaya"] = [{"stanza": a.stanza, "order": list(a.order)} for a in aset.anvaya]
    doc["morph"] = [{"stanza": m.stanza, "word": m.word, "tag": m.tag} for m in aset.morph]
    rasa = []
    for r in aset.rasa:
        d: dict[str, Any] = {"scope": r.scope, "rasa": r.rasa}
        if r.subtype:
            d["subtype"] = r.subtype
        if r.stanza is not None:
            d["stanza"] = r.stanza
        d.update(vibhava=_evidence_json(r.vibhava), anubhava=_evidence_json(r.anubhava),
                 vyabhicari=_evidence_json(r.vyabhicari))
        rasa.append(d)
    doc["rasa"] = rasa
    doc["artha_alankara"] = [
        {"name": a.name, **({"label": a.label} if a.label is not None else {}),
         "span": a.span.to_json(), **({"note": a.note} if a.note else {})}
        for a in aset.artha_alankara
    ]
    doc["vakrokti"] = [
        {"level": v.level, "span": v.span.to_json(), **({"note": v.note} if v.note else {})}
        for v in aset.vakrokti
    ]
    dh = []
    for d in aset.dhvani:
        e: dict[str, Any] = {"meaning_level": d.meaning_level}
        if d.dhvani_type is not None:
            e["dhvani_type"] = d.dhvani_type
        e["dominance"] = d.dominance
        if d.description:
            e["description"] = d.description
        if d.span is not None:
            e["span"] = d.span.to_json()
        dh.append(e)
    doc["dhvani"] = dh
    return doc


def serialize(aset: AnnotationSet) -> str:
    return json.dumps(to_dict(aset), ensure_ascii=False, indent=2) + "\n"


# --- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Issue:
    kind: str  # HashMismatch, UnresolvedRef, BijectionViolation, AcyclicityViolation, ...
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.path}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Issue, ...] = ()
    resolved_refs: int = 0
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors

    def kinds(self) -> set[str]:
        return {e.kind for e in self.errors}


class _Checker:
    def __init__(self, composition: Composition):
        self.comp = composition
        self.issues: list[Issue] = []
        self.resolved = 0

    def fail(self, kind: str, path: str, msg: str):
        self.issues.append(Issue(kind, path, msg))

    def stanza(self, idx: int, path: str) -> bool:
        if 1 <= idx <= len(self.comp.stanzas):
            self.resolved += 1
            return True
        self.fail("UnresolvedRef", path, f"stanza {idx} does not exist (composition has {len(self.comp.stanzas)})")
        return False

    def word(self, stanza: int, w: int, path: str) -> bool:
        if not self.stanza(stanza, path):
            return False
        n = len(self.comp.stanza(stanza).words)
        if 0 <= w < n:
            self.resolved += 1
            return True
        self.fail("UnresolvedRef", path, f"word {w} outside stanza {stanza} (0..{n - 1})")
        return False

    def span(self, span: Span, path: str) -> bool:
        ok = self.stanza(span.stanza_start, path) and self.stanza(span.stanza_end, path)
        if not ok:
            return False
        if span.words is not None:
            return self.word(span.stanza, span.words[0], f"{path}.words") and self.word(
                span.stanza, span.words[1], f"{path}.words")
        if span.padas is not None:
            n = len(self.comp.stanza(span.stanza).padas)
            if not (1 <= span.padas[0] and span.padas[1] <= n):
                self.fail("UnresolvedRef", f"{path}.padas", f"pada range {span.padas} outside 1..{n}")
                return False
        return True


def _find_cycle(edges: list[tuple[int, int]]) -> list[int] | None:
    graph: dict[int, list[int]] = {}
    for head, dep in edges:
        graph.setdefault(head, []).append(dep)
    state: dict[int, int] = {}
    stack: list[int] = []

    def visit(n: int) -> list[int] | None:
        state[n] = 1
        stack.append(n)
        for m in graph.get(n, ()):
            if state.get(m) == 1:
                return stack[stack.index(m):] + [m]
            if m not in state:
                found = visit(m)
                if found:
                    return found
        stack.pop()
        state[n] = 2
        return None

    for node in sorted(graph):
        if node not in state:
            found = visit(node)
            if found:
                return found
    return None


def validate(aset: AnnotationSet, composition: Composition) -> ValidationReport:
    """Check every cross-reference and structural invariant; never raises."""
    ck = _Checker(composition)
    if aset.composition_hash is not None and aset.composition_hash != composition.content_hash:
        ck.fail("HashMismatch", "$.composition_hash",
                f"bound to {aset.composition_hash}, composition is {composition.content_hash}")

    for i, c in enumerate(aset.compounds):
        ck.span(c.span, f"$.compounds[{i}].span")

    by_stanza: dict[int, list[tuple[int, int]]] = {}
    for i, d in enumerate(aset.dependencies):
        p = f"$.dependencies[{i}]"
        ok = ck.word(d.stanza, d.head, f"{p}.head") & ck.word(d.stanza, d.dependent, f"{p}.dependent")
        if d.head == d.dependent:
            ck.fail("SelfLoop", p, f"word {d.head} depends on itself")
        elif ok:
            by_stanza.setdefault(d.stanza, []).append((d.head, d.dependent))
    for st, edges in sorted(by_stanza.items()):
        cycle = _find_cycle(edges)
        if cycle:
            ck.fail("AcyclicityViolation", f"$.dependencies(stanza {st})",
                    "cycle " + " -> ".join(map(str, cycle)))

    seen_anvaya: set[int] = set()
    for i, a in enumerate(aset.anvaya):
        p = f"$.anvaya[{i}]"
        if not ck.stanza(a.stanza, f"{p}.stanza"):
            continue
        if a.stanza in seen_anvaya:
            ck.fail("DuplicateEntry", p, f"second anvaya for stanza {a.stanza}")
        seen_anvaya.add(a.stanza)
        n = len(composition.stanza(a.stanza).words)
        if sorted(a.order) != list(range(n)):
            missing = sorted(set(range(n)) - set(a.order))
            extra = sorted(set(a.order) - set(range(n)))
            dup = sorted({x for x in a.order if a.order.count(x) > 1})
            ck.fail("BijectionViolation", f"{p}.order",
                    f"not a permutation of 0..{n - 1} (missing {missing}, out of range {extra}, repeated {dup})")

    for i, m in enumerate(aset.morph):
        ck.word(m.stanza, m.word, f"$.morph[{i}].word")

    for i, r in enumerate(aset.rasa):
        p = f"$.rasa[{i}]"
        if r.scope == "stanza" and r.stanza is not None:
            ck.stanza(r.stanza, f"{p}.stanza")
        for kind in ("vibhava", "anubhava", "vyabhicari"):
            for j, ev in enumerate(getattr(r, kind)):
                ck.span(ev.span, f"{p}.{kind}[{j}]")

    # vocabulary, spans and duplicates of artha entries
    from .alankara import artha_issues

    for kind, path, msg in artha_issues(aset.artha_alankara, composition):
        ck.fail(kind, path, msg)

    for i, v in enumerate(aset.vakrokti):
        ck.span(v.span, f"$.vakrokti[{i}].span")

    for i, d in enumerate(aset.dhvani):
        p = f"$.dhvani[{i}]"
        if (d.dhvani_type is not None) != (d.meaning_level == "vyangya"):
            ck.fail("DhvaniInvariant", p, "dhvani_type must be given exactly when meaning_level is vyangya")
        if d.span is not None:
            ck.span(d.span, f"{p}.span")

    checked = {s: len(getattr(aset, s)) for s in _SECTIONS}
    return ValidationReport(tuple(ck.issues), ck.resolved, checked)


# --- dhvani census -----------------------------------------------------------


@dataclass(frozen=True)
class DhvaniCensus:
    has_vyangya: bool = False
    has_dominant_vyangya: bool = False
    types_present: frozenset = frozenset()

    def to_json(self) -> dict:
        return {
            "has_vyangya": self.has_vyangya,
            "has_dominant_vyangya": self.has_dominant_vyangya,
            "types_present": sorted(self.types_present),
        }


def dhvani_census(aset: AnnotationSet) -> DhvaniCensus:
    vy = [d for d in aset.dhvani if d.meaning_level == "vyangya"]
    return DhvaniCensus(
        has_vyangya=bool(vy),
        has_dominant_vyangya=any(d.dominance == "dominant" for d in vy),
        types_present=frozenset(d.dhvani_type for d in vy if d.dhvani_type),
    )
