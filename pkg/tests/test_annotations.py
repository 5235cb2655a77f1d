import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus_util import annotations_path, corpus_text
from kavya.annotations import (
    ARTHA_ALANKARAS,
    DHVANI_TYPES,
    DOMINANCE,
    KARAKAS,
    RASAS,
    AnnotationSet,
    AnvayaAnnotation,
    ArthaEntry,
    CompoundAnnotation,
    DependencyAnnotation,
    DhvaniAnnotation,
    DhvaniCensus,
    Evidence,
    MorphAnnotation,
    RasaAnnotation,
    Span,
    VakroktiAnnotation,
    annotations_from_dict,
    dhvani_census,
    normalize_label,
    parse_annotations,
    serialize,
    to_dict,
    validate,
)
from kavya.errors import HashMismatch, SchemaError, UnknownLabel
from kavya.text import parse_composition


def test_bundled_set_validates(corpus, annotations):
    report = validate(annotations, corpus)
    assert report.ok, [str(e) for e in report.errors]
    assert report.resolved_refs > 0


def test_bundled_census(annotations):
    c = dhvani_census(annotations)
    assert c.has_vyangya and c.has_dominant_vyangya
    assert set(c.types_present) >= {"vastu", "rasa"}
    assert sum(1 for d in annotations.dhvani if d.dhvani_type == "vastu" and d.dominance == "dominant") == 3


def test_census_empty():
    c = dhvani_census(AnnotationSet())
    assert c == DhvaniCensus() and not c.has_vyangya and not c.has_dominant_vyangya and not c.types_present


def test_census_subordinate_only():
    c = dhvani_census(AnnotationSet(dhvani=(DhvaniAnnotation("vyangya", "vastu", "subordinate"),)))
    assert c.has_vyangya and not c.has_dominant_vyangya


def test_label_normalization():
    assert normalize_label("Śṛṅgāra") == "srngara"
    assert normalize_label("Viśeṣokti ukta") == "visesokti_ukta"
    doc = {"rasa": [{"scope": "composition", "rasa": "vipralambha-śṛṅgāra"}]}
    (r,) = annotations_from_dict(doc).rasa
    assert (r.rasa, r.subtype) == ("srngara", "vipralambha")


def test_empty_file(tmp_path):
    p = tmp_path / "a.json"
    p.write_text("", encoding="utf-8")
    assert parse_annotations(p).is_empty


def test_hash_mismatch_on_other_composition(annotations):
    other = parse_composition(corpus_text().replace("tanūja", "tanuja"))
    with pytest.raises(HashMismatch) as exc:
        parse_annotations(annotations_path(), other)
    assert exc.value.exit_code == 2
    assert "HashMismatch" in validate(annotations, other).kinds()


@pytest.mark.parametrize("doc,path", [
    ({"compounds": [{"span": {"stanza": 1, "words": [0, 1]}, "constituents": ["a"]}]}, "$.compounds[0].constituents"),
    ({"bogus": []}, "$"),
    ({"schema_version": 9}, "$.schema_version"),
    ({"artha_alankara": [{"name": "rupaka"}]}, "$.artha_alankara[0]"),
    ({"vakrokti": [{"level": 1, "span": {"stanza": 1, "words": [3, 1]}}]}, "$.vakrokti[0].span.words"),
])
def test_schema_errors(doc, path):
    with pytest.raises(SchemaError) as exc:
        annotations_from_dict(doc)
    assert exc.value.path == path


def test_unknown_labels():
    with pytest.raises(UnknownLabel):
        annotations_from_dict({"rasa": [{"scope": "composition", "rasa": "joy"}]})
    with pytest.raises(UnknownLabel):
        annotations_from_dict({"dependencies": [{"stanza": 1, "head": 0, "dependent": 1, "relation": "subj"}]})
    with pytest.raises(UnknownLabel):
        annotations_from_dict({"vakrokti": [{"level": 7, "span": {"stanza": 1}}]})


def test_invalid_json(tmp_path):
    p = tmp_path / "a.json"
    p.write_text("{\n  oops", encoding="utf-8")
    with pytest.raises(SchemaError, match=r"a\.json:2"):
        parse_annotations(p)


def _with(aset, **kw):
    return AnnotationSet(**{**{s: getattr(aset, s) for s in (
        "composition_hash", "compounds", "dependencies", "anvaya", "morph", "rasa", "artha_alankara", "vakrokti",
        "dhvani")}, **kw})


def test_validation_catches_each_kind(corpus, annotations):
    n = len(corpus.stanza(1).words)
    cases = {
        "SelfLoop": dict(dependencies=(DependencyAnnotation(1, 2, 2, "karta"),)),
        "AcyclicityViolation": dict(dependencies=(
            DependencyAnnotation(1, 0, 1, "karta"), DependencyAnnotation(1, 1, 2, "karma"),
            DependencyAnnotation(1, 2, 0, "karma"))),
        "BijectionViolation": dict(anvaya=(AnvayaAnnotation(1, tuple([0] * n)),)),
        "UnresolvedRef": dict(morph=(MorphAnnotation(1, 999, "x"),)),
        "DhvaniInvariant": dict(dhvani=(DhvaniAnnotation("vacya", "vastu"),)),
        "DanglingSpan": dict(artha_alankara=(ArthaEntry("rupaka", Span(9, 9)),)),
        "UnknownAlankara": dict(artha_alankara=(ArthaEntry("slesa", Span(1, 1)),)),
    }
    for kind, kw in cases.items():
        report = validate(_with(annotations, **kw), corpus)
        assert kind in report.kinds(), kind


def test_validate_is_pure(corpus, annotations):
    assert validate(annotations, corpus) == validate(annotations, corpus)


def test_file_round_trip(annotations):
    again = parse_annotations(serialize(annotations))
    assert again == annotations
    assert serialize(again) == serialize(annotations)
    assert json.loads(serialize(annotations)) == to_dict(annotations)


# --- generated sets ----------------------------------------------------------

idx = st.integers(1, 8)
pair = st.tuples(st.integers(0, 20), st.integers(0, 20)).map(lambda t: (min(t), max(t)))
note = st.text(max_size=12)


@st.composite
def spans(draw):
    kind = draw(st.sampled_from(["stanza", "words", "padas", "stanzas"]))
    s = draw(idx)
    if kind == "stanza":
        return Span(s, s)
    if kind == "words":
        return Span(s, s, words=draw(pair))
    if kind == "padas":
        a, b = draw(pair)
        return Span(s, s, padas=(a % 4 + 1, max(a % 4 + 1, b % 4 + 1)))
    a, b = sorted((s, draw(idx)))
    return Span(a, b) if a != b else Span(a, a)


evidence = st.builds(Evidence, spans(), note)
compound = st.builds(
    CompoundAnnotation,
    st.builds(lambda s, w: Span(s, s, words=w), idx, pair),
    st.lists(st.text(alphabet="abcdefg", min_size=1, max_size=5), min_size=2, max_size=5).map(tuple),
    st.one_of(st.none(), st.sampled_from(["tatpurusa", "dvandva"])),
)


@st.composite
def rasas(draw):
    rasa = draw(st.sampled_from(RASAS))
    subtype = draw(st.sampled_from([None, "sambhoga", "vipralambha"])) if rasa == "srngara" else None
    scope = draw(st.sampled_from(["composition", "stanza"]))
    ev = st.lists(evidence, max_size=2).map(tuple)
    return RasaAnnotation(scope, rasa, subtype, draw(idx) if scope == "stanza" else None,
                          draw(ev), draw(ev), draw(ev))


@st.composite
def dhvanis(draw):
    level = draw(st.sampled_from(["vacya", "laksana", "vyangya"]))
    dtype = draw(st.sampled_from(DHVANI_TYPES)) if level == "vyangya" else None
    return DhvaniAnnotation(level, dtype, draw(st.sampled_from(DOMINANCE)), draw(note),
                            draw(st.one_of(st.none(), spans())))


artha = st.one_of(
    st.builds(ArthaEntry, st.sampled_from(ARTHA_ALANKARAS), spans(), st.none(), note),
    st.builds(ArthaEntry, st.just("other"), spans(), st.text(alphabet="abcxyz", min_size=1, max_size=6), note),
)

annotation_sets = st.builds(
    AnnotationSet,
    composition_hash=st.one_of(st.none(), st.just("sha256:" + "0" * 64)),
    compounds=st.lists(compound, max_size=3).map(tuple),
    dependencies=st.lists(st.builds(DependencyAnnotation, idx, st.integers(0, 20), st.integers(0, 20),
                                    st.sampled_from(KARAKAS)), max_size=3).map(tuple),
    anvaya=st.lists(st.builds(AnvayaAnnotation, idx, st.permutations(range(6)).map(tuple)), max_size=2).map(tuple),
    morph=st.lists(st.builds(MorphAnnotation, idx, st.integers(0, 20), st.text(alphabet="a.123", min_size=1,
                                                                              max_size=8)), max_size=3).map(tuple),
    rasa=st.lists(rasas(), max_size=2).map(tuple),
    artha_alankara=st.lists(artha, max_size=3).map(tuple),
    vakrokti=st.lists(st.builds(VakroktiAnnotation, st.integers(1, 6), spans(), note), max_size=3).map(tuple),
    dhvani=st.lists(dhvanis(), max_size=3).map(tuple),
)


@pytest.mark.criterion(6, "property suites")
@settings(max_examples=150, deadline=None)
@given(annotation_sets)
def test_parse_serialize_round_trip(aset):
    assert annotations_from_dict(to_dict(aset)) == aset
    assert parse_annotations(serialize(aset)) == aset


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_any_other_composition_mismatches(annotations, data):
    text = corpus_text()
    positions = [i for i, ch in enumerate(text) if ch in "ai" and not text.startswith("#", text.rfind("\n", 0, i) + 1)]
    i = data.draw(st.sampled_from(positions))
    other = parse_composition(text[:i] + {"a": "ā", "i": "ī"}[text[i]] + text[i + 1:])
    assert "HashMismatch" in validate(annotations, other).kinds()
