import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from corpus_util import EXPECTED_METERS, oracle_exact, oracle_pada_distance
from kavya.errors import EmptyDatabase
from kavya.meter import MeterDB, MeterMatch, ScanResult, identify, load_meter_db, match_meter, scan
from kavya.meter.identify import pada_distance
from kavya.text import make_stanza

DB = load_meter_db()
NAMES = [m.name for m in DB]


def stanza_from_weights(padas):
    """A real stanza whose scansion is ``padas``: ka for L, kA for G."""
    return make_stanza(1, ["".join("kA" if w == "G" else "ka" for w in p) for p in padas])


@pytest.mark.parametrize("index,name", sorted(EXPECTED_METERS.items()))
def test_corpus_stanza_meters(corpus, db, index, name):
    matches = identify(scan(corpus.stanza(index)), db)
    assert matches[0].meter_name == name
    assert matches[0].match_kind == "exact" and matches[0].distance == 0


def test_upajati_mixture(corpus, db):
    best = identify(scan(corpus.stanza(8)), db)[0]
    assert best.pada_variants == ("indravaṁśā", "vaṁśastha", "vaṁśastha", "indravaṁśā")


def test_anustubh_vipula(corpus, db):
    best = identify(scan(corpus.stanza(3)), db)[0]
    assert best.pada_variants[2] == "ra-vipulā"


def test_stanza3_final_laghu_needs_anceps(corpus, db):
    st = corpus.stanza(3)
    assert scan(st).padas[0][-1] == "L"
    strict = [m for m in identify(scan(st, pada_final_anceps=False), db) if m.meter_name == "anuṣṭubh"]
    assert not strict or strict[0].match_kind == "fuzzy"


@pytest.mark.criterion(6, "property suites")
@pytest.mark.parametrize("name", NAMES)
def test_synthesized_stanza_identifies_itself(name):
    meter = DB.get(name)
    stanza = stanza_from_weights(meter.synthesize())
    best = identify(scan(stanza), DB)[0]
    assert (best.meter_name, best.match_kind, best.distance) == (name, "exact", 0)


@pytest.mark.criterion(6, "property suites")
@pytest.mark.parametrize("index", range(1, 9))
def test_oracle_equivalence_on_corpus(corpus, index):
    result = scan(corpus.stanza(index))
    for meter in DB:
        for i, observed in enumerate(result.padas):
            assert pada_distance(meter, i, observed) == oracle_pada_distance(meter, i, observed), (meter.name, i)
        m = match_meter(result, meter, budget=10 ** 6)
        assert (m is not None and m.match_kind == "exact") == oracle_exact(meter, result.padas), meter.name


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_single_corruption_is_distance_one(name, data):
    meter = DB.get(name)
    padas = meter.synthesize()
    p = data.draw(st.integers(0, 3))
    k = data.draw(st.integers(0, len(padas[p]) - 1))
    flipped = list(padas)
    flipped[p] = padas[p][:k] + ("L" if padas[p][k] == "G" else "G") + padas[p][k + 1:]
    # skip positions the meter leaves free
    assume(not oracle_exact(meter, tuple(flipped)))
    matches = {m.meter_name: m for m in identify(scan(stanza_from_weights(flipped)), DB)}
    assert matches[name].match_kind == "fuzzy"
    assert matches[name].distance == 1


@given(st.lists(st.text(alphabet="LG", min_size=1, max_size=20), min_size=1, max_size=4))
def test_identify_deterministic_and_totally_ordered(padas):
    result = ScanResult(tuple(padas))
    a, b = identify(result, DB), identify(result, DB)
    assert a == b
    keys = [m.sort_key for m in a]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for m in a:
        assert (m.match_kind == "exact") == (m.distance == 0)
        assert m.match_kind == "exact" or 0 < max(m.pada_distances) <= 2


def test_budget_limits_fuzzy(corpus, db):
    result = scan(corpus.stanza(1))
    assert all(max(m.pada_distances) <= 0 for m in identify(result, db, budget=0))


def test_empty_db_raises():
    with pytest.raises(EmptyDatabase):
        identify(ScanResult(("LG",)), MeterDB(()))


def test_empty_scan():
    assert identify(ScanResult(()), DB) == []


def test_match_kind_invariant():
    with pytest.raises(ValueError):
        MeterMatch("x", "exact", 1)
    with pytest.raises(ValueError):
        MeterMatch("x", "fuzzy", 0)


def test_upajati_needs_both_components():
    m = DB.get("upajāti")
    pure = [DB.get("indravaṁśā").pada_patterns[0]] * 4
    result = match_meter(ScanResult(tuple(pure)), m)
    assert result is None or result.match_kind == "fuzzy"
