import pytest

from corpus_util import CORRUPTIONS, EXPECTED_METERS, corrupted
from kavya.errors import NotFuzzy
from kavya.meter import identify, scan, suggest_corrections
from kavya.text import to_canonical


def best_with_suggestions(comp, db, stanza):
    st = comp.stanza(stanza)
    best = identify(scan(st), db)[0]
    return st, best, suggest_corrections(st, best)


def word_bounds(stanza, iast_word):
    canon = to_canonical(iast_word, "iast")
    (w,) = [w for w in stanza.words if w.text == canon]
    return w


@pytest.mark.parametrize("which", sorted(CORRUPTIONS))
def test_corruption_is_fuzzy_original_meter(db, which):
    _, bad, stanza = CORRUPTIONS[which]
    st, best, sugg = best_with_suggestions(corrupted(which), db, stanza)
    assert best.meter_name == EXPECTED_METERS[stanza]
    assert best.match_kind == "fuzzy"
    w = word_bounds(st, bad)
    for s in sugg:
        assert s.word == bad
        assert s.pada == w.pada
        assert w.start <= s.span[0] <= s.span[1] <= w.end


def test_tanuja(db):
    _, best, (s,) = best_with_suggestions(corrupted("tanuja"), db, 5)
    assert best.distance == 1
    assert (s.pada, s.kind, s.expected, s.observed) == (1, "substitute", "G", "L")
    assert "lengthen" in s.hint and "ū" in s.hint


def test_dhuli_lengthen_final_vowel(db):
    _, best, (s,) = best_with_suggestions(corrupted("dhuli"), db, 5)
    assert best.distance == 1
    assert (s.pada, s.kind, s.syllable_text) == (4, "substitute", "li")
    assert "lengthen" in s.hint and "ī" in s.hint


def test_gadagada_deletion(db):
    _, best, sugg = best_with_suggestions(corrupted("gadagada"), db, 6)
    kinds = [s.kind for s in sugg]
    assert "delete" in kinds
    (d,) = [s for s in sugg if s.kind == "delete"]
    # the extra syllable is the inserted "ga" (or its twin "da") of gadagada
    assert d.syllable_text in ("ga", "da")
    assert best.distance == 2


@pytest.mark.parametrize("which", sorted(CORRUPTIONS))
def test_correct_reading_restores_exact(corpus, db, which):
    stanza = CORRUPTIONS[which][2]
    best = identify(scan(corpus.stanza(stanza)), db)[0]
    assert (best.meter_name, best.match_kind) == (EXPECTED_METERS[stanza], "exact")


def test_exact_match_not_fuzzy(corpus, db):
    st = corpus.stanza(1)
    best = identify(scan(st), db)[0]
    with pytest.raises(NotFuzzy):
        suggest_corrections(st, best)
