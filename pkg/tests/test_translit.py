import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus_util import corpus_text
from kavya.errors import InvalidCharacter
from kavya.text import SCHEMES, from_canonical, parse_composition, to_canonical, transliterate
from kavya.text.phonemes import ANUSVARA, LONG_VOWELS, SHORT_VOWELS, VARGAS, VISARGA


def test_iast_round_trip_example():
    canon = to_canonical("tṛṇād api", "iast")
    assert canon == "tfRAd api"
    assert from_canonical(canon, "iast") == "tṛṇād api"


def test_devanagari_example():
    # built from code points: SHA VIRAMA RA II - KA VOCALIC-R SSA VIRAMA NNA
    expected = "श्री-कृष्ण"
    assert transliterate("śrī-kṛṣṇa", "iast", "devanagari") == expected


@pytest.mark.parametrize("src", SCHEMES)
@pytest.mark.parametrize("dst", SCHEMES)
def test_empty(src, dst):
    assert transliterate("", src, dst) == ""


@pytest.mark.parametrize("text,scheme", [("qa", "iast"), ("a$b", "iast"), ("k$a", "slp1"), ("abc", "devanagari")])
def test_invalid_character(text, scheme):
    with pytest.raises(InvalidCharacter) as exc:
        to_canonical(text, scheme)
    assert exc.value.exit_code == 1


def test_unknown_scheme():
    with pytest.raises(Exception):
        transliterate("a", "iast", "harvard-kyoto")


def _corpus_lines():
    comp = parse_composition(corpus_text())
    return [p.text for s in comp.stanzas for p in s.padas]


@pytest.mark.criterion(6, "property suites")
@pytest.mark.parametrize("a", SCHEMES)
@pytest.mark.parametrize("b", SCHEMES)
def test_corpus_round_trip_all_pairs(a, b):
    for canon in _corpus_lines():
        text_a = from_canonical(canon, a)
        assert transliterate(transliterate(text_a, a, b), b, a) == text_a


# Syllable-structured canonical text. Every non-initial syllable has an
# onset and no cluster contains h, which keeps IAST digraphs (ai, au, kh)
# unambiguous, as in real Sanskrit orthography.
_STOPS = "".join(VARGAS.values())
_CONS = _STOPS + "yrlvSzs"
_syllable = st.tuples(
    st.text(alphabet=_CONS, min_size=1, max_size=3),
    st.sampled_from(SHORT_VOWELS + LONG_VOWELS),
    st.sampled_from(["", ANUSVARA, VISARGA]),
).map("".join)
_word = st.lists(_syllable, min_size=1, max_size=5).map("".join)
canonical_text = st.lists(_word, min_size=1, max_size=4).map(lambda ws: " ".join(ws))


@pytest.mark.criterion(6, "property suites")
@given(canonical_text, st.sampled_from(SCHEMES), st.sampled_from(SCHEMES))
def test_round_trip_property(canon, a, b):
    text_a = from_canonical(canon, a)
    assert to_canonical(text_a, a) == canon
    assert transliterate(transliterate(text_a, a, b), b, a) == text_a
