import math

import pytest
from hypothesis import given, strategies as st

from monoidlab.automata import Lang, LangError, all_words

from conftest import dfa_accepts, dfa_langs


def test_all_words_shortlex():
    assert list(all_words(2)) == ["", "0", "1", "00", "01", "10", "11"]


def test_regex_basics():
    L = Lang.regex("0*")
    assert "" in L and "000" in L and "01" not in L
    assert Lang.regex("~") == Lang.words([""])
    assert Lang.regex("(0|1)*") == Lang.full()
    assert Lang.regex(".+") == Lang.full() - Lang.words([""])
    assert Lang.regex("1?0") == Lang.words(["0", "10"])


@pytest.mark.parametrize("pattern", ["", "(", "0)", "2", "|0"])
def test_regex_errors(pattern):
    with pytest.raises(LangError):
        Lang.regex(pattern)


def test_cardinality():
    assert Lang.empty().cardinality() == 0
    assert Lang.words(["", "0", "101"]).cardinality() == 3
    assert Lang.regex("0*").cardinality() == math.inf
    # a cycle through a dead state does not count
    assert Lang.words(["0011"]).cardinality() == 1


def test_enumerate_shortlex():
    assert Lang.regex("0*").enumerate_shortlex(4) == ["", "0", "00", "000"]
    assert Lang.full().enumerate_shortlex(5) == ["", "0", "1", "00", "01"]
    assert Lang.words(["1", "0"]).enumerate_shortlex(9) == ["0", "1"]
    assert Lang.empty().shortest() is None


def test_is_fat():
    assert Lang.full().is_fat() == (True, "")
    assert Lang.regex("~|0.*").is_fat() == (True, "0")
    assert Lang.regex("0*").is_fat() == (False, None)
    assert Lang.words(["0", "1"]).is_fat() == (False, None)


def test_find_infinite_cylinder():
    assert Lang.regex("0*").find_infinite_cylinder() == ""
    assert Lang.regex("1.*|0").find_infinite_cylinder() == "1"
    with pytest.raises(LangError):
        Lang.words(["0"]).find_infinite_cylinder()


def test_residual_and_concat():
    L = Lang.regex("01*")
    assert L.residual("0") == Lang.regex("1*")
    assert Lang.words(["0"]).concat(Lang.regex("1*")) == L


@given(dfa_langs())
def test_minimal_form_is_canonical(data):
    L, delta, accept = data
    # rebuilding from the canonical table gives the same object
    assert Lang.from_dfa(L.delta, L.accept) == L
    for w in all_words(6):
        assert (w in L) == dfa_accepts(delta, accept, w)


@given(dfa_langs(), dfa_langs())
def test_boolean_ops_match_membership(a, b):
    A, B = a[0], b[0]
    for w in all_words(5):
        x, y = w in A, w in B
        assert (w in (A & B)) == (x and y)
        assert (w in (A | B)) == (x or y)
        assert (w in (A - B)) == (x and not y)
        assert (w in (A ^ B)) == (x != y)
        assert (w in ~A) == (not x)
    assert (A <= B) == (A - B).is_empty()


@given(dfa_langs())
def test_counts_agree_with_enumeration(data):
    L = data[0]
    counts = L.count_by_length(6)
    for k in range(7):
        assert counts[k] == sum(1 for w in all_words(k) if len(w) == k and w in L)
    card = L.cardinality()
    if card != math.inf:
        assert len(L.enumerate_shortlex(card + 5)) == card
    first = L.enumerate_shortlex(8)
    assert first == sorted(first, key=lambda w: (len(w), w))
    short = [w for w in first if len(w) <= 10]
    assert short == [w for w in all_words(10) if w in L][: len(short)]


@given(dfa_langs())
def test_fat_witness_is_a_cylinder(data):
    L = data[0]
    fat, w = L.is_fat()
    if fat:
        assert Lang.cylinder(w) <= L
    else:
        assert not any(Lang.cylinder(u) <= L for u in all_words(4))


@given(dfa_langs(), st.text(alphabet="01", max_size=4))
def test_residual_membership(data, u):
    L = data[0]
    R = L.residual(u)
    for z in all_words(4):
        assert (z in R) == (u + z in L)
