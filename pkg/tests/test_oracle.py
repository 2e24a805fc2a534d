import pytest
from hypothesis import given

from monoidlab.automata import Lang, all_words
from monoidlab.monoids import is_member
from monoidlab.oracle import (
    BoundError,
    agreement_check,
    deficiency,
    empirical_profile,
    evaluate_all,
    gn_oracle,
)

from conftest import sequential_fns


def test_empirical_identity(suite):
    e = empirical_profile(suite["identity"], 4)
    assert all(e.count(w) == 1 for w in all_words(4))
    assert e.missing == [] and e.collisions == []


def test_empirical_constant(suite):
    e = empirical_profile(suite["const_eps"], 4)
    assert e.count("") == 31
    assert len(e.missing) == 30


def test_empirical_drop_odd(suite):
    e = empirical_profile(suite["drop_odd"], 6)
    assert e.count("") == 1
    assert e.count("0") == 3
    assert e.count("01") == 6


def test_bound_limit(suite):
    with pytest.raises(BoundError):
        empirical_profile(suite["identity"], 15)


def test_counts_are_monotone(suite):
    f = suite["squash"]
    lo, hi = empirical_profile(f, 6), empirical_profile(f, 8)
    assert all(hi.count(y) >= c for y, c in lo.counts.items())


@pytest.mark.parametrize("name", ["identity", "hilbert_shift", "drop_odd", "length_mod3", "last_to_front"])
def test_agreement(suite, name):
    rep = agreement_check(suite[name], 12)
    assert rep.ok, rep.failures


def test_agreement_hilbert_co_range(suite):
    e = empirical_profile(suite["hilbert_shift"], 12)
    assert e.count("") == 0
    assert all(e.count(w) == 1 for w in all_words(11) if w)


def test_agreement_flags_a_wrong_profile(suite, monkeypatch):
    from dataclasses import replace

    from monoidlab import oracle

    real = oracle.fiber_profile(suite["hilbert_shift"])
    fake = replace(real, co_range=real.co_range | Lang.words(["0"]))
    monkeypatch.setattr(oracle, "fiber_profile", lambda f: fake)
    rep = agreement_check(suite["hilbert_shift"], 8)
    assert not rep.ok
    assert any(m.startswith("co-range-unattained") for m in rep.failures)


def test_gn_oracle_examples(suite):
    assert gn_oracle(suite["identity"], 1).member
    v = gn_oracle(suite["f0"], 2)
    assert v.member and v.minimum == 2
    assert not gn_oracle(suite["squash"], 1).member
    assert gn_oracle(suite["squash"], 1).minimum == 0


def test_deficiency_direct(suite):
    f0 = suite["f0"]
    assert deficiency(f0, ["0"]) == 1
    assert deficiency(f0, ["0", "1"]) == 2
    assert deficiency(f0, ["00", "01"]) == 3


@given(sequential_fns())
def test_gn_oracle_matches_closed_form(f):
    for n in (1, 2, 3):
        assert gn_oracle(f, n).member == is_member(f, f"G_{n}")


@given(sequential_fns())
def test_agreement_on_random_functions(f):
    rep = agreement_check(f, 9, samples=5)
    assert rep.ok, rep.failures


@given(sequential_fns())
def test_evaluate_all_matches_eval(f):
    vals = evaluate_all(f, 6)
    assert all(vals[w] == f(w) for w in all_words(6))
