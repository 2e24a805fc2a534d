import math

import pytest

from monoidlab.automata import Lang
from monoidlab.monoids import (
    ALL_TAGS,
    check_closed,
    check_generosity_propagation,
    classify,
    in_delta,
    in_G,
    inclusion_report,
    is_member,
    maximal_monoids,
    min_deficiency,
    monoid,
)
from monoidlab.profile import fiber_profile
from monoidlab.transducer import constant, drop_odd, hilbert_shift, identity, patch

INF = math.inf


def test_registry_maximal():
    assert sorted(m.tag for m in maximal_monoids()) == ["A", "G_1", "G_omega", "M_1", "M_omega"]
    assert monoid("G_omega").param == INF
    with pytest.raises(KeyError):
        monoid("Z")


def test_identity_memberships():
    tags = set(classify(identity()))
    assert {"S", "A", "B", "E", "F", "L", "G_1", "G_8", "G_omega", "M_1", "M_omega"} <= tags
    assert not tags & {"I", "J", "Const", "I_0", "I_omega"}


def test_constant_memberships():
    tags = set(classify(constant("")))
    assert {"Const", "F", "L", "I_omega", "M_1"} <= tags
    assert "E" not in tags and "I" not in tags


def test_hilbert_not_in_m1():
    assert not is_member(hilbert_shift(), "M_1")
    assert is_member(hilbert_shift(), "M_omega")


def test_drop_odd_has_no_infinite_fiber():
    tags = set(classify(drop_odd()))
    assert {"A", "B", "M_1", "M_omega"} <= tags
    assert "J" not in tags


def test_g_closed_form_on_f0():
    f0 = patch(identity(), {"0": "1"})
    p = fiber_profile(f0)
    assert (p.c, p.free_cap) == (1, 1)
    assert in_G(p, 1) and in_G(p, 2) and in_G(p, 3)


@pytest.mark.parametrize("c,cap,n,want", [
    (0, 0, 1, 1), (0, INF, 5, 0), (1, 2, 2, 1), (2, 3, 3, 2), (3, 1, 3, 5),
    (INF, 0, 4, INF), (0, 3, INF, INF), (0, INF, INF, 0),
])
def test_min_deficiency(c, cap, n, want):
    assert min_deficiency(c, cap, n) == want


def test_delta_equals_g_at_one_and_omega(suite):
    for f in suite.values():
        p = fiber_profile(f)
        assert in_G(p, 1) == in_delta(p, 1)
        assert in_G(p, INF) == in_delta(p, INF)


def test_every_tag_decides(suite):
    for f in suite.values():
        tags = classify(f)
        assert set(tags) <= set(ALL_TAGS)


def test_inclusions_and_separators(suite):
    rep = inclusion_report(list(suite.values()))
    assert not any(rep.counterexamples.values()), rep.counterexamples
    assert all(rep.separators.values()), rep.separators
    assert rep.l_mismatches == []


def test_closure_small(suite):
    pool = list(suite.values())
    for tag in ("E", "B", "M_1", "G_omega"):
        rep = check_closed(tag, pool, 40, seed=1)
        assert rep.ok, rep.violations
    assert check_generosity_propagation(pool, 40).ok


def test_closure_check_reports_violations(suite, monkeypatch):
    # "co-range of size exactly one" is not closed: the shift squared misses two words
    from monoidlab import monoids

    monkeypatch.setitem(monoids._RULES, "I_1", lambda p: p.c == 1)
    rep = check_closed("I_1", [suite["hilbert_shift"]], 5)
    assert not rep.ok
    assert rep.violations[0][0] == "hilbert_shift"
