import math

import pytest
from hypothesis import given

from monoidlab.automata import Lang, all_words
from monoidlab.profile import collision_pair, cross_section, fiber, fiber_profile, inf_fiber_values, noninj_set
from monoidlab.transducer import (
    constant,
    drop_odd,
    hilbert_shift,
    identity,
    pad_strip,
    parity_two,
    piecewise,
    restrict,
    strip,
)

from conftest import sequential_fns

INF = math.inf


def squash():
    return piecewise([strip("1"), restrict(constant(""), ~Lang.cylinder("1"))])


def test_identity_profile():
    p = fiber_profile(identity())
    assert (p.c, p.n_inf, p.s_size, p.free_cap) == (0, 0, 0, 0)
    assert p.injective and p.surjective and not p.is_generous


def test_constant_profile():
    p = fiber_profile(constant(""))
    assert p.c == INF and p.n_inf == 1 and p.is_generous and p.is_constant
    assert p.inf_fiber_values == Lang.words([""])


def test_hilbert_profile():
    p = fiber_profile(hilbert_shift())
    assert p.co_range == Lang.words([""])
    assert p.s_size == 0


def test_drop_odd_profile():
    p = fiber_profile(drop_odd())
    # every fiber is finite: y has 2^(|y|-1) + 2^|y| preimages
    assert p.c == 0 and p.n_inf == 0 and not p.is_generous
    assert p.multi_values == ~Lang.words([""])
    assert p.s_size == INF and p.free_cap == INF
    for y in ["0", "01", "110"]:
        assert fiber(drop_odd(), y).cardinality() == 2 ** (len(y) - 1) + 2 ** len(y)


def test_squash_profile():
    p = fiber_profile(squash())
    assert p.multi_values == Lang.words([""])
    assert p.noninj_set == (~Lang.cylinder("1")) | Lang.words(["1"])
    assert p.c == 0 and p.n_inf == 1


def test_pad_strip_and_parity():
    assert fiber_profile(pad_strip()).is_generous
    assert fiber_profile(pad_strip()).c == 0
    p = fiber_profile(parity_two("", "1"))
    assert p.range_size == 2 and p.is_generous and p.c == INF


def test_profiles_require_totality():
    with pytest.raises(ValueError):
        fiber_profile(strip("1"))


def _fiber_sizes(f, bound):
    sizes = {}
    for w in all_words(bound):
        y = f(w)
        sizes[y] = sizes.get(y, 0) + 1
    return sizes


@given(sequential_fns())
def test_cross_section_meets_each_fiber_once(f):
    C = cross_section(f)
    for y in f.image().enumerate_shortlex(6):
        assert (fiber(f, y) & C).cardinality() == 1


@given(sequential_fns())
def test_inf_fibers_are_infinite(f):
    inf = inf_fiber_values(f)
    for y in f.image().enumerate_shortlex(8):
        assert (y in inf) == (fiber(f, y).cardinality() == INF)


@given(sequential_fns())
def test_noninjectivity_set_against_fibers(f):
    S = noninj_set(f)
    for x in all_words(5):
        assert (x in S) == (fiber(f, f(x)).cardinality() > 1)
    pair = collision_pair(f)
    assert (pair is None) == S.is_empty()


@given(sequential_fns())
def test_profile_counts_against_enumeration(f):
    p = fiber_profile(f)
    sizes = _fiber_sizes(f, 8)
    for y, k in sizes.items():
        if y in p.inf_fiber_values:
            continue
        # a finite fiber is never seen with more members than it has
        assert k <= fiber(f, y).cardinality()
    for y in p.co_range.enumerate_shortlex(20):
        assert y not in sizes
    if p.free_cap != INF:
        exact = sum(fiber(f, y).cardinality() - 1 for y in p.multi_values)
        assert p.free_cap == exact
