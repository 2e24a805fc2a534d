import pytest
from hypothesis import given

from monoidlab.automata import Lang, all_words
from monoidlab.transducer import (
    NotFunctional,
    NotInjective,
    NotTotal,
    RationalFn,
    chain_shift,
    compose,
    constant,
    cylinder_swap,
    drop_odd,
    equivalent,
    first_difference,
    hilbert_shift,
    identity,
    image,
    inverse_injective,
    is_injective_squared,
    make_transducer,
    pad_strip,
    parity_two,
    patch,
    piecewise,
    preimage,
    prepend,
    restrict,
    strip,
    transposition,
)

from conftest import brute, sequential_fns


def test_basis_values():
    assert identity()("0110") == "0110"
    assert constant("01")("111") == "01"
    assert prepend("1")("") == "1"
    assert prepend("01")("0") == "010"
    assert drop_odd()("0110") == "01"
    assert drop_odd()("1") == "1"
    assert hilbert_shift()("") == "0"
    assert hilbert_shift()("00") == "000"
    assert hilbert_shift()("01") == "01"
    assert chain_shift("1")("1") == "10"
    assert chain_shift("1")("0") == "0"
    assert cylinder_swap("0", "1")("011") == "111"
    assert cylinder_swap("00", "11")("01") == "01"
    assert parity_two("", "1")("101") == "1"
    assert pad_strip()("1101") == "1"
    assert pad_strip()("111") == ""


def test_nondeterministic_machine_is_accepted_when_functional():
    # guess the last letter and print it first
    edges = [(0, a, g, 1 + 2 * int(g) + int(a)) for a in "01" for g in "01"]
    for g in "01":
        for p in "01":
            for a in "01":
                edges.append((1 + 2 * int(g) + int(p), a, p, 1 + 2 * int(g) + int(a)))
    f = make_transducer(5, edges, {0: "", 1: "", 4: ""})
    assert f("0011") == "1001"
    assert f("1") == "1"


def test_not_functional_witness():
    edges = [(0, "0", "0", 1), (0, "0", "1", 1), (0, "1", "", 1), (1, "0", "", 1), (1, "1", "", 1)]
    with pytest.raises(NotFunctional) as exc:
        make_transducer(2, edges, {1: ""})
    assert len({*_outputs_at(edges, exc.value.witnesses[0])}) > 1


def _outputs_at(edges, w):
    from monoidlab.transducer import PartialFn, _build

    trans, fin = _build(2, edges, {1: ""})
    return PartialFn(trans, fin, check=False).outputs(w)


def test_not_total_witness():
    with pytest.raises(NotTotal) as exc:
        make_transducer(1, [(0, "0", "0", 0)], {0: ""})
    assert exc.value.witnesses == ("1",)


def test_compose_order():
    # compose(f, g) is x -> f(g(x))
    h = compose(prepend("1"), drop_odd())
    assert h("0110") == "101"
    assert compose(drop_odd(), prepend("1"))("0110") == "110"


def test_image_and_preimage():
    assert image(hilbert_shift()) == ~Lang.words([""])
    assert image(drop_odd()) == Lang.full()
    assert image(constant("01")) == Lang.words(["01"])
    assert preimage(drop_odd(), Lang.words([""])) == Lang.words([""])
    assert preimage(drop_odd(), Lang.words(["0"])) == Lang.words(["0", "00", "01"])


def test_restrict_and_piecewise():
    squash = piecewise([strip("1"), restrict(constant(""), ~Lang.cylinder("1"))])
    assert isinstance(squash, RationalFn)
    assert squash("101") == "01"
    assert squash("0") == ""
    with pytest.raises(ValueError, match="overlap"):
        piecewise([identity(), constant("")])
    with pytest.raises(ValueError, match="cover"):
        piecewise([strip("1")])


def test_equivalence_and_difference():
    assert equivalent(compose(drop_odd(), drop_odd()), compose(drop_odd(), drop_odd()))
    assert not equivalent(identity(), hilbert_shift())
    w = first_difference(identity(), hilbert_shift())
    assert identity()(w) != hilbert_shift()(w)
    assert equivalent(compose(cylinder_swap("0", "1"), cylinder_swap("0", "1")), identity())


def test_inverse():
    inv = inverse_injective(hilbert_shift())
    for w in all_words(6):
        if w:
            assert hilbert_shift()(inv(w)) == w
    assert equivalent(compose(inverse_injective(prepend("1")), prepend("1")), identity())
    with pytest.raises(NotInjective) as exc:
        inverse_injective(drop_odd())
    a, b = exc.value.witnesses
    assert a != b and drop_odd()(a) == drop_odd()(b)


def test_injectivity():
    assert is_injective_squared(prepend("01"))
    assert is_injective_squared(transposition("", "0"))
    assert not is_injective_squared(pad_strip())
    assert not is_injective_squared(patch(identity(), {"0": "1"}))


@given(sequential_fns(), sequential_fns())
def test_compose_is_pointwise(f, g):
    h = compose(f, g)
    for w in all_words(5):
        assert h(w) == f(g(w))


@given(sequential_fns())
def test_image_matches_enumeration(f):
    img = image(f)
    vals = brute(f, 7)
    for y in set(vals.values()):
        assert y in img
    # every short member of the image has a preimage that the preimage machine finds
    for y in img.enumerate_shortlex(5):
        pre = preimage(f, Lang.words([y]))
        x = pre.shortest()
        assert f(x) == y


@given(sequential_fns(), sequential_fns())
def test_equivalence_agrees_with_evaluation(f, g):
    same = all(f(w) == g(w) for w in all_words(7))
    if equivalent(f, g):
        assert same
    else:
        w = first_difference(f, g)
        assert f(w) != g(w)


@given(sequential_fns())
def test_injective_inverse_round_trip(f):
    if is_injective_squared(f):
        inv = inverse_injective(f)
        for w in all_words(5):
            assert inv(f(w)) == w
    else:
        from monoidlab.profile import collision_pair

        a, b = collision_pair(f)
        assert a != b and f(a) == f(b)


@given(sequential_fns())
def test_canonical_key_is_stable(f):
    g = RationalFn(f.trans, f.finals)
    assert g.key == f.key
    assert equivalent(f, compose(identity(), f))
