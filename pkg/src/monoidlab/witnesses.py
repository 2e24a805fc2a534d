"""Constructive factorizations with machine-checkable identities.

Each construction returns a :class:`WitnessChain`: named functions, a
composition expression over the names, the function it claims to equal,
and the monoid memberships it relies on.  ``verify()`` re-checks all of
it with the equivalence decision and the profile-based classifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .automata import INF, Lang
from .monoids import OMEGA, in_G, in_M, is_member, lam_str
from .profile import fiber, fiber_profile
from .transducer import (
    PartialFn,
    RationalFn,
    _build,
    chain_shift,
    compose,
    constant,
    cylinder_swap,
    equivalent,
    finite_permutation,
    identity,
    image,
    inverse_injective,
    pad_strip,
    piecewise,
    point,
    power,
    restrict,
    strip,
    transposition,
)

Expr = Union[str, tuple]


class PreconditionError(ValueError):
    """A construction's hypothesis does not hold for the given input."""


PROPERTIES = {
    "generous": lambda p: p.is_generous,
    "infinite_range": lambda p: p.range_size == INF,
    "injective": lambda p: p.s_size == 0,
    "infinite_co_range": lambda p: p.c == INF,
    "bijective": lambda p: p.c == 0 and p.s_size == 0,
}


@dataclass
class WitnessChain:
    kind: str
    bindings: dict[str, PartialFn]
    expression: Expr
    claim: RationalFn
    claim_name: str = "f"
    asserted_memberships: list[tuple[str, str]] = field(default_factory=list)
    asserted_properties: list[tuple[str, str]] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def evaluate(self, expr: Expr | None = None) -> PartialFn:
        expr = self.expression if expr is None else expr
        if isinstance(expr, str):
            return self.bindings[expr]
        op, *args = expr
        if op != "compose":
            raise ValueError(f"unknown operator {op!r}")
        vals = [self.evaluate(a) for a in args]
        out = vals[-1]
        for v in reversed(vals[:-1]):
            out = compose(v, out)
        return out

    def _target(self, name: str) -> PartialFn:
        return self.evaluate() if name == "result" else self.bindings[name]

    def render(self, expr: Expr | None = None) -> str:
        expr = self.expression if expr is None else expr
        if isinstance(expr, str):
            return expr
        return "∘".join(self.render(a) for a in expr[1:])

    @property
    def identity_text(self) -> str:
        return f"{self.claim_name} = {self.render()}"

    def verify_report(self) -> dict:
        result = self.evaluate()
        checks = {"equivalent": equivalent(result, self.claim)}
        for name, tag in self.asserted_memberships:
            checks[f"{name} in {tag}"] = is_member(self._target(name), tag)
        for name, prop in self.asserted_properties:
            checks[f"{name} {prop}"] = PROPERTIES[prop](fiber_profile(self._target(name)))
        return checks

    def verify(self) -> bool:
        return all(self.verify_report().values())

    def to_dict(self) -> dict:
        from .formats import to_text

        return {
            "kind": self.kind,
            "identity": self.identity_text,
            "bindings": {k: to_text(v) for k, v in self.bindings.items()},
            "claim": to_text(self.claim),
            "asserted_memberships": [list(m) for m in self.asserted_memberships],
            "asserted_properties": [list(m) for m in self.asserted_properties],
            "notes": self.notes,
        }


def _cyl(w: str) -> Lang:
    return Lang.cylinder(w)


def _onto_through(prefix: str) -> PartialFn:
    """Generous surjection onto {0,1}* defined on prefix{0,1}*."""
    return compose(pad_strip(), strip(prefix))


def decompose_ji(f: RationalFn) -> WitnessChain:
    """f = j∘i with i = prepend(1) injective with co-infinite range and j with all fibers infinite."""
    from .transducer import prepend

    i = prepend("1")
    j = piecewise(
        [compose(f, strip("1")), _onto_through("0"), point("", "")],
        name="j",
    )
    return WitnessChain(
        "ji", {"j": j, "i": i.named("i")}, ("compose", "j", "i"), f,
        asserted_memberships=[("j", "J"), ("i", "I")],
    )


def universal_factor(u: RationalFn, f: RationalFn) -> WitnessChain:
    """f = g∘u with g generous and onto, for injective u with a fat co-range."""
    pu = fiber_profile(u)
    if pu.s_size != 0:
        raise PreconditionError("u not injective")
    fat, w = pu.co_range.is_fat()
    if not fat:
        raise PreconditionError(
            "co-range not fat: a generous surjection from the co-range onto all words "
            "needs a full cylinder inside it, which a thin co-range cannot supply"
        )
    pieces = [compose(f, inverse_injective(u)), _onto_through(w)]
    rest = pu.co_range - _cyl(w)
    if not rest.is_empty():
        pieces.append(restrict(constant(""), rest))
    g = piecewise(pieces, name="g")
    return WitnessChain(
        "universal", {"g": g, "u": u}, ("compose", "g", "u"), f,
        asserted_memberships=[("g", "I_0")], asserted_properties=[("u", "injective")],
        notes={"cylinder": w},
    )


def generous_onto(lang: Lang) -> RationalFn:
    """g with image exactly `lang` and every fiber infinite.

    g(1^k 0 z) = z if z in lang else the least member; g(1^k) = sel(empty).
    """
    if lang.is_empty():
        raise PreconditionError("generous_onto: empty target language")
    least = lang.shortest()
    d = lang.delta
    n = len(d)
    # 0: pad; 1..n: copy branch at DFA state; n+1..2n: default branch
    copy = lambda s: 1 + s  # noqa: E731
    dflt = lambda s: 1 + n + s  # noqa: E731
    edges = [(0, "1", "", 0), (0, "0", "", copy(0)), (0, "0", "", dflt(0))]
    finals: dict[int, str] = {0: "" if "" in lang else least}
    for s in range(n):
        for a in "01":
            t = d[s][int(a)]
            edges.append((copy(s), a, a, copy(t)))
            edges.append((dflt(s), a, "", dflt(t)))
        if s in lang.accept:
            finals[copy(s)] = ""
        else:
            finals[dflt(s)] = least
    trans, fin = _build(1 + 2 * n, edges, finals)
    return RationalFn(trans, fin, "generous_onto", check=False)


def _lambda_tag(lam) -> str:
    return f"I_{lam_str(lam)}"


def exists_lambda0(h: RationalFn, lam) -> tuple[int, WitnessChain]:
    """Find A with |A| = lam and |X \\ h[X \\ A]| = lam0 < lam; return h∘g' in I_lam0."""
    p = fiber_profile(h)
    if in_G(p, lam):
        raise PreconditionError(f"h ∈ G_{lam_str(lam)} — lemma precondition fails")
    from .profile import cross_section

    redundant = cross_section(h).complement()
    if lam == OMEGA:
        w = redundant.find_infinite_cylinder()
        if w == "":
            w = next(a for a in "01" if not (redundant & _cyl(a)).is_finite())
        A = redundant & _cyl(w)
        notes = {"cylinder": w}
    else:
        take = min(lam, p.free_cap)
        pts = redundant.enumerate_shortlex(int(take))
        if take < lam:
            single = h.preimage(p.multi_values.complement() & p.co_range.complement())
            pts += single.enumerate_shortlex(int(lam - take))
        A = Lang.words(pts)
        notes = {"removed": [x or "~" for x in pts]}
    g = generous_onto(A.complement()).named("g")
    comp = compose(h, g)
    lam0 = fiber_profile(comp).c
    if not lam0 < lam:
        raise AssertionError("descent failed: composite co-range not below lambda")
    notes["lambda0"] = lam_str(lam0)
    chain = WitnessChain(
        "glambda", {"h": h, "g": g}, ("compose", "h", "g"), comp, claim_name="h∘g",
        asserted_memberships=[("g", _lambda_tag(lam)), ("result", _lambda_tag(lam0))],
        notes=notes,
    )
    return lam0, chain


def _conjugate_candidates():
    yield identity()
    words = ["", "0", "1", "00", "01", "10", "11"]
    prefixes = words[1:]
    swaps = [cylinder_swap(u, v) for i, u in enumerate(prefixes) for v in prefixes[i + 1:]
             if not (u.startswith(v) or v.startswith(u))]
    trans_ = [transposition(a, b) for i, a in enumerate(words) for b in words[i + 1:]]
    yield from swaps
    yield from trans_
    for t in trans_:
        for s in swaps:
            yield compose(t, s, name=f"{t.name}∘{s.name}")


def generous_conjugate(g: RationalFn) -> WitnessChain:
    """alpha in S with g∘alpha∘g generous and of infinite range."""
    p = fiber_profile(g)
    if p.n_inf != INF:
        raise PreconditionError("g ∈ A — lemma precondition fails")
    for alpha in _conjugate_candidates():
        h = compose(g, compose(alpha, g))
        ph = fiber_profile(h)
        if ph.is_generous and ph.range_size == INF:
            return WitnessChain(
                "conj", {"g": g, "alpha": alpha}, ("compose", "g", "alpha", "g"), h,
                claim_name="h",
                asserted_memberships=[("alpha", "S")],
                asserted_properties=[("result", "generous"), ("result", "infinite_range")],
                notes={"alpha": alpha.name},
            )
    raise PreconditionError("no realizable cylinder split within the permutation toolbox")


def _avoiding_injection(points: list[str]) -> RationalFn:
    """Injection whose image is exactly X minus the given finite set."""
    i = identity()
    for s in points:
        pre = fiber(i, s)
        if pre.is_empty():
            continue
        i = compose(i, chain_shift(pre.shortest()))
    return i


def m_witness(m: RationalFn, lam, f: RationalFn) -> WitnessChain:
    """f = g∘m∘i with g, i in M_lam, for m outside M_lam."""
    p = fiber_profile(m)
    if in_M(p, lam):
        raise PreconditionError(f"m ∈ M_{lam_str(lam)} — not a counterexample function")
    if lam == 1:
        i = identity()
    else:
        i = _avoiding_injection(p.noninj_set.enumerate_shortlex(int(p.s_size)))
    mi = compose(m, i)
    # a value of f: makes g non-injective even when m misses a single word
    a = f("")
    rest = image(mi).complement()
    g = piecewise([compose(f, inverse_injective(mi)), restrict(constant(a), rest)], name="g")
    tag = f"M_{lam_str(lam)}"
    return WitnessChain(
        "mlambda", {"g": g, "m": m, "i": i.named("i")}, ("compose", "g", "m", "i"), f,
        asserted_memberships=[("g", tag), ("i", tag)],
    )


def escape_to_universal(m_omega: RationalFn, m_1: RationalFn) -> WitnessChain:
    """Injective function with infinite co-range from m_omega ∉ M_omega and m_1 ∉ M_1."""
    pw = fiber_profile(m_omega)
    if in_M(pw, OMEGA):
        raise PreconditionError("m_omega ∈ M_omega — precondition fails")
    if in_M(fiber_profile(m_1), 1):
        raise PreconditionError("m_1 ∈ M_1 — precondition fails")
    bad_set = pw.noninj_set.enumerate_shortlex(int(pw.s_size))
    k = len(bad_set)
    it = power(m_1, k).named(f"m_1^{k}")
    co = fiber_profile(it).co_range
    hit = [a for a in bad_set if a not in co]
    free = [b for b in co.enumerate_shortlex(k + len(hit)) if b not in bad_set][: len(hit)]
    swap = {}
    for a, b in zip(hit, free):
        swap[a], swap[b] = b, a
    sigma = finite_permutation(swap, "sigma") if swap else identity().named("sigma")
    expr = ("compose", "m_omega", "sigma", "iter")
    bindings = {"m_omega": m_omega, "sigma": sigma, "iter": it}
    chain = WitnessChain("escape", bindings, expr, identity(), claim_name="u")
    u = chain.evaluate()
    chain.claim = u
    chain.asserted_memberships = [("sigma", "S"), ("result", "I")]
    chain.asserted_properties = [("result", "injective"), ("result", "infinite_co_range")]
    chain.notes = {"iterations": k, "avoided": [x or "~" for x in bad_set]}
    return chain
