"""Brute-force ground truth at desk scale.

Everything here evaluates functions word by word on all inputs up to a
length bound, or decides deficiencies one candidate set at a time, so it
shares no code path with the symbolic profile computations.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, islice

from .automata import INF, Lang, all_words
from .profile import FiberProfile, fiber, fiber_profile
from .transducer import PartialFn, image, is_injective_squared, restrict

MAX_BOUND = 14
DEFAULT_BOUND = 12
CHAIN_BOUND = 10


def default_bound() -> int:
    """Profile bound, overridable through MONOIDLAB_MAXLEN."""
    raw = os.environ.get("MONOIDLAB_MAXLEN")
    return int(raw) if raw else DEFAULT_BOUND


class BoundError(ValueError):
    pass


def evaluate_all(f: PartialFn, bound: int) -> dict[str, str]:
    """x -> f(x) for every x with |x| <= bound, walking the input trie once."""
    if bound > MAX_BOUND:
        raise BoundError(f"length bound {bound} exceeds {MAX_BOUND}")
    out: dict[str, str] = {}
    layer = {"": frozenset({(0, "")})}
    for length in range(bound + 1):
        nxt = {}
        for w, confs in layer.items():
            vals = {o + x for q, o in confs for x in f.finals[q]}
            if len(vals) != 1:
                raise ValueError(f"{f.name}: {len(vals)} outputs at {w!r}")
            out[w] = vals.pop()
            if length < bound:
                for a in (0, 1):
                    step = frozenset((r, o + p) for q, o in confs for r, p in f.trans[q][a])
                    nxt[w + "01"[a]] = step
        layer = nxt
    return out


@dataclass
class EmpiricalProfile:
    bound: int
    counts: Counter
    image: set[str]
    missing: list[str]
    collisions: list[tuple[str, str]]
    values: dict[str, str] = field(repr=False, default_factory=dict)

    def count(self, y: str) -> int:
        return self.counts.get(y, 0)


def empirical_profile(f: PartialFn, bound: int) -> EmpiricalProfile:
    values = evaluate_all(f, bound)
    counts = Counter(values.values())
    first: dict[str, str] = {}
    collisions = []
    for x, y in values.items():
        if y in first:
            collisions.append((first[y], x))
        else:
            first[y] = x
    missing = [w for w in all_words(bound) if w not in counts]
    return EmpiricalProfile(bound, counts, set(counts), missing, collisions, values)


@dataclass
class AgreementReport:
    name: str
    bound: int
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, ok: bool, detail: str = "") -> None:
        self.checks[check] = self.checks.get(check, True) and ok
        if not ok:
            self.failures.append(f"{check}: {detail}" if detail else check)


def _sample(lang: Lang, k: int) -> list[str]:
    return lang.enumerate_shortlex(k)


def agreement_check(f: PartialFn, bound: int | None = None, samples: int = 10) -> AgreementReport:
    """Compare the symbolic profile with exhaustive evaluation up to `bound`."""
    bound = default_bound() if bound is None else bound
    p = fiber_profile(f)
    emp = empirical_profile(f, bound)
    # pumping an empty-output cycle lengthens a word by at most the state count
    window = max(2, min(f.n_states, bound // 2))
    low = empirical_profile(f, bound - window)
    rep = AgreementReport(f.name or "?", bound)

    # exact fiber counts: symbolic fiber sliced to the bound vs enumeration
    probe = sorted(emp.image, key=lambda w: (len(w), w))[: 4 * samples]
    probe += [y for y in _sample(p.multi_values, samples) if y not in probe]
    for y in probe:
        want = fiber(f, y).count_upto(bound)
        rep.record("fiber-counts", want == emp.count(y), f"{y or '~'}: symbolic {want}, empirical {emp.count(y)}")

    # co-range words are never attained; missing range words need long inputs
    for y in islice(iter(p.co_range), 200):
        if len(y) > bound:
            break
        rep.record("co-range-unattained", emp.count(y) == 0, y or "~")
    for y in emp.missing:
        if len(y) > min(bound, 8):
            break
        if y not in p.co_range:
            short = fiber(f, y).shortest()
            rep.record("missing-needs-long-input", short is not None and len(short) > bound, y or "~")
    if p.c != INF:
        rep.record("finite-co-range", len([y for y in emp.missing if y in p.co_range]) <= p.c)

    # collisions
    for a, b in emp.collisions[: 50 * samples]:
        rep.record("collisions-in-S", a in p.noninj_set and b in p.noninj_set, f"{a or '~'},{b or '~'}")
    rep.record("injectivity", (p.s_size == 0) == is_injective_squared(f))
    if p.s_size == 0:
        rep.record("injective-no-collision", not emp.collisions)

    # infinite fibers grow, finite fibers stay within their symbolic size
    for y in _sample(p.inf_fiber_values, samples):
        rep.record("inf-fiber-growth", emp.count(y) > low.count(y), f"{y or '~'}: {low.count(y)} -> {emp.count(y)}")
    for y in _sample(p.multi_values - p.inf_fiber_values, samples):
        size = fiber(f, y).cardinality()
        rep.record("finite-fiber-bounded", size != INF and emp.count(y) <= size, y or "~")
    if p.is_generous:
        for y in sorted(low.image, key=lambda w: (len(w), w))[:samples]:
            rep.record("generous-growth", emp.count(y) > low.count(y), y or "~")
    rep.record("monotone-counts", all(emp.count(y) >= c for y, c in low.counts.items()))
    return rep


def _structured_candidates(f: PartialFn, p: FiberProfile, n: int) -> list[str]:
    pool: list[str] = []

    def add(ws):
        for w in ws:
            if w not in pool:
                pool.append(w)

    for y in _sample(p.multi_values, n):
        add(fiber(f, y).enumerate_shortlex(n + 1))
    if not p.inf_fiber_values.is_empty():
        add(fiber(f, p.inf_fiber_values.shortest()).enumerate_shortlex(n))
    singles = f.preimage(image(f) - p.multi_values)
    add(singles.enumerate_shortlex(n))
    return pool


def deficiency(f: PartialFn, removed) -> int | float:
    """|X \\ f[X \\ A]| for a finite set A."""
    rest = Lang.words(removed).complement()
    return image(restrict(f, rest)).complement().cardinality()


@dataclass
class GnVerdict:
    n: int
    member: bool
    minimum: int | float
    argmin: tuple[str, ...]
    candidates: int


def gn_oracle(f: PartialFn, n: int) -> GnVerdict:
    """Decide f in G_n by minimizing the deficiency over the structured family.

    The family holds up to n+1 points from each of the first n
    multi-valued fibers, n points of the first infinite fiber and the
    first n points with a singleton fiber.  It is complete: a set of n
    points erases the value of every fiber it swallows whole, so the
    cheapest sets use redundant fiber points first and singleton points
    only after those run out, and both kinds are present in the family.
    """
    if not 1 <= n <= 3:
        raise ValueError("gn_oracle supports n in 1..3")
    p = fiber_profile(f)
    pool = _structured_candidates(f, p, n)
    best: int | float = INF
    arg: tuple[str, ...] = ()
    tried = 0
    for combo in combinations(pool, n):
        tried += 1
        d = deficiency(f, combo)
        if d < best:
            best, arg = d, combo
    return GnVerdict(n, best >= n, best, arg, tried)


def chain_agreement(chain, bound: int = CHAIN_BOUND) -> list[str]:
    """Words of length <= bound where the chain and its claim disagree.

    The expression is evaluated pointwise, one binding at a time, rather
    than through composed machines.
    """
    def apply(expr, x: str) -> str:
        if isinstance(expr, str):
            return chain.bindings[expr](x)
        for sub in reversed(expr[1:]):
            x = apply(sub, x)
        return x

    claim = evaluate_all(chain.claim, bound)
    return [x for x, y in claim.items() if apply(chain.expression, x) != y]
