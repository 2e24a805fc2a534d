"""Registry of the monoids of unary functions and their membership tests.

Every decision is a pure function of the FiberProfile.  Cardinal
parameters use ``math.inf`` for omega.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .automata import INF
from .profile import FiberProfile, fiber_profile
from .transducer import PartialFn, RationalFn, compose

OMEGA = INF
FINITE_LAMBDAS = tuple(range(1, 9))


@dataclass(frozen=True)
class MonoidId:
    tag: str
    maximal_monoid: bool = False
    description: str = ""
    param: int | float | None = None

    def __str__(self) -> str:
        return self.tag


def lam_str(lam) -> str:
    return "omega" if lam == OMEGA else str(lam)


def min_deficiency(c, free_cap, n):
    """min over |A| = n of |X \\ f[X \\ A]|.

    Removing up to free_cap redundant points erases no value; every point
    beyond that budget erases exactly one more.
    """
    if free_cap >= n:
        return c
    if n == INF:
        return INF
    return c + n - free_cap


def in_G(p: FiberProfile, n) -> bool:
    return min_deficiency(p.c, p.free_cap, n) >= n


def in_delta(p: FiberProfile, lam) -> bool:
    """lambda-injective or not lambda-surjective (lambda = 1 or omega)."""
    return p.s_size < lam or p.c >= lam


def in_M(p: FiberProfile, lam) -> bool:
    """lambda-surjective or not lambda-injective."""
    return p.c < lam or p.s_size >= lam


def _I(lam):
    return lambda p: p.is_generous and p.c == lam


def _S(p):
    return p.c == 0 and p.s_size == 0


def _X2(p):
    return p.is_generous and p.range_size == 2


def _L(p):
    return p.is_constant or _X2(p) or (p.is_generous and p.c == 0) or _S(p)


_RULES: dict[str, Callable[[FiberProfile], bool]] = {
    "S": _S,
    "Const": lambda p: p.is_constant,
    "I": lambda p: p.s_size == 0 and p.c == INF,
    "J": lambda p: p.is_generous and p.c == 0,
    "I_0": _I(0),
    **{f"I_{k}": _I(k) for k in FINITE_LAMBDAS},
    "I_omega": _I(OMEGA),
    "X2": _X2,
    "L": _L,
    "A": lambda p: p.n_inf != INF,
    "B": lambda p: p.n_inf == 0,
    "E": lambda p: p.c != INF,
    "F": lambda p: p.c != INF or p.is_constant,
    **{f"G_{k}": (lambda k: lambda p: in_G(p, k))(k) for k in FINITE_LAMBDAS},
    "G_omega": lambda p: in_G(p, OMEGA),
    "M_1": lambda p: in_M(p, 1),
    "M_omega": lambda p: in_M(p, OMEGA),
}

_DESCR = {
    "S": "bijections",
    "Const": "constant functions",
    "I": "injective with co-infinite range",
    "J": "every fiber infinite",
    "I_0": "generous and onto",
    "I_omega": "generous, infinite co-range",
    "X2": "generous with exactly two values",
    "L": "Const | X2 | I_0 | S",
    "A": "finitely many infinite fibers",
    "B": "no infinite fiber",
    "E": "co-finite range",
    "F": "co-finite range or constant",
    "G_omega": "removing any infinite set leaves infinite co-range",
    "M_1": "surjective or not injective",
    "M_omega": "co-finite range or infinite non-injectivity set",
}
MAXIMAL_TAGS = ("A", "G_1", "G_omega", "M_1", "M_omega")


def _param(tag: str):
    if "_" not in tag:
        return None
    tail = tag.split("_", 1)[1]
    return OMEGA if tail == "omega" else int(tail)


def _descr(tag: str) -> str:
    if tag in _DESCR:
        return _DESCR[tag]
    if tag.startswith("I_"):
        return f"generous, co-range of size {tag[2:]}"
    if tag.startswith("G_"):
        return f"removing any {tag[2:]} points leaves >= {tag[2:]} missing values"
    return ""


REGISTRY: tuple[MonoidId, ...] = tuple(
    MonoidId(tag, tag in MAXIMAL_TAGS, _descr(tag), _param(tag)) for tag in _RULES
)
_BY_TAG = {m.tag: m for m in REGISTRY}
ALL_TAGS = tuple(_RULES)


def monoid(tag: str) -> MonoidId:
    try:
        return _BY_TAG[tag]
    except KeyError:
        raise KeyError(f"unknown monoid tag {tag!r}") from None


def maximal_monoids() -> list[MonoidId]:
    return [m for m in REGISTRY if m.maximal_monoid]


def decide(p: FiberProfile, m: MonoidId | str) -> bool:
    tag = m.tag if isinstance(m, MonoidId) else m
    return bool(_RULES[tag](p))


def is_member(f: PartialFn, m: MonoidId | str) -> bool:
    return decide(fiber_profile(f), m)


def classify(f: PartialFn) -> list[str]:
    p = fiber_profile(f)
    return [tag for tag in ALL_TAGS if _RULES[tag](p)]


# ---------------------------------------------------------------------------
# closure and lattice checks


@dataclass
class ClosureReport:
    tag: str
    trials: int
    pool_size: int
    skipped: list[str] = field(default_factory=list)
    violations: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _chain(fs: Sequence[RationalFn]) -> RationalFn:
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = compose(f, out)
    return out


def check_closed(tag: str, pool: Sequence[RationalFn], trials: int, seed: int = 0,
                 max_len: int = 3) -> ClosureReport:
    """Random composition chains from pool ∩ m must stay in m."""
    if not pool:
        raise ValueError("pool must be nonempty")
    members = [f for f in pool if is_member(f, tag)]
    report = ClosureReport(tag, trials, len(members), [f.name or "?" for f in pool if not is_member(f, tag)])
    if not members:
        return report
    rng = random.Random(seed)
    for _ in range(trials):
        chain = [rng.choice(members) for _ in range(rng.randint(2, max_len))]
        if not is_member(_chain(chain), tag):
            report.violations.append(tuple(f.name or "?" for f in chain))
    return report


def check_generosity_propagation(pool: Sequence[RationalFn], trials: int, seed: int = 0) -> ClosureReport:
    """compose(f, g) is generous whenever g is."""
    generous = [g for g in pool if fiber_profile(g).is_generous]
    report = ClosureReport("generous", trials, len(generous))
    rng = random.Random(seed)
    for _ in range(trials):
        f, g = rng.choice(pool), rng.choice(generous)
        if not fiber_profile(compose(f, g)).is_generous:
            report.violations.append((f.name or "?", g.name or "?"))
    return report


# (subset, superset) pairs claimed for every function
INCLUSIONS: tuple[tuple[str, str], ...] = (
    ("B", "A"),
    ("E", "F"),
    ("Const", "F"),
    ("J", "I_0"),
    ("I_0", "J"),
    ("I", "G_omega"),
    ("I_omega", "G_omega"),
    *((f"I_{k}", f"G_{k}") for k in FINITE_LAMBDAS),
    *((f"G_{k + 1}", f"G_{k}") for k in FINITE_LAMBDAS[:-1]),
    *(("S", t) for t in ("A", "B", "E", "F", "L", "G_1", "G_omega", "M_1", "M_omega")),
)
# (bigger, smaller) pairs claimed to be strict
STRICT: tuple[tuple[str, str], ...] = (
    ("A", "B"),
    ("F", "E"),
    *((f"G_{k}", f"G_{k + 1}") for k in (1, 2, 3)),
)


@dataclass
class InclusionReport:
    counterexamples: dict[tuple[str, str], list[str]] = field(default_factory=dict)
    separators: dict[tuple[str, str], list[str]] = field(default_factory=dict)
    l_mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (not any(self.counterexamples.values()) and all(self.separators.values())
                and not self.l_mismatches)


def l_by_description(p: FiberProfile) -> bool:
    """Bijections, or generous functions that are onto or take at most two values."""
    return (p.c == 0 and p.s_size == 0) or (p.is_generous and (p.c == 0 or p.range_size <= 2))


def inclusion_report(pool: Sequence[RationalFn]) -> InclusionReport:
    rep = InclusionReport()
    profiles = [(f.name or "?", fiber_profile(f)) for f in pool]
    for sub, sup in INCLUSIONS:
        rep.counterexamples[(sub, sup)] = [n for n, p in profiles if decide(p, sub) and not decide(p, sup)]
    for big, small in STRICT:
        rep.separators[(big, small)] = [n for n, p in profiles if decide(p, big) and not decide(p, small)]
    rep.l_mismatches = [n for n, p in profiles if decide(p, "L") != l_by_description(p)]
    return rep
