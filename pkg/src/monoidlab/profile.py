"""Exact fiber profiles of rational functions.

The collision sets are computed through a cross-section: a regular set C
that meets every fiber in exactly one point.  It is the image of a
lexicographically-least-run selector for f^-1, built on a real-time
sub-relation of f^-1 that keeps the same domain.  Then

    V (multi-valued outputs) = f[X \\ C]
    S (non-injectivity set)  = f^-1[V]
    free capacity            = |X \\ C|

which avoids intersecting rational relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import FULL, INF, Lang
from .transducer import PartialFn, _trim, image, inverse_relation_least, preimage


class ConsistencyError(AssertionError):
    """A profile violated one of its own invariants (an implementation bug)."""


def fiber(f: PartialFn, y: str) -> Lang:
    return preimage(f, Lang.words([y]))


def selector(f: PartialFn) -> PartialFn:
    """A rational u with domain f[X] and f(u(y)) = y (least-run choice)."""
    trans, finals = inverse_relation_least(f)
    trans, finals = _trim(trans, finals)
    T = [[sorted(set(cell), key=lambda e: (len(e[1]), e[1], e[0])) for cell in row] for row in trans]
    F = [sorted(set(x), key=lambda w: (len(w), w)) for x in finals]
    final_set = frozenset(q for q, x in enumerate(F) if x)
    start = (0, frozenset())
    index = {start: 0}
    order = [start]
    out_t = []
    out_f = []
    i = 0
    while i < len(order):
        q, smaller = order[i]
        row = [[], []]
        for a in (0, 1):
            moved = {r for s in smaller for r, _ in T[s][a]}
            for k, (r, o) in enumerate(T[q][a]):
                u = frozenset(moved | {r2 for r2, _ in T[q][a][:k]})
                nxt = (r, u)
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                row[a].append((index[nxt], o))
        out_t.append(row)
        out_f.append((F[q][0],) if F[q] and not (smaller & final_set) else ())
        i += 1
    return PartialFn(out_t, out_f, f"sel[{f.name}]", check=False)


def cross_section(f: PartialFn) -> Lang:
    return image(selector(f))


def _eps_cycle_states(f: PartialFn) -> set[int]:
    """States on a cycle of empty-output transitions (Tarjan, iterative)."""
    n = f.n_states
    adj = [[q for cell in f.trans[p] for q, o in cell if o == ""] for p in range(n)]
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on: set[int] = set()
    stack: list[int] = []
    marked: set[int] = set()
    counter = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, 0))
                elif w in on:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    if len(comp) > 1 or v in adj[v]:
                        marked.update(comp)
    return marked


def inf_fiber_values(f: PartialFn) -> Lang:
    """{y : f^-1[y] infinite}.

    y has an infinite fiber iff some accepting run for y passes an
    empty-output input cycle: unboundedly long inputs with a fixed output
    force such a cycle by pigeonhole, and pumping one yields infinitely many
    inputs.  Final outputs sit at the end of a run and play no role.
    """
    marked = _eps_cycle_states(f)
    if not marked:
        return Lang.empty()
    # product with a "passed a marked state" flag
    n = f.n_states
    sid = lambda p, flag: 2 * p + flag  # noqa: E731
    trans = [[[], []] for _ in range(2 * n)]
    finals = [() for _ in range(2 * n)]
    for p in range(n):
        for flag in (0, 1):
            for a in (0, 1):
                for q, o in f.trans[p][a]:
                    nflag = 1 if (flag or q in marked) else 0
                    trans[sid(p, flag)][a].append((sid(q, nflag), o))
            if flag:
                finals[sid(p, 1)] = f.finals[p]
    start_flag = 1 if 0 in marked else 0
    if start_flag:
        # state 0 must be the initial state: swap ids of (0,0) and (0,1)
        trans[0], trans[1] = trans[1], trans[0]
        finals[0], finals[1] = finals[1], finals[0]
        swap = {0: 1, 1: 0}
        trans = [[[(swap.get(q, q), o) for q, o in cell] for cell in row] for row in trans]
    return image(PartialFn(trans, finals, check=False))


def multi_values(f: PartialFn) -> Lang:
    return image(f, cross_section(f).complement())


def noninj_set(f: PartialFn) -> Lang:
    return preimage(f, multi_values(f))


def collision_pair(f: PartialFn) -> tuple[str, str] | None:
    """Two distinct inputs with the same value, or None if f is injective."""
    v = multi_values(f)
    if v.is_empty():
        return None
    y = v.shortest()
    a, b = fiber(f, y).enumerate_shortlex(2)
    return a, b


def card_str(n) -> str:
    return "inf" if n == INF else str(n)


@dataclass(frozen=True)
class FiberProfile:
    co_range: Lang
    c: int | float
    inf_fiber_values: Lang
    n_inf: int | float
    multi_values: Lang
    v_size: int | float
    noninj_set: Lang
    s_size: int | float
    free_cap: int | float
    range_size: int | float
    is_generous: bool
    is_constant: bool
    fiber_sizes: dict = field(default_factory=dict, compare=False)

    @property
    def injective(self) -> bool:
        return self.s_size == 0

    @property
    def surjective(self) -> bool:
        return self.c == 0

    def summary(self, k: int = 5) -> dict:
        def lang(L: Lang) -> dict:
            return {"cardinality": card_str(L.cardinality()),
                    "first": [w or "~" for w in L.enumerate_shortlex(k)],
                    "states": L.n_states}

        return {
            "c": card_str(self.c),
            "co_range": lang(self.co_range),
            "n_inf": card_str(self.n_inf),
            "inf_fiber_values": lang(self.inf_fiber_values),
            "multi_values": lang(self.multi_values),
            "s_size": card_str(self.s_size),
            "noninj_set": lang(self.noninj_set),
            "free_cap": card_str(self.free_cap),
            "range_size": card_str(self.range_size),
            "is_generous": self.is_generous,
            "is_constant": self.is_constant,
        }


_CACHE: dict[tuple, FiberProfile] = {}


def fiber_profile(f: PartialFn) -> FiberProfile:
    hit = _CACHE.get(f.key)
    if hit is not None:
        return hit
    if not f.domain.is_full():
        raise ValueError("profiles are defined for total functions only")
    rng = image(f)
    co = rng.complement()
    inf_vals = inf_fiber_values(f)
    section = cross_section(f)
    redundant = section.complement()
    v = image(f, redundant)
    s = preimage(f, v)
    n_inf = inf_vals.cardinality()
    v_size = v.cardinality()
    sizes = {}
    if n_inf == 0 and v_size != INF:
        for y in v.enumerate_shortlex(v_size):
            sizes[y] = fiber(f, y).cardinality()
        free_cap = sum(sz - 1 for sz in sizes.values())
    else:
        free_cap = INF
    prof = FiberProfile(
        co_range=co,
        c=co.cardinality(),
        inf_fiber_values=inf_vals,
        n_inf=n_inf,
        multi_values=v,
        v_size=v_size,
        noninj_set=s,
        s_size=s.cardinality(),
        free_cap=free_cap,
        range_size=rng.cardinality(),
        is_generous=rng.issubset(inf_vals),
        is_constant=rng.cardinality() == 1,
        fiber_sizes=sizes,
    )
    _check(prof, section, redundant)
    _CACHE[f.key] = prof
    return prof


def _check(p: FiberProfile, section: Lang, redundant: Lang) -> None:
    problems = []
    rng = p.co_range.complement()
    if not p.inf_fiber_values.issubset(p.multi_values):
        problems.append("inf_fiber_values not within multi_values")
    if not p.multi_values.issubset(rng):
        problems.append("multi_values not within range")
    if p.c != INF and p.range_size != INF:
        problems.append("finite co-range with finite range")
    if p.n_inf == 0 and p.s_size == INF and p.v_size != INF:
        problems.append("pigeonhole: infinite S over finitely many finite fibers")
    if p.s_size != INF and p.v_size != INF and p.n_inf == 0 and p.free_cap != p.s_size - p.v_size:
        problems.append("free_cap != s_size - |V|")
    if p.free_cap != redundant.cardinality():
        problems.append("free_cap disagrees with the cross-section complement")
    if not redundant.issubset(p.noninj_set):
        problems.append("redundant points outside the non-injectivity set")
    if problems:
        raise ConsistencyError("; ".join(problems))
