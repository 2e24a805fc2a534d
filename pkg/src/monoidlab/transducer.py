"""Rational functions on {0,1}* as functional real-time transducers.

A machine reads exactly one input letter per transition and may emit any
word; accepting states carry a final output word.  State 0 is initial.
Internally a machine is a pair ``(trans, finals)``::

    trans[q][a]  -> tuple of (target, output) for a in (0, 1)
    finals[q]    -> tuple of final output words (empty: not accepting)

Functional machines have at most one final output per useful state.
Relations that are not functions only live inside decision procedures.
"""

from __future__ import annotations

import heapq
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

from .automata import ALPHABET, FULL, NFA, Lang, shortlex_key

Trans = tuple[tuple[tuple[tuple[int, str], ...], ...], ...]
Finals = tuple[tuple[str, ...], ...]


class TransducerError(ValueError):
    """Base class for construction failures; carries witness words."""

    def __init__(self, message: str, *witnesses: str):
        self.witnesses = witnesses
        shown = ", ".join(w or "~" for w in witnesses)
        super().__init__(f"{message} (witness: {shown})" if witnesses else message)


class NotFunctional(TransducerError):
    pass


class NotTotal(TransducerError):
    pass


class NotInjective(TransducerError):
    pass


class DomainError(TransducerError):
    pass


# ---------------------------------------------------------------------------
# machine plumbing


def _build(n: int, edges: Iterable[tuple[int, str, str, int]], finals: dict[int, str | Sequence[str]]):
    trans = [[set(), set()] for _ in range(n)]
    for p, a, out, q in edges:
        trans[p][int(a)].add((q, out))
    fin = []
    for q in range(n):
        f = finals.get(q, ())
        fin.append((f,) if isinstance(f, str) else tuple(f))
    return trans, fin


def _freeze(trans, finals) -> tuple[Trans, Finals]:
    t = tuple(tuple(tuple(sorted(set(cell))) for cell in row) for row in trans)
    f = tuple(tuple(sorted(set(x), key=shortlex_key)) for x in finals)
    return t, f


def _trim(trans, finals):
    n = len(trans)
    acc = {0}
    stack = [0]
    while stack:
        p = stack.pop()
        for cell in trans[p]:
            for q, _ in cell:
                if q not in acc:
                    acc.add(q)
                    stack.append(q)
    rev: list[set[int]] = [set() for _ in range(n)]
    for p in acc:
        for cell in trans[p]:
            for q, _ in cell:
                rev[q].add(p)
    co = {q for q in acc if finals[q]}
    stack = list(co)
    while stack:
        q = stack.pop()
        for p in rev[q]:
            if p not in co:
                co.add(p)
                stack.append(p)
    useful = acc & co
    if 0 not in useful:
        return [[(), ()]], [()]
    order = [0] + sorted(useful - {0})
    num = {q: i for i, q in enumerate(order)}
    new_t = [[tuple((num[q], o) for q, o in cell if q in useful) for cell in trans[p]] for p in order]
    new_f = [tuple(finals[p]) for p in order]
    return new_t, new_f


def _reduce(trans, finals):
    """Quotient by forward bisimulation (labels = letter + output)."""
    n = len(trans)
    fin_keys = {}
    block = [fin_keys.setdefault(tuple(sorted(set(finals[q]))), len(fin_keys)) for q in range(n)]
    count = len(fin_keys)
    while True:
        sigs: dict = {}
        new = []
        for q in range(n):
            sig = (block[q],) + tuple(frozenset((o, block[r]) for r, o in trans[q][a]) for a in (0, 1))
            new.append(sigs.setdefault(sig, len(sigs)))
        block = new
        if len(sigs) == count:
            break
        count = len(sigs)
    if count == n:
        return trans, finals
    # keep block of state 0 first
    remap = {block[0]: 0}
    for q in range(n):
        remap.setdefault(block[q], len(remap))
    rep = {}
    for q in range(n):
        rep.setdefault(remap[block[q]], q)
    new_t = [
        [tuple({(remap[block[r]], o) for r, o in trans[rep[b]][a]}) for a in (0, 1)]
        for b in range(count)
    ]
    new_f = [finals[rep[b]] for b in range(count)]
    return new_t, new_f


def _canon(trans, finals) -> tuple[Trans, Finals]:
    t, f = _freeze(trans, finals)
    num = {0: 0}
    order = [0]
    i = 0
    while i < len(order):
        p = order[i]
        for a in (0, 1):
            for q, o in sorted(t[p][a], key=lambda e: (shortlex_key(e[1]), e[0])):
                if q not in num:
                    num[q] = len(order)
                    order.append(q)
        i += 1
    new_t = [[[(num[q], o) for q, o in t[p][a]] for a in (0, 1)] for p in order]
    new_f = [f[p] for p in order]
    t2, f2 = _freeze(new_t, new_f)
    # sort cells by (output, target) for a stable textual form
    t3 = tuple(
        tuple(tuple(sorted(cell, key=lambda e: (shortlex_key(e[1]), e[0]))) for cell in row) for row in t2
    )
    return t3, f2


def _normalize(trans, finals) -> tuple[Trans, Finals]:
    t, f = _trim(trans, finals)
    t, f = _reduce(t, f)
    return _canon(t, f)


def _run(trans, q: int, word: str) -> set[tuple[int, str]]:
    configs = {(q, "")}
    for a in word:
        i = int(a)
        configs = {(r, v + o) for s, v in configs for r, o in trans[s][i]}
        if not configs:
            break
    return configs


def _outputs(trans, finals, word: str) -> set[str]:
    return {v + fo for q, v in _run(trans, 0, word) for fo in finals[q]}


def _domain(trans, finals) -> Lang:
    nfa = NFA()
    for _ in trans:
        nfa.add_state()
    nfa.start.add(0)
    for p, row in enumerate(trans):
        for a, cell in zip(ALPHABET, row):
            for q, _ in cell:
                nfa.add_edge(p, a, q)
    nfa.finals.update(q for q in range(len(trans)) if finals[q])
    return nfa.to_lang()


def _union_raw(machines: Sequence[tuple]):
    """Disjoint union sharing a fresh initial state (no epsilon moves)."""
    trans: list = [[[], []]]
    finals: list = [[]]
    for mt, mf in machines:
        off = len(trans)
        for p, row in enumerate(mt):
            trans.append([[(q + off, o) for q, o in cell] for cell in row])
            finals.append(list(mf[p]))
        for a in (0, 1):
            trans[0][a].extend((q + off, o) for q, o in mt[0][a])
        finals[0].extend(mf[0])
    return trans, finals


# ---------------------------------------------------------------------------
# functionality: squared product with delay tracking


def _delay(s: str, t: str) -> tuple[str, str] | None:
    i = 0
    m = min(len(s), len(t))
    while i < m and s[i] == t[i]:
        i += 1
    s, t = s[i:], t[i:]
    if s and t:
        return None
    return s, t


def _square(trans, finals):
    index = {(0, 0): 0}
    order = [(0, 0)]
    edges: list[list[tuple[int, str, str, int]]] = []
    i = 0
    while i < len(order):
        p, q = order[i]
        out = []
        for a in (0, 1):
            for p2, o1 in trans[p][a]:
                for q2, o2 in trans[q][a]:
                    nxt = (p2, q2)
                    if nxt not in index:
                        index[nxt] = len(order)
                        order.append(nxt)
                    out.append((a, o1, o2, index[nxt]))
        edges.append(out)
        i += 1
    is_final = [bool(finals[p]) and bool(finals[q]) for p, q in order]
    rev: list[list[int]] = [[] for _ in order]
    for k, out in enumerate(edges):
        for _, _, _, j in out:
            rev[j].append(k)
    co = {k for k in range(len(order)) if is_final[k]}
    stack = list(co)
    while stack:
        k = stack.pop()
        for j in rev[k]:
            if j not in co:
                co.add(j)
                stack.append(j)
    return order, edges, is_final, co


def _completion(edges, is_final, co, start: int) -> str:
    """Shortest input leading from a square state to a final square state."""
    seen = {start: ""}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        if is_final[k]:
            return seen[k]
        for a, _, _, j in edges[k]:
            if j in co and j not in seen:
                seen[j] = seen[k] + ALPHABET[a]
                queue.append(j)
    raise AssertionError("square state is not co-accessible")


def _functionality_witness(trans, finals) -> str | None:
    """None if the machine is functional, else an input with two outputs."""
    order, edges, is_final, co = _square(trans, finals)
    if 0 not in co:
        return None
    delays: dict[int, tuple[str, str]] = {0: ("", "")}
    words = {0: ""}
    queue = deque([0])

    def pick(*candidates: str) -> str:
        for w in candidates:
            if len(_outputs(trans, finals, w)) > 1:
                return w
        raise AssertionError("functionality witness search failed")

    while queue:
        k = queue.popleft()
        s, t = delays[k]
        if is_final[k]:
            p, q = order[k]
            if {s + fo for fo in finals[p]} | {t + fo for fo in finals[q]} != {s + finals[p][0]}:
                return pick(words[k])
        for a, o1, o2, j in edges[k]:
            if j not in co:
                continue
            d = _delay(s + o1, t + o2)
            w = words[k] + ALPHABET[a]
            if d is None:
                return pick(w + _completion(edges, is_final, co, j))
            if j in delays:
                if delays[j] != d:
                    z = _completion(edges, is_final, co, j)
                    return pick(words[j] + z, w + z)
                continue
            delays[j] = d
            words[j] = w
            queue.append(j)
    return None


# ---------------------------------------------------------------------------
# general transducers with word labels (used for inversion)


class _NFT:
    """Scratch transducer with edges (p, input word, output word, q)."""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, str, str, int]] = []
        self.finals: set[int] = set()

    def add_state(self) -> int:
        self.n += 1
        return self.n - 1

    def add_edge(self, p: int, inw: str, outw: str, q: int) -> None:
        self.edges.append((p, inw, outw, q))

    def to_realtime(self, mode: str):
        """Eliminate epsilon-input moves.

        mode ``"functional"``: the relation must be a function on its domain;
        an epsilon-input cycle with non-empty output raises NotFunctional.
        mode ``"least"``: each epsilon stretch keeps only the shortlex-least
        output per reached state; a sub-relation with the same domain and
        finitely many outputs per input.
        """
        edges = []
        for p, inw, outw, q in self.edges:
            if len(inw) <= 1:
                edges.append((p, inw, outw, q))
                continue
            cur = p
            for i, a in enumerate(inw):
                nxt = q if i == len(inw) - 1 else self.add_state()
                edges.append((cur, a, outw if i == 0 else "", nxt))
                cur = nxt
        n = self.n
        fwd: list[list[int]] = [[] for _ in range(n)]
        rev: list[list[int]] = [[] for _ in range(n)]
        for p, _, _, q in edges:
            fwd[p].append(q)
            rev[q].append(p)
        acc = _reach([0], fwd)
        co = _reach(self.finals, rev)
        useful = acc & co
        eps: list[list[tuple[int, str]]] = [[] for _ in range(n)]
        letter: list[list[list[tuple[int, str]]]] = [[[], []] for _ in range(n)]
        for p, inw, outw, q in edges:
            if p in useful and q in useful:
                if inw:
                    letter[p][int(inw)].append((q, outw))
                else:
                    eps[p].append((q, outw))
        if mode == "functional":
            eps_adj = [[q for q, _ in eps[p]] for p in range(n)]
            for p in useful:
                for q, w in eps[p]:
                    if w and p in _reach([q], eps_adj):
                        raise NotFunctional("epsilon-input cycle with output")
        trans = []
        finals = []
        for p in range(n):
            closure = self._closure(p, eps, mode) if p in useful else set()
            row = [[], []]
            fin = []
            for q, w in closure:
                for a in (0, 1):
                    row[a].extend((r, w + v) for r, v in letter[q][a])
                if q in self.finals:
                    fin.append(w)
            trans.append(row)
            finals.append(fin)
        return trans, finals

    @staticmethod
    def _closure(p: int, eps, mode: str) -> set[tuple[int, str]]:
        if mode == "functional":
            seen = {(p, "")}
            stack = [(p, "")]
            while stack:
                q, w = stack.pop()
                for r, v in eps[q]:
                    item = (r, w + v)
                    if item not in seen:
                        seen.add(item)
                        stack.append(item)
            return seen
        best: dict[int, str] = {}
        heap = [(0, "", p)]
        while heap:
            _, w, q = heapq.heappop(heap)
            if q in best:
                continue
            best[q] = w
            for r, v in eps[q]:
                if r not in best:
                    heapq.heappush(heap, (len(w) + len(v), w + v, r))
        return set((q, w) for q, w in best.items())


def _reach(starts: Iterable[int], adj) -> set[int]:
    seen = set(starts)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for q in adj[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def _inverse_nft(trans, finals) -> _NFT:
    nft = _NFT()
    for _ in trans:
        nft.add_state()
    sink = nft.add_state()
    nft.finals.add(sink)
    for p, row in enumerate(trans):
        for a, cell in zip(ALPHABET, row):
            for q, o in cell:
                nft.add_edge(p, o, a, q)
        for fo in finals[p]:
            nft.add_edge(p, fo, "", sink)
    return nft


# ---------------------------------------------------------------------------
# public value types


class PartialFn:
    """A rational partial function, as a functional real-time transducer."""

    def __init__(self, trans, finals, name: str | None = None, *, check: bool = True):
        t, f = _normalize(trans, finals)
        if check:
            w = _functionality_witness(t, f)
            if w is not None:
                raise NotFunctional("not functional", w)
        elif any(len(x) > 1 for x in f):
            raise AssertionError("trusted construction produced a non-functional machine")
        self.trans: Trans = t
        self.finals: Finals = f
        self.name = name

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def named(self, name: str):
        self.name = name
        return self

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or '?'}, states={self.n_states})"

    @cached_property
    def key(self) -> tuple:
        return (self.trans, self.finals)

    @cached_property
    def domain(self) -> Lang:
        return _domain(self.trans, self.finals)

    def is_total(self) -> bool:
        return self.domain.is_full()

    def outputs(self, word: str) -> set[str]:
        return _outputs(self.trans, self.finals, word)

    def defined_at(self, word: str) -> bool:
        return bool(self.outputs(word))

    def __call__(self, word: str) -> str:
        return eval_fn(self, word)

    def image(self, lang: Lang | None = None) -> Lang:
        return image(self, lang)

    def preimage(self, lang: Lang) -> Lang:
        return preimage(self, lang)


class RationalFn(PartialFn):
    """A total rational function {0,1}* -> {0,1}*."""

    def __init__(self, trans, finals, name: str | None = None, *, check: bool = True):
        super().__init__(trans, finals, name, check=check)
        if check and not self.domain.is_full():
            raise NotTotal("not total", self.domain.complement().shortest())

    @classmethod
    def from_partial(cls, f: PartialFn, name: str | None = None, *, check: bool = True) -> "RationalFn":
        return cls(f.trans, f.finals, name or f.name, check=check)


def _wrap(trans, finals, total: bool, name=None, check=False) -> PartialFn:
    if total:
        return RationalFn(trans, finals, name, check=check)
    return PartialFn(trans, finals, name, check=check)


# ---------------------------------------------------------------------------
# operations


def make_transducer(n: int, edges, finals: dict, name: str | None = None) -> RationalFn:
    """Validated construction from an explicit state/edge listing."""
    trans, fin = _build(n, edges, finals)
    return RationalFn(trans, fin, name)


def eval_fn(f: PartialFn, word: str) -> str:
    outs = f.outputs(word)
    if not outs:
        raise DomainError("input outside the domain", word)
    if len(outs) > 1:
        raise NotFunctional("several outputs", word)
    return next(iter(outs))


def compose(f: PartialFn, g: PartialFn, name: str | None = None) -> PartialFn:
    """x -> f(g(x))."""
    outer_t, outer_f = f.trans, f.finals
    inner_t, inner_f = g.trans, g.finals
    memo: dict[tuple[int, str], set] = {}

    def run(q: int, u: str):
        key = (q, u)
        if key not in memo:
            memo[key] = _run(outer_t, q, u)
        return memo[key]

    index = {(0, 0): 0}
    order = [(0, 0)]
    trans = []
    finals = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = [[], []]
        for a in (0, 1):
            for p2, u in inner_t[p][a]:
                for q2, v in run(q, u):
                    nxt = (p2, q2)
                    if nxt not in index:
                        index[nxt] = len(order)
                        order.append(nxt)
                    row[a].append((index[nxt], v))
        fin = set()
        for fo in inner_f[p]:
            for q2, v in run(q, fo):
                fin.update(v + fo2 for fo2 in outer_f[q2])
        trans.append(row)
        finals.append(tuple(fin))
        i += 1
    total = isinstance(f, RationalFn) and isinstance(g, RationalFn)
    return _wrap(trans, finals, total, name)


def restrict(f: PartialFn, lang: Lang, name: str | None = None) -> PartialFn:
    index = {(0, 0): 0}
    order = [(0, 0)]
    trans = []
    finals = []
    i = 0
    while i < len(order):
        p, d = order[i]
        row = [[], []]
        for a in (0, 1):
            d2 = lang.delta[d][a]
            for p2, o in f.trans[p][a]:
                nxt = (p2, d2)
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                row[a].append((index[nxt], o))
        trans.append(row)
        finals.append(f.finals[p] if d in lang.accept else ())
        i += 1
    return PartialFn(trans, finals, name, check=False)


def piecewise(pieces: Sequence[PartialFn], name: str | None = None) -> RationalFn:
    """Total function assembled from pieces with disjoint, covering domains."""
    doms = [p.domain for p in pieces]
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            both = doms[i] & doms[j]
            if not both.is_empty():
                raise DomainError("domains overlap", both.shortest())
    cover = Lang.empty()
    for d in doms:
        cover = cover | d
    if not cover.is_full():
        raise DomainError("domains do not cover", cover.complement().shortest())
    trans, finals = _union_raw([(p.trans, p.finals) for p in pieces])
    return RationalFn(trans, finals, name, check=False)


def union_partial(pieces: Sequence[PartialFn], name: str | None = None) -> PartialFn:
    """Partial function on the disjoint union of the pieces' domains."""
    doms = [p.domain for p in pieces]
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            both = doms[i] & doms[j]
            if not both.is_empty():
                raise DomainError("domains overlap", both.shortest())
    trans, finals = _union_raw([(p.trans, p.finals) for p in pieces])
    return PartialFn(trans, finals, name, check=False)


def first_difference(f: PartialFn, g: PartialFn) -> str | None:
    """None if f and g are the same partial function, else a distinguishing input."""
    df, dg = f.domain, g.domain
    if df != dg:
        return (df ^ dg).shortest()
    trans, finals = _union_raw([(f.trans, f.finals), (g.trans, g.finals)])
    t, fi = _normalize(trans, finals)
    return _functionality_witness(t, fi)


def equivalent(f: PartialFn, g: PartialFn) -> bool:
    return first_difference(f, g) is None


def image(f: PartialFn, lang: Lang | None = None) -> Lang:
    if lang is not None and not lang.is_full():
        f = restrict(f, lang)
    nfa = NFA()
    for _ in f.trans:
        nfa.add_state()
    sink = nfa.add_state()
    nfa.start.add(0)
    nfa.finals.add(sink)
    for p, row in enumerate(f.trans):
        for cell in row:
            for q, o in cell:
                nfa.add_word_path(p, o, q)
        for fo in f.finals[p]:
            nfa.add_word_path(p, fo, sink)
    return nfa.to_lang()


def preimage(f: PartialFn, lang: Lang) -> Lang:
    def step(d: int, w: str) -> int:
        for a in w:
            d = lang.delta[d][int(a)]
        return d

    index = {(0, 0): 0}
    order = [(0, 0)]
    nfa = NFA()
    nfa.add_state()
    nfa.start.add(0)
    i = 0
    while i < len(order):
        p, d = order[i]
        for a in (0, 1):
            for p2, o in f.trans[p][a]:
                nxt = (p2, step(d, o))
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                    nfa.add_state()
                nfa.add_edge(i, ALPHABET[a], index[nxt])
        if any(step(d, fo) in lang.accept for fo in f.finals[p]):
            nfa.finals.add(i)
        i += 1
    return nfa.to_lang()


def inverse_relation_least(f: PartialFn):
    """Real-time machine for a finite-valued sub-relation of f^-1 with the same domain."""
    return _inverse_nft(f.trans, f.finals).to_realtime("least")


def inverse_functional(f: PartialFn, name: str | None = None) -> PartialFn:
    """Inverse of an injective f (no injectivity pre-check; see inverse_injective)."""
    trans, finals = _inverse_nft(f.trans, f.finals).to_realtime("functional")
    return PartialFn(trans, finals, name, check=True)


def is_injective_squared(f: PartialFn) -> bool:
    """Injectivity via the squared-product functionality test on f^-1."""
    try:
        inverse_functional(f)
    except NotFunctional:
        return False
    return True


def inverse_injective(f: PartialFn, name: str | None = None) -> PartialFn:
    from .profile import collision_pair

    pair = collision_pair(f)
    if pair is not None:
        raise NotInjective("not injective", *pair)
    return inverse_functional(f, name or (f"{f.name}^-1" if f.name else None))


# ---------------------------------------------------------------------------
# basis


def identity() -> RationalFn:
    return make_transducer(1, [(0, "0", "0", 0), (0, "1", "1", 0)], {0: ""}, "identity")


def constant(w: str) -> RationalFn:
    return make_transducer(1, [(0, "0", "", 0), (0, "1", "", 0)], {0: w}, f"constant({w or '~'})")


def prepend(w: str) -> RationalFn:
    # first letter carries the prefix; epsilon input gets it as final output
    edges = [(0, a, w + a, 1) for a in ALPHABET] + [(1, a, a, 1) for a in ALPHABET]
    return make_transducer(2, edges, {0: w, 1: ""}, f"prepend({w or '~'})")


def drop_odd() -> RationalFn:
    edges = [(0, a, a, 1) for a in ALPHABET] + [(1, a, "", 0) for a in ALPHABET]
    return make_transducer(2, edges, {0: "", 1: ""}, "drop_odd")


def chain_shift(w: str = "") -> RationalFn:
    """w0^k -> w0^(k+1); every other word fixed.  Injective, misses exactly w."""
    n = len(w)
    # states 0..n-1: matched w[:i]; n: inside w0*; n+1: copying
    edges = []
    for i, c in enumerate(w):
        for a in ALPHABET:
            edges.append((i, a, a, i + 1 if a == c else n + 1))
    edges.append((n, "0", "0", n))
    edges.append((n, "1", "1", n + 1))
    edges += [(n + 1, a, a, n + 1) for a in ALPHABET]
    finals = {i: "" for i in range(n)}
    finals[n] = "0"
    finals[n + 1] = ""
    return make_transducer(n + 2, edges, finals, f"chain_shift({w or '~'})")


def hilbert_shift() -> RationalFn:
    return chain_shift("").named("hilbert_shift")


def _prefix_machine(mapping: dict[str, str], fallback: bool, name: str, total: bool):
    """Replace a prefix from a prefix-free key set, copy the rest.

    Words not starting with a key are copied unchanged (fallback) or are
    outside the domain.
    """
    keys = list(mapping)
    for u in keys:
        for v in keys:
            if u != v and v.startswith(u):
                raise ValueError(f"prefixes not incomparable: {u!r}, {v!r}")
    nodes = sorted({k[:i] for k in keys for i in range(len(k))}, key=shortlex_key)
    ids = {t: i for i, t in enumerate(nodes)}
    copy = len(nodes)
    edges = [(copy, a, a, copy) for a in ALPHABET]
    finals: dict[int, str] = {copy: ""}
    for t in nodes:
        if fallback:
            finals[ids[t]] = t
        for a in ALPHABET:
            ta = t + a
            if ta in mapping:
                edges.append((ids[t], a, mapping[ta], copy))
            elif ta in ids:
                edges.append((ids[t], a, "", ids[ta]))
            elif fallback:
                edges.append((ids[t], a, ta, copy))
    trans, fin = _build(copy + 1, edges, finals)
    if total:
        return RationalFn(trans, fin, name)
    return PartialFn(trans, fin, name)


def cylinder_swap(u: str, v: str) -> RationalFn:
    if u.startswith(v) or v.startswith(u):
        raise ValueError("cylinder_swap needs prefix-incomparable words")
    return _prefix_machine({u: v, v: u}, True, f"cylinder_swap({u},{v})", True)


def prefix_recode(mapping: dict[str, str], name: str | None = None) -> RationalFn:
    """Bijective prefix substitution; keys and values must be the same complete prefix code."""
    return _prefix_machine(mapping, True, name or "prefix_recode", True)


def strip(w: str) -> PartialFn:
    """Partial map w.z -> z with domain w{0,1}*."""
    if not w:
        return identity()
    return _prefix_machine({w: ""}, False, f"strip({w})", False)


def parity_two(w0: str, w1: str) -> RationalFn:
    if w0 == w1:
        raise ValueError("parity_two needs two distinct values")
    edges = [(0, a, "", 1) for a in ALPHABET] + [(1, a, "", 0) for a in ALPHABET]
    return make_transducer(2, edges, {0: w0, 1: w1}, f"parity_two({w0 or '~'},{w1 or '~'})")


def pad_strip() -> RationalFn:
    """1^k 0 z -> z and 1^k -> empty word: onto, every fiber infinite."""
    edges = [(0, "1", "", 0), (0, "0", "", 1), (1, "0", "0", 1), (1, "1", "1", 1)]
    return make_transducer(2, edges, {0: "", 1: ""}, "pad_strip")


def letter_map(m0: str, m1: str, name: str | None = None) -> RationalFn:
    """Morphism sending 0 -> m0, 1 -> m1."""
    return make_transducer(1, [(0, "0", m0, 0), (0, "1", m1, 0)], {0: ""}, name or f"letter_map({m0 or '~'},{m1 or '~'})")


def point(x: str, y: str) -> PartialFn:
    """The partial function {x -> y}."""
    n = len(x) + 1
    edges = [(i, c, "", i + 1) for i, c in enumerate(x)]
    trans, fin = _build(n, edges, {len(x): y})
    return PartialFn(trans, fin, f"{x or '~'}->{y or '~'}")


def patch(base: PartialFn, mapping: dict[str, str], name: str | None = None) -> RationalFn:
    """base with finitely many points redefined."""
    keys = Lang.words(mapping)
    pieces = [restrict(base, keys.complement())] + [point(x, y) for x, y in mapping.items()]
    return piecewise(pieces, name)


def finite_permutation(mapping: dict[str, str], name: str | None = None) -> RationalFn:
    """Bijection moving finitely many words; mapping must permute its key set."""
    if set(mapping) != set(mapping.values()):
        raise ValueError("finite_permutation: values must be a permutation of the keys")
    moved = {x: y for x, y in mapping.items() if x != y}
    if not moved:
        return identity()
    return patch(identity(), moved, name or "finite_permutation")


def transposition(a: str, b: str) -> RationalFn:
    return finite_permutation({a: b, b: a}, f"transposition({a or '~'},{b or '~'})")


def power(f: RationalFn, k: int) -> RationalFn:
    out = identity()
    for _ in range(k):
        out = compose(f, out)
    return out
