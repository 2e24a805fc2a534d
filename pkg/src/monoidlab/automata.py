"""Regular languages over the binary alphabet.

Every :class:`Lang` is stored as a minimal, complete DFA in a canonical
numbering (BFS from the start state, symbol ``0`` before ``1``), so two
languages are equal exactly when their tables are equal.
"""

from __future__ import annotations

import math
from collections import deque
from functools import cached_property
from typing import Iterable, Iterator

ALPHABET = "01"
INF = math.inf


class LangError(ValueError):
    pass


def shortlex_key(word: str) -> tuple[int, str]:
    return (len(word), word)


def all_words(max_len: int) -> Iterator[str]:
    """Every word of length <= max_len, in shortlex order."""
    layer = [""]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + a for w in layer for a in ALPHABET]


class NFA:
    """Mutable epsilon-NFA used as a construction scratchpad."""

    def __init__(self):
        self.n = 0
        self.edges: list[list[tuple[str | None, int]]] = []
        self.start: set[int] = set()
        self.finals: set[int] = set()

    def add_state(self) -> int:
        self.edges.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, p: int, label: str | None, q: int) -> None:
        self.edges[p].append((label, q))

    def add_word_path(self, p: int, word: str, q: int) -> None:
        """Chain of letter edges spelling `word` from p to q."""
        if not word:
            self.add_edge(p, None, q)
            return
        cur = p
        for a in word[:-1]:
            nxt = self.add_state()
            self.add_edge(cur, a, nxt)
            cur = nxt
        self.add_edge(cur, word[-1], q)

    def _closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for label, q in self.edges[p]:
                if label is None and q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def to_lang(self) -> "Lang":
        start = self._closure(self.start)
        index = {start: 0}
        order = [start]
        delta: list[list[int]] = []
        i = 0
        while i < len(order):
            cur = order[i]
            row = []
            for a in ALPHABET:
                nxt = self._closure(q for p in cur for label, q in self.edges[p] if label == a)
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                row.append(index[nxt])
            delta.append(row)
            i += 1
        accept = {k for k, s in enumerate(order) if s & self.finals}
        return Lang.from_dfa(delta, accept, 0)


def _minimize(delta: list[list[int]], accept: set[int], start: int):
    # reachable part
    reach = [start]
    seen = {start}
    for p in reach:
        for q in delta[p]:
            if q not in seen:
                seen.add(q)
                reach.append(q)
    states = reach
    block = {q: int(q in accept) for q in states}
    n_blocks = len(set(block.values()))
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for q in states:
            sig = (block[q], block[delta[q][0]], block[delta[q][1]])
            new[q] = sigs.setdefault(sig, len(sigs))
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)
    # canonical BFS renumbering of the quotient
    rep = {}
    for q in states:
        rep.setdefault(block[q], q)
    order = [block[start]]
    num = {block[start]: 0}
    out = []
    i = 0
    while i < len(order):
        q = rep[order[i]]
        row = []
        for a in (0, 1):
            b = block[delta[q][a]]
            if b not in num:
                num[b] = len(order)
                order.append(b)
            row.append(num[b])
        out.append(tuple(row))
        i += 1
    acc = frozenset(num[block[q]] for q in states if q in accept)
    return tuple(out), acc


class Lang:
    """A regular subset of {0,1}*; immutable, hashable, canonical."""

    __slots__ = ("delta", "accept", "__dict__")

    def __init__(self, delta: tuple[tuple[int, int], ...], accept: frozenset[int]):
        self.delta = delta
        self.accept = accept

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dfa(cls, delta, accept, start: int = 0) -> "Lang":
        d, acc = _minimize([list(r) for r in delta], set(accept), start)
        return cls(d, acc)

    @classmethod
    def empty(cls) -> "Lang":
        return cls(((0, 0),), frozenset())

    @classmethod
    def full(cls) -> "Lang":
        return cls(((0, 0),), frozenset({0}))

    @classmethod
    def words(cls, words: Iterable[str]) -> "Lang":
        nfa = NFA()
        s = nfa.add_state()
        nfa.start.add(s)
        for w in words:
            _check_word(w)
            t = nfa.add_state()
            nfa.add_word_path(s, w, t)
            nfa.finals.add(t)
        return nfa.to_lang()

    @classmethod
    def cylinder(cls, prefix: str) -> "Lang":
        """prefix . {0,1}*"""
        _check_word(prefix)
        n = len(prefix)
        # states 0..n-1 read prefix, n is the full sink, n+1 dead
        delta = []
        for i, a in enumerate(prefix):
            row = [n + 1, n + 1]
            row[int(a)] = i + 1
            delta.append(row)
        delta.append([n, n])
        delta.append([n + 1, n + 1])
        return cls.from_dfa(delta, {n})

    @classmethod
    def regex(cls, pattern: str) -> "Lang":
        """Parse a small regex dialect.

        ``0`` ``1`` letters, ``.`` any letter, ``~`` the empty word, ``|``
        union, postfix ``*`` ``+`` ``?``, parentheses for grouping.
        """
        return _RegexParser(pattern).parse()

    # -- basic queries ----------------------------------------------------

    def __contains__(self, word: str) -> bool:
        q = 0
        for a in word:
            q = self.delta[q][int(a)]
        return q in self.accept

    def __eq__(self, other) -> bool:
        return isinstance(other, Lang) and self.delta == other.delta and self.accept == other.accept

    def __hash__(self) -> int:
        return hash((self.delta, self.accept))

    def __repr__(self) -> str:
        card = self.cardinality()
        head = ",".join(w or "~" for w in self.enumerate_shortlex(4))
        return f"Lang(states={len(self.delta)}, card={card}, first=[{head}])"

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def is_empty(self) -> bool:
        return not self.accept

    def is_full(self) -> bool:
        return len(self.accept) == len(self.delta)

    # -- boolean algebra --------------------------------------------------

    def _product(self, other: "Lang", op) -> "Lang":
        index = {(0, 0): 0}
        order = [(0, 0)]
        delta = []
        i = 0
        while i < len(order):
            p, q = order[i]
            row = []
            for a in (0, 1):
                nxt = (self.delta[p][a], other.delta[q][a])
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                row.append(index[nxt])
            delta.append(row)
            i += 1
        accept = {k for k, (p, q) in enumerate(order) if op(p in self.accept, q in other.accept)}
        return Lang.from_dfa(delta, accept)

    def complement(self) -> "Lang":
        return Lang(self.delta, frozenset(range(len(self.delta))) - self.accept)

    def intersect(self, other: "Lang") -> "Lang":
        return self._product(other, lambda x, y: x and y)

    def union(self, other: "Lang") -> "Lang":
        return self._product(other, lambda x, y: x or y)

    def difference(self, other: "Lang") -> "Lang":
        return self._product(other, lambda x, y: x and not y)

    def symmetric_difference(self, other: "Lang") -> "Lang":
        return self._product(other, lambda x, y: x != y)

    __and__ = intersect
    __or__ = union
    __sub__ = difference
    __xor__ = symmetric_difference
    __invert__ = complement

    def issubset(self, other: "Lang") -> bool:
        return self.difference(other).is_empty()

    __le__ = issubset

    def concat(self, other: "Lang") -> "Lang":
        nfa = NFA()
        a = _embed(nfa, self)
        b = _embed(nfa, other)
        nfa.start.add(a[0])
        for q in self.accept:
            nfa.add_edge(a[q], None, b[0])
        nfa.finals.update(b[q] for q in other.accept)
        return nfa.to_lang()

    def residual(self, prefix: str) -> "Lang":
        """{z : prefix+z in L}"""
        q = 0
        for a in prefix:
            q = self.delta[q][int(a)]
        return Lang.from_dfa(self.delta, self.accept, q)

    # -- counting and enumeration ----------------------------------------

    @cached_property
    def _live(self) -> frozenset[int]:
        rev: list[list[int]] = [[] for _ in self.delta]
        for p, row in enumerate(self.delta):
            for q in row:
                rev[q].append(p)
        seen = set(self.accept)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for p in rev[q]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    @cached_property
    def _card(self) -> int | float:
        live = self._live
        if 0 not in live:
            return 0
        # DFS for a cycle through live states, counting accepted paths
        color = {}
        count: dict[int, int] = {}

        def visit(root: int) -> bool:
            stack = [(root, 0)]
            color[root] = 1
            while stack:
                q, i = stack[-1]
                succ = [r for r in self.delta[q] if r in live]
                if i < len(succ):
                    stack[-1] = (q, i + 1)
                    r = succ[i]
                    c = color.get(r)
                    if c == 1:
                        return True
                    if c is None:
                        color[r] = 1
                        stack.append((r, 0))
                else:
                    color[q] = 2
                    count[q] = int(q in self.accept) + sum(count[r] for r in succ)
                    stack.pop()
            return False

        if visit(0):
            return INF
        return count[0]

    def cardinality(self) -> int | float:
        """Number of words in L, or ``math.inf``."""
        return self._card

    def is_finite(self) -> bool:
        return self._card != INF

    def count_by_length(self, max_len: int) -> list[int]:
        """counts[k] = number of words of length exactly k in L."""
        vec = {0: 1}
        out = []
        for _ in range(max_len + 1):
            out.append(sum(c for q, c in vec.items() if q in self.accept))
            nxt: dict[int, int] = {}
            for q, c in vec.items():
                for r in self.delta[q]:
                    nxt[r] = nxt.get(r, 0) + c
            vec = nxt
        return out

    def count_upto(self, max_len: int) -> int:
        return sum(self.count_by_length(max_len))

    def enumerate_shortlex(self, k: int) -> list[str]:
        """The k shortlex-smallest members (fewer if L is smaller)."""
        if k < 0:
            raise LangError("k must be non-negative")
        out: list[str] = []
        if k == 0 or 0 not in self._live:
            return out
        finite = self.is_finite()
        n = len(self.delta)
        # can[r] = states that reach an accepting state in exactly r steps
        can = [set(self.accept)]
        length = 0
        while len(out) < k:
            if finite and length > n:
                break
            while len(can) <= length:
                prev = can[-1]
                can.append({q for q in range(n) if self.delta[q][0] in prev or self.delta[q][1] in prev})
            self._words_of_length(length, can, k - len(out), out)
            length += 1
        return out

    def _words_of_length(self, length: int, can, limit: int, out: list[str]) -> None:
        if 0 not in can[length]:
            return
        stack = [(0, "")]
        found = 0
        while stack and found < limit:
            q, w = stack.pop()
            rem = length - len(w)
            if rem == 0:
                out.append(w)
                found += 1
                continue
            for a in (1, 0):  # pushed reversed so 0 pops first
                r = self.delta[q][a]
                if r in can[rem - 1]:
                    stack.append((r, w + ALPHABET[a]))

    def __iter__(self) -> Iterator[str]:
        """All members in shortlex order (possibly infinite)."""
        if 0 not in self._live:
            return
        n = len(self.delta)
        finite = self.is_finite()
        can = [set(self.accept)]
        length = 0
        while not (finite and length > n):
            while len(can) <= length:
                prev = can[-1]
                can.append({q for q in range(n) if self.delta[q][0] in prev or self.delta[q][1] in prev})
            batch: list[str] = []
            self._words_of_length(length, can, 1 << 62, batch)
            yield from batch
            length += 1

    def shortest(self) -> str | None:
        got = self.enumerate_shortlex(1)
        return got[0] if got else None

    # -- structural tests -------------------------------------------------

    def is_fat(self) -> tuple[bool, str | None]:
        """Does L contain a full cylinder w{0,1}*?  Returns the shortlex-least w."""
        universal = {q for q in range(len(self.delta)) if self._all_accepting_from(q)}
        if not universal:
            return False, None
        # BFS in shortlex order gives the least access word
        seen = {0: ""}
        queue = deque([0])
        while queue:
            q = queue.popleft()
            if q in universal:
                return True, seen[q]
            for a in (0, 1):
                r = self.delta[q][a]
                if r not in seen:
                    seen[r] = seen[q] + ALPHABET[a]
                    queue.append(r)
        return False, None

    def _all_accepting_from(self, q: int) -> bool:
        seen = {q}
        stack = [q]
        while stack:
            p = stack.pop()
            if p not in self.accept:
                return False
            for r in self.delta[p]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return True

    def find_infinite_cylinder(self) -> str:
        """A prefix w with L ∩ w{0,1}* infinite.

        Starts at the empty prefix and descends into the unique infinite
        branch while the other branch holds only finitely many (but some)
        members of L, i.e. it sheds finite debris in front of the infinite
        part.  Stops at the first branching or when the residual repeats.
        """
        if self.is_finite():
            raise LangError("no infinite cylinder: language is finite")
        w = ""
        seen_states = set()
        q = 0
        while q not in seen_states:
            seen_states.add(q)
            parts = [self.intersect(Lang.cylinder(w + a)) for a in ALPHABET]
            inf = [i for i in (0, 1) if not parts[i].is_finite()]
            if len(inf) != 1:
                break
            other = parts[1 - inf[0]]
            if other.is_empty():
                break
            w += ALPHABET[inf[0]]
            q = self.delta[q][inf[0]]
        return w


def _check_word(w: str) -> None:
    if any(c not in ALPHABET for c in w):
        raise LangError(f"not a binary word: {w!r}")


def _embed(nfa: NFA, lang: Lang) -> list[int]:
    ids = [nfa.add_state() for _ in lang.delta]
    for p, row in enumerate(lang.delta):
        for a, q in zip(ALPHABET, row):
            nfa.add_edge(ids[p], a, ids[q])
    return ids


class _RegexParser:
    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.nfa = NFA()

    def parse(self) -> Lang:
        if not self.text:
            raise LangError("empty pattern; use '~' for the empty word")
        s, t = self._alt()
        if self.pos != len(self.text):
            raise LangError(f"unexpected {self.text[self.pos]!r} at {self.pos} in {self.text!r}")
        self.nfa.start.add(s)
        self.nfa.finals.add(t)
        return self.nfa.to_lang()

    def _peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _alt(self):
        s, t = self._cat()
        while self._peek() == "|":
            self.pos += 1
            s2, t2 = self._cat()
            ns, nt = self.nfa.add_state(), self.nfa.add_state()
            for a, b in ((s, t), (s2, t2)):
                self.nfa.add_edge(ns, None, a)
                self.nfa.add_edge(b, None, nt)
            s, t = ns, nt
        return s, t

    def _cat(self):
        s = t = None
        while self._peek() not in (None, "|", ")"):
            a, b = self._post()
            if s is None:
                s, t = a, b
            else:
                self.nfa.add_edge(t, None, a)
                t = b
        if s is None:
            raise LangError(f"empty branch at {self.pos} in {self.text!r}")
        return s, t

    def _post(self):
        s, t = self._atom()
        while self._peek() in ("*", "+", "?"):
            op = self.text[self.pos]
            self.pos += 1
            ns, nt = self.nfa.add_state(), self.nfa.add_state()
            self.nfa.add_edge(ns, None, s)
            self.nfa.add_edge(t, None, nt)
            if op in "*?":
                self.nfa.add_edge(ns, None, nt)
            if op in "*+":
                self.nfa.add_edge(t, None, s)
            s, t = ns, nt
        return s, t

    def _atom(self):
        c = self._peek()
        if c is None:
            raise LangError(f"pattern ends early: {self.text!r}")
        self.pos += 1
        if c == "(":
            s, t = self._alt()
            if self._peek() != ")":
                raise LangError(f"missing ')' in {self.text!r}")
            self.pos += 1
            return s, t
        s, t = self.nfa.add_state(), self.nfa.add_state()
        if c in ALPHABET:
            self.nfa.add_edge(s, c, t)
        elif c == ".":
            self.nfa.add_edge(s, "0", t)
            self.nfa.add_edge(s, "1", t)
        elif c == "~":
            self.nfa.add_edge(s, None, t)
        else:
            raise LangError(f"unexpected {c!r} in {self.text!r}")
        return s, t


FULL = Lang.full()
EMPTY = Lang.empty()
