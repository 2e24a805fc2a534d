"""Text formats for functions.

Two document kinds, chosen by the first non-comment line:

``transducer v1``
    ``name <text>``, ``initial <id>``, ``state <id> [final [output=<word>]]``
    and ``trans <from> <symbol> <output|-> <to>``.  Words are raw 0/1
    strings; ``~`` (or ``-`` on a transition) is the empty word.

``expr v1``
    ``name <text>`` then lines ``<ident> = <expression>`` over the basis
    constructors and the combinators compose, piecewise, restrict.  The
    binding called ``result`` (or else the last one) is the function.

Comment lines start with ``#``; ``# key: value`` comments are kept as
metadata, which is how the curated suite stores its expectations.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from pathlib import Path

from . import transducer as T
from .automata import Lang, LangError
from .transducer import PartialFn, RationalFn, TransducerError

EPS = "~"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class FunctionDoc:
    fn: RationalFn
    name: str
    kind: str
    meta: dict[str, str] = field(default_factory=dict)
    source: str = ""


def _word(tok: str, line: int) -> str:
    w = "" if tok in (EPS, "-") else tok
    if any(c not in "01" for c in w):
        raise ParseError(f"not a binary word: {tok!r}", line)
    return w


def _show(w: str) -> str:
    return w or EPS


def to_text(f: PartialFn, name: str | None = None, meta: dict[str, str] | None = None) -> str:
    """Canonical transducer v1 text; states keep the normalized numbering."""
    lines = [f"# {k}: {v}" for k, v in (meta or {}).items()]
    lines.append("transducer v1")
    name = name or f.name
    if name:
        lines.append(f"name {name}")
    lines.append("initial 0")
    for q in range(f.n_states):
        outs = f.finals[q]
        lines.append(f"state {q} final output={_show(outs[0])}" if outs else f"state {q}")
    for q in range(f.n_states):
        for a in (0, 1):
            for r, o in f.trans[q][a]:
                lines.append(f"trans {q} {a} {o or '-'} {r}")
    return "\n".join(lines) + "\n"


def _split(text: str):
    meta = {}
    body = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].partition(":")
            if sep and key.strip() and " " not in key.strip():
                meta[key.strip()] = val.strip()
            continue
        body.append((i, line))
    return meta, body


def loads(text: str) -> FunctionDoc:
    meta, body = _split(text)
    if not body:
        raise ParseError("empty document")
    line_no, header = body[0]
    if header == "transducer v1":
        fn, name = _parse_transducer(body[1:])
        kind = "transducer"
    elif header == "expr v1":
        fn, name = _parse_expr(body[1:])
        kind = "expr"
    else:
        raise ParseError(f"unknown header {header!r}", line_no)
    return FunctionDoc(fn, name, kind, meta, text)


def load(path: str | Path) -> FunctionDoc:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}") from None
    doc = loads(text)
    if not doc.name:
        doc.name = p.stem
        doc.fn.name = p.stem
    return doc


def _parse_transducer(body) -> tuple[RationalFn, str]:
    name = ""
    ids: dict[str, int] = {}
    initial = None
    finals: dict[str, str] = {}
    edges = []

    def sid(tok: str) -> int:
        return ids.setdefault(tok, len(ids))

    for line_no, line in body:
        parts = line.split()
        head = parts[0]
        if head == "name":
            name = line[4:].strip()
        elif head == "initial" and len(parts) == 2:
            initial = parts[1]
        elif head == "state" and len(parts) in (2, 3, 4):
            sid(parts[1])
            if len(parts) >= 3:
                if parts[2] != "final":
                    raise ParseError(f"expected 'final', got {parts[2]!r}", line_no)
                out = ""
                if len(parts) == 4:
                    if not parts[3].startswith("output="):
                        raise ParseError(f"expected output=<word>, got {parts[3]!r}", line_no)
                    out = _word(parts[3][7:], line_no)
                if parts[1] in finals and finals[parts[1]] != out:
                    raise ParseError(f"state {parts[1]} has two final outputs", line_no)
                finals[parts[1]] = out
        elif head == "trans" and len(parts) == 5:
            _, p, sym, out, q = parts
            if sym not in ("0", "1"):
                raise ParseError(f"transition symbol must be 0 or 1, got {sym!r}", line_no)
            edges.append((p, sym, _word(out, line_no), q))
        else:
            raise ParseError(f"cannot parse {line!r}", line_no)
    if initial is None:
        raise ParseError("missing 'initial' line")
    # the initial state must get id 0
    order = {initial: 0}
    for tok in list(ids) + [t for e in edges for t in (e[0], e[3])]:
        order.setdefault(tok, len(order))
    n = len(order)
    try:
        fn = T.make_transducer(
            n,
            [(order[p], a, o, order[q]) for p, a, o, q in edges],
            {order[s]: w for s, w in finals.items()},
            name or None,
        )
    except TransducerError as exc:
        raise ParseError(str(exc)) from None
    return fn, name


# -- expression documents ------------------------------------------------


def _lang(x) -> Lang:
    if isinstance(x, Lang):
        return x
    if isinstance(x, str):
        return Lang.regex(x)
    raise TypeError(f"expected a language, got {type(x).__name__}")


def _w(x) -> str:
    if not isinstance(x, str):
        raise TypeError(f"expected a word, got {type(x).__name__}")
    w = "" if x == EPS else x
    if any(c not in "01" for c in w):
        raise ValueError(f"not a binary word: {x!r}")
    return w


def _wmap(d) -> dict[str, str]:
    return {_w(k): _w(v) for k, v in d.items()}


def _compose(*fs):
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = T.compose(f, out)
    return out


def _generous_onto(L):
    from .witnesses import generous_onto

    return generous_onto(_lang(L))


FUNCTIONS = {
    "identity": lambda: T.identity(),
    "constant": lambda w: T.constant(_w(w)),
    "prepend": lambda w: T.prepend(_w(w)),
    "drop_odd": lambda: T.drop_odd(),
    "hilbert_shift": lambda: T.hilbert_shift(),
    "chain_shift": lambda w="": T.chain_shift(_w(w)),
    "cylinder_swap": lambda u, v: T.cylinder_swap(_w(u), _w(v)),
    "prefix_recode": lambda d: T.prefix_recode(_wmap(d)),
    "strip": lambda w: T.strip(_w(w)),
    "parity_two": lambda a, b: T.parity_two(_w(a), _w(b)),
    "pad_strip": lambda: T.pad_strip(),
    "letter_map": lambda a, b: T.letter_map(_w(a), _w(b)),
    "point": lambda x, y: T.point(_w(x), _w(y)),
    "patch": lambda f, d: T.patch(f, _wmap(d)),
    "finite_permutation": lambda d: T.finite_permutation(_wmap(d)),
    "transposition": lambda a, b: T.transposition(_w(a), _w(b)),
    "power": lambda f, k: T.power(f, int(k)),
    "compose": _compose,
    "restrict": lambda f, L: T.restrict(f, _lang(L)),
    "piecewise": lambda *fs: T.piecewise(fs),
    "inverse": lambda f: T.inverse_injective(f),
    "generous_onto": _generous_onto,
    # languages
    "lang": _lang,
    "words": lambda *ws: Lang.words(_w(w) for w in ws),
    "cylinder": lambda w: Lang.cylinder(_w(w)),
    "complement": lambda L: _lang(L).complement(),
    "union": lambda *Ls: _fold(Ls, Lang.union),
    "intersect": lambda *Ls: _fold(Ls, Lang.intersect),
    "minus": lambda a, b: _lang(a) - _lang(b),
}


def _fold(Ls, op):
    out = _lang(Ls[0])
    for L in Ls[1:]:
        out = op(out, _lang(L))
    return out


class _Evaluator:
    def __init__(self, env: dict, line: int):
        self.env = env
        self.line = line

    def fail(self, msg: str):
        raise ParseError(msg, self.line)

    def eval(self, node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (str, int)):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in self.env:
                self.fail(f"unknown name {node.id!r}")
            return self.env[node.id]
        if isinstance(node, ast.Dict):
            return {self.eval(k): self.eval(v) for k, v in zip(node.keys, node.values)}
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = FUNCTIONS.get(node.func.id)
            if fn is None:
                self.fail(f"unknown constructor {node.func.id!r}")
            if node.keywords:
                self.fail("keyword arguments are not supported")
            args = [self.eval(a) for a in node.args]
            try:
                return fn(*args)
            except (TypeError, ValueError, LangError) as exc:
                self.fail(f"{node.func.id}: {exc}")
        self.fail(f"unsupported syntax: {ast.dump(node)[:60]}")


def _parse_expr(body) -> tuple[RationalFn, str]:
    name = ""
    env: dict = {}
    last = None
    for line_no, line in body:
        if line.startswith("name ") or line == "name":
            name = line[4:].strip()
            continue
        try:
            tree = ast.parse(line, mode="exec")
        except SyntaxError as exc:
            raise ParseError(f"syntax error: {exc.msg}", line_no) from None
        stmt = tree.body[0] if len(tree.body) == 1 else None
        if not (isinstance(stmt, ast.Assign) and len(stmt.targets) == 1
                and isinstance(stmt.targets[0], ast.Name)):
            raise ParseError("expected '<name> = <expression>'", line_no)
        target = stmt.targets[0].id
        if target in FUNCTIONS:
            raise ParseError(f"{target!r} shadows a constructor", line_no)
        env[target] = _Evaluator(env, line_no).eval(stmt.value)
        last = target
    if last is None:
        raise ParseError("expression document binds nothing")
    value = env.get("result", env[last])
    if not isinstance(value, PartialFn):
        raise ParseError("result is not a function")
    if not value.is_total():
        raise ParseError(f"result is not total: undefined at {_show(value.domain.complement().shortest())!r}")
    fn = RationalFn.from_partial(value, name or None, check=False)
    return fn, name
