"""Command-line entry point: ``monoidlab <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 unreadable input,
3 internal consistency failure, 4 construction precondition failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .formats import ParseError, load, to_text
from .monoids import ALL_TAGS, OMEGA, REGISTRY, classify, maximal_monoids
from .oracle import DEFAULT_BOUND, agreement_check, empirical_profile, gn_oracle
from .profile import ConsistencyError, fiber_profile
from .transducer import TransducerError, compose

SCHEMA = "monoidlab-report/1"

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CONSISTENCY, EXIT_PRECONDITION = 0, 1, 2, 3, 4


def _bound(args) -> int:
    if args.max_len is not None:
        return args.max_len
    env = os.environ.get("MONOIDLAB_MAXLEN")
    return int(env) if env else DEFAULT_BOUND


def _registry() -> dict:
    return {
        "maximal": [m.tag for m in maximal_monoids()],
        "monoids": [{"tag": m.tag, "maximal": m.maximal_monoid, "description": m.description}
                    for m in REGISTRY],
    }


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        report = {"schema": SCHEMA, "registry": _registry(), **report}
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def _oracle_block(f, bound: int) -> dict:
    rep = agreement_check(f, bound)
    gn = {}
    tags = classify(f)
    for n in (1, 2, 3):
        v = gn_oracle(f, n)
        gn[str(n)] = {"member": v.member, "minimum": _num(v.minimum),
                      "agrees": v.member == (f"G_{n}" in tags)}
    return {"bound": bound, "consistent": rep.ok, "failures": rep.failures,
            "checks": rep.checks, "gn": gn}


def _num(x):
    return "inf" if x == OMEGA else x


def cmd_classify(args) -> int:
    out = []
    lines = []
    bad = False
    for path in args.paths:
        doc = load(path)
        f = doc.fn
        p = fiber_profile(f)
        tags = set(classify(f))
        entry = {"name": doc.name, "path": str(path), "states": f.n_states,
                 "profile": p.summary(), "memberships": {t: t in tags for t in ALL_TAGS}}
        lines.append(f"function: {doc.name} ({f.n_states} states)")
        lines.append("memberships: " + " ".join(t for t in ALL_TAGS if t in tags))
        lines += [f"  {t}: {'true' if t in tags else 'false'}" for t in ALL_TAGS]
        lines.append("maximal: " + " ".join(f"{m.tag}={'yes' if m.tag in tags else 'no'}"
                                            for m in maximal_monoids()))
        if args.oracle:
            block = _oracle_block(f, _bound(args))
            entry["oracle"] = block
            agree = block["consistent"] and all(g["agrees"] for g in block["gn"].values())
            bad |= not agree
            lines.append(f"oracle: {'consistent' if agree else 'INCONSISTENT'} "
                         f"(bound {block['bound']}; gn " +
                         " ".join(f"{n}:{'ok' if g['agrees'] else 'DISAGREE'}" for n, g in block["gn"].items()) + ")")
            lines += [f"  {msg}" for msg in block["failures"][:5]]
        out.append(entry)
    _emit(args, {"functions": out}, lines)
    return EXIT_CONSISTENCY if bad else EXIT_OK


def cmd_profile(args) -> int:
    doc = load(args.path)
    f = doc.fn
    bound = _bound(args)
    p = fiber_profile(f)
    emp = empirical_profile(f, bound)
    top = sorted(emp.counts.items(), key=lambda kv: (-kv[1], len(kv[0]), kv[0]))[:8]
    report = {"name": doc.name, "profile": p.summary(),
              "empirical": {"bound": bound, "image_size": len(emp.image),
                            "missing_first": [w or "~" for w in emp.missing[:8]],
                            "collisions": len(emp.collisions),
                            "top_counts": {w or "~": c for w, c in top}}}
    lines = [f"function: {doc.name} ({f.n_states} states)"]
    for k, v in p.summary().items():
        if isinstance(v, dict):
            first = ",".join(v["first"]) or "-"
            lines.append(f"{k}: size {v['cardinality']}, first [{first}]")
        else:
            lines.append(f"{k}: {v}")
    lines.append(f"empirical (inputs up to length {bound}): {len(emp.image)} values, "
                 f"{len(emp.collisions)} collisions")
    lines.append("  most frequent: " + ", ".join(f"{w or '~'}x{c}" for w, c in top))
    _emit(args, report, lines)
    return EXIT_OK


def cmd_compose(args) -> int:
    fs = [load(p) for p in args.paths]
    h = fs[-1].fn
    for d in reversed(fs[:-1]):
        h = compose(d.fn, h)
    name = args.name or "∘".join(d.name for d in fs)
    text = to_text(h, name)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    if args.json:
        _emit(args, {"name": name, "states": h.n_states, "transducer": text,
                     "memberships": classify(h)}, [])
    elif not args.output:
        sys.stdout.write(text)
    return EXIT_OK


def _lam_arg(s: str):
    if s in ("omega", "w", "inf"):
        return OMEGA
    return int(s)


def cmd_witness(args) -> int:
    from . import witnesses as W
    from .oracle import chain_agreement

    def need(attr):
        val = getattr(args, attr)
        if val is None:
            raise SystemExit(f"witness {args.kind}: --{attr.replace('_', '-')} is required")
        return load(val).fn

    try:
        if args.kind == "ji":
            chain = W.decompose_ji(need("target"))
        elif args.kind == "universal":
            chain = W.universal_factor(need("u"), need("target"))
        elif args.kind == "glambda":
            _, chain = W.exists_lambda0(need("h"), _lam_arg(args.lam or "1"))
        elif args.kind == "conj":
            chain = W.generous_conjugate(need("g"))
        elif args.kind == "mlambda":
            chain = W.m_witness(need("m"), _lam_arg(args.lam or "1"), need("target"))
        else:
            chain = W.escape_to_universal(need("m_omega"), need("m_1"))
    except W.PreconditionError as exc:
        _emit(args, {"witness": {"kind": args.kind, "error": str(exc)}}, [f"precondition failed: {exc}"])
        return EXIT_PRECONDITION
    checks = chain.verify_report()
    mismatch = chain_agreement(chain, min(_bound(args), 10))
    ok = all(checks.values()) and not mismatch
    lines = [f"chain: {chain.identity_text}"]
    lines += [f"  {k}: {'ok' if v else 'FAILED'}" for k, v in checks.items()]
    lines.append(f"  pointwise: {'ok' if not mismatch else 'mismatch at ' + (mismatch[0] or '~')}")
    for k, v in chain.notes.items():
        lines.append(f"  {k}: {v}")
    lines.append("verified" if ok else "NOT verified")
    if args.emit:
        for name, f in chain.bindings.items():
            lines.append(to_text(f, name))
    data = chain.to_dict()
    data.update(checks=checks, pointwise_mismatch=mismatch[:5], verified=ok)
    _emit(args, {"witness": data}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    from .acceptance import Battery

    battery = Battery(full=args.full, bound=_bound(args))
    echo = None if args.json else print
    outs = battery.run(only=set(args.only) if args.only else None, echo=echo)
    failed = [o for o in outs if not o.passed]
    if args.json:
        _emit(args, {"criteria": [o.__dict__ for o in outs], "seconds": battery.total_seconds}, [])
    else:
        print(f"{len(outs) - len(failed)}/{len(outs)} criteria passed in {battery.total_seconds:.1f}s")
    if failed:
        print(f"first failing criterion: {failed[0].key}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-len", type=int, default=None,
                        help=f"oracle length bound (default $MONOIDLAB_MAXLEN or {DEFAULT_BOUND})")

    ap = argparse.ArgumentParser(prog="monoidlab", description="Monoids of rational functions on binary words.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="monoid memberships of function files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute-force oracles")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("profile", parents=[common], help="fiber profile of one function")
    p.add_argument("path")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("compose", parents=[common], help="compose functions, leftmost applied last")
    p.add_argument("paths", nargs="+")
    p.add_argument("-o", "--output")
    p.add_argument("--name")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("witness", parents=[common], help="build and verify a factorization")
    p.add_argument("kind", choices=["ji", "universal", "glambda", "conj", "mlambda", "escape"])
    p.add_argument("--target")
    p.add_argument("--u")
    p.add_argument("--m")
    p.add_argument("--h")
    p.add_argument("--g")
    p.add_argument("--m-omega", dest="m_omega")
    p.add_argument("--m-1", dest="m_1")
    p.add_argument("--lambda", dest="lam", help="1..8 or omega")
    p.add_argument("--emit", action="store_true", help="print every binding as a transducer")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    p.add_argument("--full", action="store_true", help="also sweep conjugated functions at the full bound")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except TransducerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
