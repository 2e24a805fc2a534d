"""The curated suite of functions shipped with the package.

Each ``data/suite/*.fn`` file carries ``# expect:`` and ``# profile:``
comments.  They are written by ``python -m monoidlab.suite --regen``,
which refuses to annotate a function unless the brute-force oracles agree
with the symbolic classification.
"""

from __future__ import annotations

import argparse
import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .formats import FunctionDoc, load, loads
from .monoids import classify
from .oracle import agreement_check, gn_oracle
from .profile import card_str, fiber_profile
from .transducer import RationalFn


def suite_dir() -> Path:
    return Path(str(resources.files("monoidlab") / "data" / "suite"))


def suite_paths() -> list[Path]:
    return sorted(suite_dir().glob("*.fn"))


@lru_cache(maxsize=None)
def load_suite() -> tuple[FunctionDoc, ...]:
    return tuple(load(p) for p in suite_paths())


def suite_functions() -> dict[str, RationalFn]:
    return {d.name: d.fn for d in load_suite()}


def get(name: str) -> RationalFn:
    try:
        return suite_functions()[name]
    except KeyError:
        raise KeyError(f"no suite function named {name!r}") from None


def expected_tags(doc: FunctionDoc) -> list[str] | None:
    raw = doc.meta.get("expect")
    return raw.split() if raw is not None else None


# roles used by the acceptance battery
UNIVERSAL_INJECTIONS = ("prepend_1", "prepend_01", "dup")
M_LAMBDA = {1: ("hilbert_shift", "chain_shift_1"), "omega": ("prepend_1", "m_omega_double")}
M_TARGETS = ("identity", "const_eps", "drop_odd", "parity_eps_1", "pad_strip",
             "squash", "f0", "flip", "last_to_front", "gen_I_omega")
ESCAPE_PAIRS = (("prepend_1", "hilbert_shift"), ("m_omega_double", "hilbert_shift"),
                ("m_omega_double", "chain_shift_1"))
DESCENT = (("sep1", 2), ("squash", "omega"), ("pad_strip", 1), ("sep2", 3), ("gen_I1", 2))
CONJUGATE = ("pad_strip", "erase_zeros", "g3")
SEPARATORS = {1: "sep1", 2: "sep2", 3: "sep3"}


def profile_line(f: RationalFn) -> str:
    p = fiber_profile(f)
    return (f"c={card_str(p.c)} n_inf={card_str(p.n_inf)} s={card_str(p.s_size)} "
            f"free_cap={card_str(p.free_cap)} range={card_str(p.range_size)} "
            f"generous={str(p.is_generous).lower()}")


def annotate(doc: FunctionDoc) -> str:
    """Source text with fresh expectation comments; raises if the oracles disagree."""
    f = doc.fn
    rep = agreement_check(f)
    if not rep.ok:
        raise RuntimeError(f"{doc.name}: oracle disagreement: {rep.failures[:3]}")
    tags = classify(f)
    for n in (1, 2, 3):
        if gn_oracle(f, n).member != (f"G_{n}" in tags):
            raise RuntimeError(f"{doc.name}: gn_oracle disagrees at n={n}")
    body = [ln for ln in doc.source.splitlines()
            if not (ln.startswith("# expect:") or ln.startswith("# profile:"))]
    head = [f"# expect: {' '.join(tags)}", f"# profile: {profile_line(f)}"]
    return "\n".join(head + body) + "\n"


def regenerate(paths=None) -> list[Path]:
    changed = []
    for p in paths or suite_paths():
        doc = loads(p.read_text())
        if not doc.name:
            doc.name = p.stem
        text = annotate(doc)
        if text != doc.source:
            p.write_text(text)
            changed.append(p)
    load_suite.cache_clear()
    return changed


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m monoidlab.suite")
    ap.add_argument("--regen", action="store_true", help="rewrite expectation comments")
    args = ap.parse_args(argv)
    if args.regen:
        for p in regenerate():
            print(f"updated {p.name}")
        return 0
    for doc in load_suite():
        print(f"{doc.name:22s} {doc.fn.n_states:3d} states  {' '.join(expected_tags(doc) or [])}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
