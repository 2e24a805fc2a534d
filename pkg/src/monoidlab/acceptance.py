"""The acceptance battery run by ``monoidlab suite`` and the test-suite."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import suite as S
from .formats import load
from .monoids import (
    OMEGA,
    check_closed,
    check_generosity_propagation,
    classify,
    decide,
    in_delta,
    maximal_monoids,
)
from .oracle import agreement_check, chain_agreement, gn_oracle
from .profile import _CACHE, fiber_profile
from .transducer import compose
from .witnesses import (
    decompose_ji,
    escape_to_universal,
    exists_lambda0,
    generous_conjugate,
    m_witness,
    universal_factor,
)

CLOSURE_TAGS = ("A", "B", "E", "F", "G_1", "G_2", "G_3", "G_4", "G_omega", "M_1", "M_omega",
                "L", "I_0", "I_1", "I_2", "I_omega")
CLOSURE_TRIALS = 500


@dataclass
class Outcome:
    number: int
    key: str
    title: str
    passed: bool = False
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.key}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def _lam(x):
    return OMEGA if x == "omega" else x


def _check_chain(chain, bound: int) -> str | None:
    """None if the chain verifies symbolically and pointwise, else a reason."""
    rep = chain.verify_report()
    bad = [k for k, v in rep.items() if not v]
    if bad:
        return f"{chain.kind}: failed {', '.join(bad)}"
    diff = chain_agreement(chain, bound)
    if diff:
        return f"{chain.kind}: pointwise mismatch at {diff[0] or '~'}"
    return None


def closure_pool():
    """Suite functions plus their conjugates by two fixed bijections."""
    fs = S.suite_functions()
    pool = list(fs.values())
    for s in (fs["swap_0_1"], fs["transp_eps_0"]):
        for f in fs.values():
            pool.append(compose(s, f, name=f"{s.name}∘{f.name}"))
            pool.append(compose(f, s, name=f"{f.name}∘{s.name}"))
    return pool


class Battery:
    def __init__(self, full: bool = False, bound: int = 12, chain_bound: int = 10,
                 trials: int = CLOSURE_TRIALS):
        self.full = full
        self.bound = bound
        self.chain_bound = chain_bound
        self.trials = trials
        self.fs = S.suite_functions()

    # each criterion returns (passed, detail)

    def c01_registry(self):
        tags = sorted(m.tag for m in maximal_monoids())
        return tags == sorted(["A", "G_1", "G_omega", "M_1", "M_omega"]), f"maximal: {' '.join(tags)}"

    def c02_delta(self):
        bad = []
        for name, f in self.fs.items():
            p = fiber_profile(f)
            for lam, tag in ((1, "G_1"), (OMEGA, "G_omega")):
                if decide(p, tag) != in_delta(p, lam):
                    bad.append(f"{name}/{tag}")
        return not bad, f"{2 * len(self.fs) - len(bad)}/{2 * len(self.fs)} agree" + (f"; {bad[:3]}" if bad else "")

    def c03_gn_oracle(self):
        t = time.perf_counter()
        bad = []
        for name, f in self.fs.items():
            for n in (1, 2, 3):
                if gn_oracle(f, n).member != decide(fiber_profile(f), f"G_{n}"):
                    bad.append(f"{name}/G_{n}")
        dt = time.perf_counter() - t
        ok = not bad and dt < 60
        return ok, f"{3 * len(self.fs) - len(bad)}/{3 * len(self.fs)} agree in {dt:.1f}s" + (f"; {bad[:3]}" if bad else "")

    def c04_closure(self):
        pool = closure_pool()
        bad = []
        for i, tag in enumerate(CLOSURE_TAGS):
            rep = check_closed(tag, pool, self.trials, seed=i)
            if rep.pool_size < 2 or not rep.ok:
                bad.append(f"{tag} (members {rep.pool_size}, violations {rep.violations[:1]})")
        rep = check_generosity_propagation(pool, self.trials, seed=99)
        if not rep.ok:
            bad.append(f"generosity {rep.violations[:1]}")
        n = len(CLOSURE_TAGS) + 1
        return not bad, f"{n - len(bad)}/{n} families closed over {self.trials} chains" + (f"; {bad}" if bad else "")

    def c05_strict(self):
        bad = []
        for n, name in S.SEPARATORS.items():
            tags = classify(self.fs[name])
            if not (f"G_{n}" in tags and f"G_{n + 1}" not in tags):
                bad.append(name)
        return not bad, "separators " + " ".join(S.SEPARATORS.values()) + (f"; failing {bad}" if bad else "")

    def _chains(self, build: Callable, items) -> tuple[bool, str]:
        bad = []
        for label, args in items:
            try:
                chain = build(*args)
            except Exception as exc:  # a failed construction is a failed criterion
                bad.append(f"{label}: {exc}")
                continue
            why = _check_chain(chain, self.chain_bound)
            if why:
                bad.append(f"{label}: {why}")
        detail = f"{len(items) - len(bad)}/{len(items)} chains verified"
        return not bad, detail + (f"; {bad[:2]}" if bad else "")

    def c06_ji(self):
        return self._chains(decompose_ji, [(n, (f,)) for n, f in self.fs.items()])

    def c07_universal(self):
        items = [(f"{u}/{n}", (self.fs[u], f)) for u in S.UNIVERSAL_INJECTIONS for n, f in self.fs.items()]
        return self._chains(universal_factor, items)

    def c08_mlambda(self):
        items = []
        for lam, ms in S.M_LAMBDA.items():
            for m in ms:
                for t in S.M_TARGETS:
                    items.append((f"{m}/{lam}/{t}", (self.fs[m], _lam(lam), self.fs[t])))
        return self._chains(m_witness, items)

    def c09_escape(self):
        items = []
        for mw, m1 in S.ESCAPE_PAIRS:
            chain = escape_to_universal(self.fs[mw], self.fs[m1])
            why = _check_chain(chain, self.chain_bound)
            if why:
                return False, f"{mw},{m1}: {why}"
            u = chain.evaluate()
            items += [(f"{mw},{m1}/{n}", (u, f)) for n, f in self.fs.items()]
        ok, detail = self._chains(universal_factor, items)
        return ok, f"{len(S.ESCAPE_PAIRS)} escapes; {detail}"

    def c10_descent(self):
        bad = []
        seen = []
        for name, lam in S.DESCENT:
            try:
                lam0, chain = exists_lambda0(self.fs[name], _lam(lam))
            except Exception as exc:
                bad.append(f"{name}: {exc}")
                continue
            why = _check_chain(chain, self.chain_bound)
            if why or not lam0 < _lam(lam):
                bad.append(f"{name}: {why or 'no descent'}")
            seen.append(f"{name}:{lam}->{lam0}")
        return not bad, ", ".join(seen) + (f"; {bad}" if bad else "")

    def c11_conjugate(self):
        items = [(n, (self.fs[n],)) for n in S.CONJUGATE]
        return self._chains(generous_conjugate, items)

    def c12_consistency(self):
        bad = []
        pool = closure_pool() if self.full else list(self.fs.values())
        for f in pool:
            rep = agreement_check(f, self.bound)
            if not rep.ok:
                bad.append(f"{f.name}: {rep.failures[0]}")
        return not bad, f"{len(pool) - len(bad)}/{len(pool)} consistent at bound {self.bound}" + (f"; {bad[:2]}" if bad else "")

    def c13_performance(self):
        worst = ("", 0.0)
        for p in S.suite_paths():
            _CACHE.clear()
            t = time.perf_counter()
            doc = load(p)
            classify(doc.fn)
            dt = time.perf_counter() - t
            if dt > worst[1]:
                worst = (doc.name, dt)
        return worst[1] < 1.0, f"slowest classify {worst[0]} {worst[1]:.3f}s"

    CRITERIA = (
        (1, "registry-count", "exactly five maximal monoids", "c01_registry"),
        (2, "delta-equivalence", "G_1, G_omega formula equals delta", "c02_delta"),
        (3, "gn-oracle-agreement", "closed-form G_n equals structured oracle", "c03_gn_oracle"),
        (4, "closure", "random composition chains stay inside", "c04_closure"),
        (5, "strict-chain", "G_n strictly above G_n+1", "c05_strict"),
        (6, "factorization-ji", "f = j∘i with j in J, i in I", "c06_ji"),
        (7, "universal-factor", "f = g∘u with g in I_0", "c07_universal"),
        (8, "m-lambda-witness", "f = g∘m∘i with g, i in M_lambda", "c08_mlambda"),
        (9, "escape-chain", "injective with infinite co-range, then universal", "c09_escape"),
        (10, "descent", "exists_lambda0 strictly descends", "c10_descent"),
        (11, "generous-conjugate", "g∘alpha∘g generous with infinite range", "c11_conjugate"),
        (12, "symbolic-empirical", "agreement_check on the suite", "c12_consistency"),
        (13, "performance", "classify under 1 s per function", "c13_performance"),
    )

    def run_one(self, number: int) -> Outcome:
        num, key, title, meth = self.CRITERIA[number - 1]
        out = Outcome(num, key, title)
        t = time.perf_counter()
        try:
            out.passed, out.detail = getattr(self, meth)()
        except Exception as exc:
            out.passed, out.detail = False, f"crashed: {type(exc).__name__}: {exc}"
        out.seconds = time.perf_counter() - t
        return out

    def run(self, only=None, echo=None) -> list[Outcome]:
        t = time.perf_counter()
        outs = []
        for num, *_ in self.CRITERIA:
            if only and num not in only:
                continue
            o = self.run_one(num)
            outs.append(o)
            if echo:
                echo(o.line())
        self.total_seconds = time.perf_counter() - t
        return outs
