"""Acceptance battery: one test and one PASS/FAIL line per criterion.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""

import time

import pytest

from monoidlab.acceptance import Battery

BATTERY = Battery()
CRITERIA = Battery.CRITERIA
_started = time.perf_counter()
_lines = []


@pytest.fixture(scope="module")
def report(request):
    reporter = request.config.pluginmanager.getplugin("terminalreporter")
    yield _lines
    if reporter is not None:
        reporter.write_line("")
        reporter.write_line("acceptance criteria:")
        for line in _lines:
            reporter.write_line(line)


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[c[1] for c in CRITERIA])
def test_criterion(number, report):
    outcome = BATTERY.run_one(number)
    report.append(outcome.line())
    print(outcome.line())
    assert outcome.passed, outcome.detail


def test_whole_battery_under_five_minutes(report):
    # every criterion above ran inside this module
    elapsed = time.perf_counter() - _started
    line = f"[{'PASS' if elapsed < 300 else 'FAIL'}] whole battery {elapsed:.1f}s (limit 300s)"
    report.append(line)
    assert elapsed < 300


def test_sabotaged_gn_formula_is_caught(monkeypatch, capsys):
    from monoidlab import monoids
    from monoidlab.cli import main

    real = monoids.min_deficiency

    def off_by_one(c, free_cap, n):
        return real(c, free_cap + 1, n) if n != monoids.OMEGA and n > 1 else real(c, free_cap, n)

    monkeypatch.setattr(monoids, "min_deficiency", off_by_one)
    assert Battery().run_one(2).passed
    assert not Battery().run_one(3).passed
    assert main(["suite", "--only", "2", "3"]) != 0
    assert "gn-oracle-agreement" in capsys.readouterr().err


if __name__ == "__main__":
    outs = Battery().run(echo=print)
    raise SystemExit(0 if all(o.passed for o in outs) else 1)
