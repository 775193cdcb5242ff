"""Acceptance criteria: one PASS/FAIL line per criterion.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import time

import pytest

from mck import checks
from mck.conjecture import FAIL, INCONCLUSIVE
from mck.transition import build_matrices, kostka, named_spec, verify_recursions

RESULTS: dict = {}

KOSTKA_C = [
    ["1", "t^2", "t^4 + t^8", "t^6 + t^10 + t^12 + t^14 + t^18"],
    ["1", "t^2 + t^4", "t^4 + t^6 + t^8 + t^10 + t^12"],
    ["1", "t^2 + t^4 + t^6", "t^4 + t^6 + 2*t^8 + t^10 + 2*t^12 + t^14 + t^16"],
    ["1", "t^2 + t^4 + t^6 + t^8"],
]
KOSTKA_D = [
    ["1", "2*t", "2*t^2 + 2*t^4 + 2*t^6"],
    ["1", "t + t^2 + t^3", "t^2 + t^3 + t^4 + t^5 + 2*t^6 + t^7 + t^8 + t^9 + t^10"],
    ["1", "t + 2*t^3 + t^5"],
    ["1", "t + t^3 + t^4 + t^5 + t^7"],
]


def _rows(spec: str, widths: list) -> list:
    size = max(r + 2 * (w - 1) for r, w in enumerate(widths)) + 1
    m = build_matrices("C", size, named_spec(spec))
    return [[int(m[(r, r + 2 * j)].constant_value()) for j in range(w)] for r, w in enumerate(widths)]


def _summarize(items) -> tuple:
    bad = [r.name for r in items if not r.passed]
    return not bad, f"{len(items)} checks" + (f", failing: {bad}" if bad else "")


def c1():
    want = [[1, 1, 2, 5, 14], [1, 2, 5, 14, 42], [1, 3, 9, 28], [1, 4, 14, 48]]
    got = _rows("schur-c", [len(r) for r in want])
    return got == want, f"rows {got}"


def c2():
    want = [[1, 2, 6, 20, 70], [1, 3, 10, 35, 126], [1, 4, 15, 56], [1, 5, 21, 84]]
    got = _rows("schur-d", [len(r) for r in want])
    return got == want, f"rows {got}"


def c3():
    def table(family, want):
        # row m holds n - r = m; j counts columns
        return [[kostka(family, m + 2 * len(row), 2 * len(row), j).text() for j in range(len(row))]
                for m, row in enumerate(want)]

    ok_tables = table("C", KOSTKA_C) == KOSTKA_C and table("D", KOSTKA_D) == KOSTKA_D
    ok, detail = _summarize(checks.check_kostka(12))
    return ok_tables and ok, f"table entries {'match' if ok_tables else 'differ'}; {detail}"


def c4():
    return _summarize(checks.check_inverse(12))


def c5():
    items = checks.check_recursion(12)
    for spec in ("schur-c", "schur-d"):
        for r in verify_recursions(12, named_spec(spec)):
            if r.name.startswith(("catalan", "C-")):
                r.name = f"{spec} {r.name}"
                items.append(r)
    return _summarize(items)


def c6():
    return _summarize(checks.check_fourterm(8) + checks.check_sears(8))


def c7():
    return _summarize(checks.check_paths(6, 7))


def c8():
    return _summarize(checks.check_special_values(6))


def c9():
    return _summarize(checks.check_oracle((1, 2, 3), trials=5, seed=0))


def c10():
    return _summarize(checks.check_interp(3, trials=2, seed=0))


def c11():
    return _summarize(checks.check_bressoud_krattenthaler(8, draws=5, seed=0))


def c12():
    reports = checks.check_conjecture(points=3, seed=0)
    fails = [f"{r.conjecture}{r.lam}" for r in reports if r.verdict == FAIL]
    unsure = [f"{r.conjecture}{r.lam}" for r in reports if r.verdict == INCONCLUSIVE]
    detail = f"{len(reports)} reports, {len(fails)} FAIL, {len(unsure)} INCONCLUSIVE"
    if unsure:
        detail += "; rerun with a larger window"
    return not fails, detail


CRITERIA = [
    (1, "Schur-C Catalan table", c1, 1),
    (2, "Schur-D Pascal table", c2, 1),
    (3, "Kostka tables and closed forms", c3, 5),
    (4, "B and Btilde mutually inverse, size 12", c4, 60),
    (5, "deformed Catalan recursion", c5, 60),
    (6, "four-term relations and Sears forms", c6, 60),
    (7, "lattice-path solution", c7, 30),
    (8, "special values", c8, 5),
    (9, "oracle equivalence of the routes", c9, 120),
    (10, "interpolation round trips", c10, 60),
    (11, "Bressoud composition, Krattenthaler inversion", c11, 30),
    (12, "conjecture suite", c12, 600),
]


def evaluate(number, title, fn, budget) -> tuple:
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    in_time = elapsed <= budget
    passed = ok and in_time
    timing = f"{elapsed:.1f}s of {budget}s" + ("" if in_time else " (over budget)")
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} [{timing}] {detail}"
    return passed, line


@pytest.mark.parametrize("number, title, fn, budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, budget):
    passed, line = evaluate(number, title, fn, budget)
    RESULTS[number] = line
    print(line)
    assert passed, line


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        passed, line = evaluate(*crit)
        failed += not passed
        print(line, flush=True)
    raise SystemExit(1 if failed else 0)
