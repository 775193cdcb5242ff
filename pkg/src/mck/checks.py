"""Verification suites shared by the command line and the acceptance tests.

Every suite returns a list of ``CheckResult``; none of them raise on a
failed identity.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from . import conjecture
from .exactalg import RationalExpr, probably_zero, substitute, substitute_scalar, var
from .koornwinder import (
    KoornwinderParams,
    P_from_interp,
    P_one_column_fourfold,
    P_one_column_twofold,
    P_one_column_via_C,
    P_one_column_via_E,
    eigen_residual,
    interp_transitions,
    interp_from_E,
    kostka_expansion,
    oracle_P,
    scalar_spec,
    schur_one_column,
)
from .qseries import catalan_ballot
from .symfunc import E_interp, Partition, sum_syms
from .transition import (
    B,
    B_alt,
    Btilde,
    Btilde_alt,
    C_coeff,
    C_via_paths,
    CheckResult,
    F,
    bressoud_M,
    build_matrices,
    enumerate_paths,
    krattenthaler_N,
    kostka,
    named_spec,
    verify_recursions,
)

SUITES = ("inverse", "recursion", "fourterm", "sears", "paths", "oracle", "interp", "kostka", "conjecture")

t = var("t")


def _draws(count: int, seed: int, height: int = 30) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        vals = [Fraction(rng.randint(1, height), rng.randint(1, height)) for _ in range(6)]
        if len(set(vals)) == 6 and 1 not in vals:
            out.append(vals)
    return out


# ---------------------------------------------------------------- matrices

def check_inverse(size: int = 12) -> list:
    b = build_matrices("B", size)
    bt = build_matrices("Btilde", size)
    return [
        CheckResult(f"B*Btilde=I size {size}", (b @ bt).is_identity()),
        CheckResult(f"Btilde*B=I size {size}", (bt @ b).is_identity()),
    ]


def check_bressoud_krattenthaler(size: int = 8, draws: int = 5, seed: int = 0) -> list:
    out = []
    for k, (u, v, x, y, z, base) in enumerate(_draws(draws, seed)):
        left = bressoud_M(u, v, x, y, base, size) @ bressoud_M(u, v, y, z, base, size)
        right = bressoud_M(u, v, x, z, base, size)
        same = all(left[key] == right[key] for key in set(left.entries) | set(right.entries))
        out.append(CheckResult(f"bressoud composition draw {k}", same))
        prod = krattenthaler_N(x, y, base, size) @ krattenthaler_N(y, x, base, size)
        out.append(CheckResult(f"krattenthaler inversion draw {k}", prod.is_identity()))
    return out


def check_special_values(top: int = 6) -> list:
    c_ok = all(C_coeff(-1, j) == (1 if j == 0 else 0) for j in range(top + 1))
    b_row = [B(RationalExpr(1), j) for j in range(top + 1)]
    b_ok = b_row[:2] == [1, -1] and all(v == 0 for v in b_row[2:])
    bt_ok = all(Btilde(RationalExpr(1), i) == Btilde(t ** 2, i - 1) for i in range(2, top + 1))
    return [
        CheckResult("C(1,j)=delta", c_ok),
        CheckResult("B(1,.)=(1,-1,0,...)", b_ok),
        CheckResult("Btilde(1,i)=Btilde(t^2,i-1)", bt_ok),
    ]


def _catalan_rows(spec: str, size: int) -> list:
    m = build_matrices("C", size, named_spec(spec))
    rows = []
    for r in range(size):
        row = [m[(r, r + 2 * i)].constant_value() for i in range((size - 1 - r) // 2 + 1)]
        rows.append(row)
    return rows


def check_recursion(size: int = 12) -> list:
    out = [r for r in verify_recursions(size) if r.name.startswith(("catalan", "C-"))]
    cat = _catalan_rows("schur-c", size)
    ok = all(cat[r][i] == catalan_ballot(r, i) for r in range(size) for i in range(len(cat[r])))
    out.append(CheckResult("schur-c gives ballot numbers", ok))
    pas = _catalan_rows("schur-d", size)
    ok = all(pas[r][i] == comb(r + 2 * i, i) for r in range(size) for i in range(len(pas[r])))
    out.append(CheckResult("schur-d gives binomials", ok))
    # f(t^(i+1)) at the Schur points: identically 1, except f(t) = 2 for type D
    for name, boundary in (("schur-c", 1), ("schur-d", 2)):
        spec = named_spec(name)
        vals = [substitute(F(t ** i, -1), spec) for i in range(size + 1)]
        ok = vals[0] == boundary and all(v == 1 for v in vals[1:])
        out.append(CheckResult(f"{name} f(t)={boundary}, f=1 otherwise", ok))
    return out + check_special_values()


def check_fourterm(size: int = 8) -> list:
    return [r for r in verify_recursions(size) if "four-term" in r.name]


def check_sears(top: int = 8, randomized: bool = True) -> list:
    s = var("s")

    def same(x, y):
        d = x - y
        return d.is_zero() or (randomized and probably_zero(d, trials=20))

    bad_b = [j for j in range(top + 1) if not same(B(s, j), B_alt(s, j))]
    bad_bt = [j for j in range(top + 1) if not same(Btilde(s, j), Btilde_alt(s, j))]
    return [
        CheckResult("B_alt=B", not bad_b, f"failing j={bad_b}" if bad_b else ""),
        CheckResult("Btilde_alt=Btilde", not bad_bt, f"failing j={bad_bt}" if bad_bt else ""),
    ]


def check_paths(top: int = 6, count_top: int = 7, symbolic_span: int = 5, points: int = 20) -> list:
    """Path sums against C: symbolically for r + i <= symbolic_span, at exact random points beyond."""
    grid = [(r, i) for r in range(top + 1) for i in range(top + 1)]
    bad = [(r, i) for r, i in grid if r + i <= symbolic_span and C_via_paths(r, i) != C_coeff(r, i)]
    rng = random.Random(0)
    for r, i in grid:
        if r + i <= symbolic_span:
            continue
        target = C_coeff(r, i)
        for _ in range(points):
            point = {v: Fraction(rng.randint(1, 10**4), rng.randint(1, 10**4)) for v in "act"}
            try:
                want = substitute_scalar(target, point)
            except ZeroDivisionError:
                continue
            if C_via_paths(r, i, point) != want:
                bad.append((r, i))
                break
    counts = [
        (r, i) for r in range(count_top + 1) for i in range(count_top + 1)
        if len(enumerate_paths(r, i)) != catalan_ballot(r, i)
    ]
    return [
        CheckResult("path sum = C", not bad, f"failing {bad}" if bad else ""),
        CheckResult("path count = ballot", not counts, f"failing {counts}" if counts else ""),
    ]


# ---------------------------------------------------------------- polynomials

def check_oracle(ns=(1, 2, 3), trials: int = 5, seed: int = 0) -> list:
    out = []
    for n in ns:
        for k in range(trials):
            params = KoornwinderParams.random(seed + 1000 * n + k, n)
            col = KoornwinderParams.random(seed + 1000 * n + k, n, column_type=True)
            spec = scalar_spec(col)
            for r in range(n + 1):
                lam = Partition.column(r)
                four = P_one_column_fourfold(n, r, params)
                ok = four == oracle_P(lam, n, params)
                ok = ok and eigen_residual(four, lam, params).is_zero()
                ok = ok and four.coefficient(lam) == 1
                two = P_one_column_twofold(n, r, col)
                ok = ok and P_one_column_fourfold(n, r, col) == two
                ok = ok and P_one_column_via_E(n, r, spec) == two and P_one_column_via_C(n, r, spec) == two
                out.append(CheckResult(f"oracle n={n} r={r} draw {k}", bool(ok)))
    return out


def check_interp(n: int = 3, trials: int = 2, seed: int = 0) -> list:
    out = []
    for k, vals in enumerate(_draws(trials, seed + 17)):
        params = KoornwinderParams(*vals)
        for r in range(n + 1):
            direct = E_interp(n, r, params.a, params.t)
            via_e = interp_from_E(n, r, params)
            out.append(CheckResult(f"E_interp via e(s,m) n={n} r={r} draw {k}", direct == via_e))
            target = oracle_P(Partition.column(r), n, params)
            out.append(CheckResult(f"P via E_interp n={n} r={r} draw {k}", P_from_interp(n, r, params) == target))
            back = interp_transitions(n, r, params)["interp_from_P"]
            rebuilt = sum_syms(n, [oracle_P(Partition.column(r - l), n, params).scale(c) for l, c in enumerate(back)])
            out.append(CheckResult(f"E_interp via P n={n} r={r} draw {k}", rebuilt == direct))
    return out


def check_kostka(n_max: int = 12, expand_n: int = 4) -> list:
    out = []
    try:
        for n in range(n_max + 1):
            for r in range(n + 1):
                for j in range(r // 2 + 1):
                    kostka("C", n, r, j)
                    kostka("D", n, r, j)
        out.append(CheckResult(f"closed forms agree, nonnegative integral, n<={n_max}", True))
    except ArithmeticError as exc:
        out.append(CheckResult(f"closed forms agree, nonnegative integral, n<={n_max}", False, str(exc)))
    for fam in ("C", "D"):
        ok = all(kostka_expansion(fam, expand_n, r) == schur_one_column(fam, expand_n, r) for r in range(expand_n + 1))
        out.append(CheckResult(f"Schur {fam} = sum K * HL, n={expand_n}", ok))
    return out


def kostka_table(family: str, n: int) -> dict:
    """{(r, j): polynomial string} for r <= n."""
    return {(r, j): kostka(family, n, r, j).text() for r in range(n + 1) for j in range(r // 2 + 1)}


def check_conjecture(points: int = 3, seed: int = 0, workers: int = 1) -> list:
    return conjecture.run_conjecture_suite(points=points, seed=seed, workers=workers)
