import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mck.exactalg import RationalExpr, substitute, substitute_scalar, var
from mck.qseries import catalan_ballot, qbinom
from mck.transition import (
    B,
    B_alt,
    Btilde,
    C_coeff,
    C_via_paths,
    F,
    TriMatrix,
    bressoud_M,
    build_matrices,
    enumerate_paths,
    f_def,
    hl_limit_B,
    krattenthaler_N,
    kostka,
    named_spec,
    verify_recursions,
)

t, s = var("t"), var("s")
ONE = RationalExpr(1)


def test_f_matches_independent_transcription():
    a, c, tt, ss = sympy.symbols("a c t s")
    w = a ** 2 * c ** 2
    ref = (
        (1 - 1 / ss) * (1 - tt ** 2 / (ss * w)) * (1 + tt / (ss * a ** 2)) * (1 + tt / (ss * c ** 2))
        / ((1 - tt / (ss ** 2 * w)) * (1 - tt ** 3 / (ss ** 2 * w)))
    )
    ours = sympy.sympify(f_def(s).text().replace("^", "**"), locals={"a": a, "c": c, "t": tt, "s": ss})
    assert sympy.simplify(ours - ref) == 0


def test_f_at_schur_points():
    spec_c, spec_d = named_spec("schur-c"), named_spec("schur-d")
    assert [substitute(f_def(t ** (i + 1)), spec_c) for i in range(7)] == [1] * 7
    assert substitute(f_def(t), spec_d) == 2
    assert [substitute(f_def(t ** (i + 1)), spec_d) for i in range(1, 7)] == [1] * 6


def test_B_special_values():
    assert B(s, 0) == 1
    assert Btilde(s, 0) == 1
    assert B(ONE, 1) == -1
    assert all(B(ONE, j) == 0 for j in range(2, 6))
    assert all(Btilde(ONE, i) == Btilde(t ** 2, i - 1) for i in range(2, 7))


def test_sears_form_at_t_squared():
    assert B(t ** 2, 1) == B_alt(t ** 2, 1)


@pytest.mark.parametrize("i", range(5))
def test_inversion_relation(i):
    total = sum((B(s, k) * Btilde(s * t ** (2 * k), i - k) for k in range(i + 1)), RationalExpr(0))
    assert total == (1 if i == 0 else 0)


def test_C_special_values():
    assert [C_coeff(-1, j) for j in range(6)] == [1, 0, 0, 0, 0, 0]
    for r in range(4):
        assert C_coeff(r, 1) == sum((F(t ** (r + 1), d) for d in range(r + 1)), RationalExpr(0))


def test_path_enumeration():
    assert [tuple(p) for p in enumerate_paths(0, 2)] == [(0, -1), (0, 0)]
    assert len(enumerate_paths(0, 3)) == 5


@pytest.mark.parametrize("r, i", [(r, i) for r in range(4) for i in range(4)])
def test_path_sum_symbolic(r, i):
    assert C_via_paths(r, i) == C_coeff(r, i)


@settings(max_examples=15)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 2 ** 32))
def test_path_sum_at_random_points(r, i, seed):
    rng = random.Random(seed)
    point = {v: Fraction(rng.randint(1, 500), rng.randint(1, 500)) for v in "act"}
    try:
        want = substitute_scalar(C_coeff(r, i), point)
    except ZeroDivisionError:
        return
    assert C_via_paths(r, i, point) == want


@given(st.integers(0, 7), st.integers(0, 7))
def test_path_count_is_ballot(r, i):
    assert len(enumerate_paths(r, i)) == catalan_ballot(r, i)


SCHUR_C_ROWS = [[1, 1, 2, 5, 14], [1, 2, 5, 14, 42], [1, 3, 9, 28], [1, 4, 14, 48]]
SCHUR_D_ROWS = [[1, 2, 6, 20, 70], [1, 3, 10, 35, 126], [1, 4, 15, 56], [1, 5, 21, 84]]


@pytest.mark.parametrize("name, rows", [("schur-c", SCHUR_C_ROWS), ("schur-d", SCHUR_D_ROWS)])
def test_schur_tables(name, rows):
    m = build_matrices("C", 12, named_spec(name))
    for r, row in enumerate(rows):
        assert [m[(r, r + 2 * j)].constant_value() for j in range(len(row))] == row


def test_schur_d_rows_are_binomials():
    m = build_matrices("C", 10, named_spec("schur-d"))
    assert all(m[(r, r + 2 * j)] == comb(r + 2 * j, j) for r in range(10) for j in range((9 - r) // 2 + 1))


def test_kostka_examples():
    assert kostka("C", 3, 3, 1) == t ** 2
    assert kostka("C", 4, 4, 2) == t ** 4 + t ** 8
    assert kostka("C", 6, 6, 3) == t ** 6 + t ** 10 + t ** 12 + t ** 14 + t ** 18
    assert kostka("C", 5, 4, 2) == t ** 4 + t ** 6 + t ** 8 + t ** 10 + t ** 12
    assert kostka("D", 2, 2, 1) == 2 * t
    assert kostka("D", 3, 2, 1) == t + t ** 2 + t ** 3


def test_hall_littlewood_limits():
    assert hl_limit_B("C", 3, 0) == 1
    assert all(hl_limit_B("C", m, j, tilde=True) == qbinom(m + 2 * j, j, t ** 2) for m in range(3) for j in range(3))
    assert hl_limit_B("D", 0, 1, tilde=True) == 2 * t
    with pytest.raises(ValueError):
        hl_limit_B("E", 0, 1)


def test_inverse_pair_small():
    size = 7
    assert (build_matrices("B", size) @ build_matrices("Btilde", size)).is_identity()


def test_bressoud_trivial_and_inverse():
    u, v, x, y, base = (Fraction(k, 7) for k in (2, 3, 5, 9, 4))
    assert bressoud_M(u, v, x, x, base, 6).is_identity()
    assert (bressoud_M(u, v, x, y, base, 6) @ bressoud_M(u, v, y, x, base, 6)).is_identity()
    n = krattenthaler_N(x, y, base, 6)
    assert all(n[(i, i)] == 1 for i in range(6))


@pytest.mark.parametrize("spec", ["generic", "schur-c", "schur-d"])
def test_recursions(spec):
    results = verify_recursions(8, named_spec(spec))
    assert results and all(r.passed for r in results), [r.name for r in results if not r.passed]


def test_matrix_serialization():
    m = build_matrices("C", 5, named_spec("schur-c"))
    again = TriMatrix.from_json(m.to_json())
    assert again.entries == m.entries
    assert m.to_csv().splitlines()[0] == "1,0,1,0,2"
    with pytest.raises(ValueError):
        build_matrices("C", 4).to_csv()


def test_size_bound(monkeypatch):
    monkeypatch.setenv("MCK_MAX_SIZE", "4")
    with pytest.raises(ValueError):
        build_matrices("C", 5)


def test_named_spec_errors():
    with pytest.raises(ValueError):
        named_spec("nope")
    assert named_spec("cnb:1/2").mapping["a^2"] == Fraction(1, 2)
