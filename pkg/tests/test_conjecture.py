from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mck.conjecture import (
    FAIL,
    INCONCLUSIVE,
    PARAMETER_NOTE,
    PASS,
    TruncSeries,
    cc_params,
    compare_psi_phi_C2,
    conjecture_tasks,
    draw_point,
    folded_A_series,
    height_A,
    height_C,
    macdonald_A_oracle,
    phi_A_coeff,
    phi_A_eigencheck,
    phi_A_series,
    phi_C_series,
    psi_C2_coeff,
    run_conjecture_suite,
    verify_C2_conjecture,
    verify_C3_rect,
    verify_folded_A,
)
from mck.qseries import qpoch

Q, T = Fraction(4, 9), Fraction(9, 25)
S1, S2 = Fraction(7, 3), Fraction(2, 11)


def basic_ratio(k, s1, s2, q=Q, t=T):
    """(t;q)_k (t s2/s1;q)_k / ((q;q)_k (q s2/s1;q)_k) * (q/t)^k."""
    return (
        qpoch(t, q, k) * qpoch(t * s2 / s1, q, k) / (qpoch(q, q, k) * qpoch(q * s2 / s1, q, k)) * (q / t) ** k
    )


def test_heights():
    assert height_C((-2, 0)) == 3
    assert height_C((-1, -1)) == 2
    assert height_C((-2, 0, 0)) == 5
    assert height_C((-1, 0, -1)) == 3
    assert height_A((-1, 1)) == 1
    assert height_C((-2,)) == 1


def test_phi_A_trivial_cases():
    assert phi_A_coeff(1, [[0]], [S1], Q, T) == 1
    assert phi_A_coeff(3, [[0] * 3 for _ in range(3)], [S1, S2, Fraction(3)], Q, T) == 1


def test_phi_A_first_coefficient():
    want = (1 - T) * (1 - T * S2 / S1) * (Q / T) / ((1 - Q) * (1 - Q * S2 / S1))
    assert phi_A_coeff(2, [[0, 1], [0, 0]], [S1, S2], Q, T) == want


@pytest.mark.parametrize("k", range(5))
def test_phi_A1_is_a_basic_series(k):
    assert phi_A_coeff(2, [[0, k], [0, 0]], [S1, S2], Q, T) == basic_ratio(k, S1, S2)


def test_psi_C2_first_coefficients():
    assert psi_C2_coeff(0, 0, 0, 0, S1, S2, Q, T) == 1
    assert psi_C2_coeff(1, 0, 0, 0, S1, S2, Q, T) == basic_ratio(1, S1, S2)


def test_type_A_oracle_two_variables():
    # P_(2) = m_(2) + (1+q)(1-t)/(1-qt) m_(1,1)
    raw = macdonald_A_oracle((2, 0), 2, Q, T)
    assert raw[(2, 0)] == raw[(0, 2)] == 1
    assert raw[(1, 1)] == (1 + Q) * (1 - T) / (1 - Q * T)


@pytest.mark.parametrize("n, lam", [(2, (1, 0)), (2, (2, 1)), (3, (1, 1, 0)), (3, (2, 1, 0))])
def test_phi_A_reproduces_type_A_polynomials(n, lam):
    report = phi_A_eigencheck(n, lam, Q, T, order=4)
    assert report.verdict == PASS, report.detail


def test_phi_A_series_constant_term():
    series = phi_A_series(3, [S1, S2, Fraction(5, 2)], Q, T, 3)
    assert series[(0, 0, 0)] == 1
    assert all(height_A(k) <= 3 for k in series.coeffs)


def test_trunc_series_truncates():
    a = TruncSeries(1, 3, "C")
    a.add_term((0,), 1)
    a.add_term((-2,), Fraction(1, 2))
    a.add_term((-8,), 7)  # height 4 > 3: dropped
    assert a.coeffs == {(0,): 1, (-2,): Fraction(1, 2)}
    sq = a.mul(a)
    assert sq.coeffs == {(0,): 1, (-2,): 1, (-4,): Fraction(1, 4)}
    assert a.difference(a) == {}


def test_folded_A1_closed_form():
    series = folded_A_series(1, [S1], Q, T, 12)
    for k in range(5):
        coeff = series[(-2 * k,)]
        assert coeff == qpoch(T, Q, k) * qpoch(T / S1, Q, k) / (qpoch(Q, Q, k) * qpoch(Q / S1, Q, k)) * (Q / T) ** k
    assert series.coeffs == phi_C_series(1, [S1], Q, T, 12).coeffs


def test_psi_equals_phi_at_generic_point():
    assert compare_psi_phi_C2(S1, S2, Q, T, 5) == {}


@settings(max_examples=5)
@given(
    st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9),
    st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9),
)
def test_psi_equals_phi_property(s1, s2):
    if s1 == s2 or s1 * s2 == 1 or 1 in (s1, s2):
        return
    try:
        diff = compare_psi_phi_C2(s1, s2, Q, T, 3)
    except ZeroDivisionError:
        return
    assert diff == {}


@pytest.mark.parametrize("lam", [(0, 0), (1, 0), (1, 1), (2, 1)])
def test_C2_statement(lam):
    uq, ut = draw_point(3)
    report = verify_C2_conjecture(lam, uq, ut, window=2 * lam[0] + lam[1] + 3)
    assert report.verdict == PASS, report.detail
    assert report.header == PARAMETER_NOTE


def test_C2_small_window_is_inconclusive():
    uq, ut = draw_point(0)
    report = verify_C2_conjecture((2, 1), uq, ut, window=2)
    assert report.verdict == INCONCLUSIVE
    assert report.verdict != FAIL


def test_C3_rectangle_from_the_series_solver():
    uq, ut = draw_point(1)
    assert verify_C3_rect(1, uq, ut, window=11, method="solver").verdict == PASS
    assert verify_C3_rect(0, uq, ut, window=2).verdict == PASS


@pytest.mark.parametrize("n, order", [(1, 6), (2, 3), (3, 2)])
def test_folded_decomposition(n, order):
    uq, ut = draw_point(5)
    report = verify_folded_A(n, uq, ut, order)
    assert report.verdict == PASS, report.detail


def test_parameter_point():
    uq, ut = draw_point(11)
    assert draw_point(11) == (uq, ut)
    p = cc_params(uq, ut)
    assert (p.a, p.b, p.c, p.d) == (ut, -ut, uq * ut, -uq * ut)
    assert (p.q, p.t) == (uq * uq, ut * ut)


def test_report_document():
    uq, ut = draw_point(0)
    doc = verify_C2_conjecture((1, 0), uq, ut, 4).to_document()
    assert doc["verdict"] == PASS
    assert doc["lambda"] == [1, 0]
    assert doc["header"] == PARAMETER_NOTE


def test_task_list_covers_the_suite():
    kinds = [k for k, _ in conjecture_tasks(points=3)]
    assert kinds.count("C2") == 15
    assert kinds.count("C3") == 2
    assert kinds.count("folded") == 3


def test_parallel_suite_matches_serial():
    serial = [r.verdict for r in run_conjecture_suite(points=1, folded_order=2)]
    parallel = [r.verdict for r in run_conjecture_suite(points=1, folded_order=2, workers=2)]
    assert serial == parallel
    assert FAIL not in serial
