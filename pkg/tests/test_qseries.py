from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from mck.exactalg import RationalExpr, substitute_scalar, var
from mck.qseries import (
    PhiSpec,
    bibasic_phi,
    catalan_ballot,
    gen_binom,
    phi_sum,
    qballot,
    qbinom,
    qint,
    qpoch,
    qpochs,
)
from mck.transition import polynomial_coefficients

q, t, z = var("q"), var("t"), var("s")


def test_qpoch_examples():
    assert qpoch(z, q, 0) == 1
    assert qpoch(t, t, 2) == (1 - t) * (1 - t ** 2)
    assert qpoch(t ** 2, t, -1) == 1 / (1 - t)


def test_qbinom_examples():
    assert qbinom(4, 2, q) == 1 + q + 2 * q ** 2 + q ** 3 + q ** 4
    assert qbinom(7, 0, q) == 1
    assert qint(3, q) == 1 + q + q ** 2


def test_gen_binom_examples():
    m = Fraction(11, 3)
    assert gen_binom(m, 0) == 1
    assert gen_binom(4, 2) == 6
    assert gen_binom(m, 2) == m * (m - 1) / 2


def test_phi_sum_trivial():
    assert phi_sum(PhiSpec((), (), q, z, terms=0)) == 1


def test_phi_sum_q_binomial_theorem():
    # terminating 1phi0: sum_k (q^-n;q)_k/(q;q)_k z^k = (z q^-n; q)_n
    n = 4
    got = phi_sum(PhiSpec((q ** -n,), (), q, z, terms=n))
    assert got == qpoch(z / q ** n, q, n)


def test_q_chu_vandermonde():
    # 2phi1(q^-n, b; c; q, q) = (c/b;q)_n / (c;q)_n * b^n
    b, c = Fraction(2, 7), Fraction(5, 3)
    qq = Fraction(3, 4)
    for n in range(5):
        got = phi_sum(PhiSpec((qq ** -n, b), (c,), qq, qq, terms=n))
        assert got == qpoch(c / b, qq, n) / qpoch(c, qq, n) * b ** n


def test_bibasic_reduces_to_single_base():
    qq, p = Fraction(1, 3), Fraction(2, 5)
    got = bibasic_phi([qq ** -3], [], [], [], qq, p, Fraction(7, 2), 3)
    assert got == phi_sum(PhiSpec((qq ** -3,), (), qq, Fraction(7, 2), terms=3))


def test_ballot_examples():
    assert [catalan_ballot(0, j) for j in range(5)] == [1, 1, 2, 5, 14]
    assert catalan_ballot(2, 2) == 9
    assert qballot(0, 2) == 1 + q ** 2
    assert qballot(0, 2, form="difference") == 1 + q ** 2
    with pytest.raises(ValueError):
        qballot(0, 2, form="other")


@pytest.mark.parametrize("m, j", [(m, j) for m in range(5) for j in range(5)])
def test_qballot_forms_agree_and_degenerate(m, j):
    ratio = qballot(m, j)
    assert ratio == qballot(m, j, form="difference")
    coeffs = polynomial_coefficients(ratio, "q")
    assert coeffs is not None
    assert all(c >= 0 and Fraction(c).denominator == 1 for c in coeffs.values())
    assert sum(coeffs.values()) == catalan_ballot(m, j)


# ---------------------------------------------------------------- properties

nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda x: x not in (0, 1, -1))


@given(nonzero, nonzero, st.integers(-4, 4))
def test_qpoch_recurrence(zv, qv, k):
    if any(zv * qv ** i == 1 for i in range(k, 0)):
        return
    assert qpoch(zv, qv, k + 1) == qpoch(zv, qv, k) * (1 - zv * qv ** k)


@given(nonzero, st.integers(0, 4), st.integers(0, 4))
def test_qpoch_splits(zv, j, k):
    qv = Fraction(2, 3)
    assert qpoch(zv, qv, j + k) == qpoch(zv, qv, j) * qpoch(zv * qv ** j, qv, k)


@given(st.integers(0, 8), st.integers(0, 8))
def test_qbinom_symmetry_and_pascal(m, j):
    if j > m:
        return
    assert qbinom(m, j, q) == qbinom(m, m - j, q)
    if 0 < j < m:
        assert qbinom(m, j, q) == qbinom(m - 1, j - 1, q) + q ** j * qbinom(m - 1, j, q)


@given(st.integers(0, 7), st.integers(0, 7))
def test_qbinom_classical_limit(m, j):
    if j <= m:
        assert substitute_scalar(qbinom(m, j, q), {"q": 1}) == comb(m, j)


@given(st.lists(nonzero, min_size=1, max_size=3), st.integers(0, 4))
def test_qpochs_is_a_product(zs, k):
    qv = Fraction(1, 2)
    want = RationalExpr(1)
    for zv in zs:
        want = want * qpoch(zv, qv, k)
    assert qpochs(zs, qv, k) == want
