from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mck.exactalg import var
from mck.symfunc import (
    E_interp,
    E_r,
    E_r_binomial,
    LaurentSym,
    Partition,
    dominance_leq,
    expand_in_monomial,
    is_invariant,
    monomial_sym,
    mul,
    partitions_below,
)

a, t = var("a"), var("t")


def test_partition_normalizes():
    assert Partition((0, 2, 1, 0)).parts == (2, 1)
    assert Partition.parse("[1,1,0]") == Partition.column(2)
    with pytest.raises(ValueError):
        Partition((1, -1))


def test_monomial_examples():
    assert monomial_sym((), 3).raw() == {(0, 0, 0): 1}
    assert monomial_sym((1,), 1).raw() == {(1,): 1, (-1,): 1}
    assert monomial_sym((1, 1), 2).raw() == {(1, 1): 1, (1, -1): 1, (-1, 1): 1, (-1, -1): 1}


def test_E_examples():
    assert E_r(2, 0) == LaurentSym.constant(2, 1)
    assert expand_in_monomial(E_r(2, 2)) == {(1, 1): 1, (): 2}
    assert E_interp(3, 0) == LaurentSym.constant(3, 1)
    assert E_interp(1, 1) == monomial_sym((1,), 1) - LaurentSym.constant(1, a + 1 / a)
    want = monomial_sym((1,), 2) - LaurentSym.constant(2, a + 1 / a + t * a + 1 / (t * a))
    assert E_interp(2, 1) == want


def test_product_of_degree_one():
    # the constant term counts the four pairs x_i^e x_i^-e, i = 1, 2
    m1 = monomial_sym((1,), 2)
    assert expand_in_monomial(m1 * m1) == {(2,): 1, (1, 1): 2, (): 4}


def test_dominance():
    assert dominance_leq((1, 1), (2, 0))
    assert not dominance_leq((2, 0), (1, 1))
    below = partitions_below((2, 1), 3)
    assert below[0] == Partition((2, 1)) and Partition(()) in below


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_E_r_binomial_form(n):
    for r in range(n + 1):
        assert E_r(n, r) == E_r_binomial(n, r)


def test_from_raw_rejects_non_invariant():
    with pytest.raises(ValueError):
        LaurentSym.from_raw(2, {(1, 0): Fraction(1)})


# ---------------------------------------------------------------- properties

parts2 = st.tuples(st.integers(0, 3), st.integers(0, 3)).map(lambda p: Partition(p))
coeff = st.fractions(min_value=-4, max_value=4, max_denominator=5)
syms2 = st.dictionaries(parts2, coeff, max_size=3).map(lambda d: LaurentSym(2, d))


@given(syms2, syms2)
def test_products_stay_invariant(p, q):
    prod = p * q
    assert is_invariant(prod.raw())
    assert LaurentSym.from_raw(2, prod.raw()) == prod


@given(syms2, syms2, syms2)
def test_symmetric_ring_axioms(p, q, r):
    assert mul(p, q) == mul(q, p)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(syms2)
def test_raw_round_trip(p):
    assert LaurentSym.from_raw(2, p.raw()) == p


@given(st.integers(1, 3), st.integers(0, 3))
def test_E_interp_is_invariant(n, r):
    if r <= n:
        assert is_invariant(E_interp(n, r, Fraction(2, 3), Fraction(5, 7)).raw())
