"""q-Pochhammer symbols, q-binomials, terminating basic hypergeometric sums
and ballot numbers.

Every function is generic over the scalar type: it accepts exact
``Fraction`` values for numeric work and ``RationalExpr`` values for
symbolic work, and returns the same kind of object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactalg import RationalExpr, sum_exprs, var


def _one_like(x):
    return RationalExpr(1) if isinstance(x, RationalExpr) else Fraction(1)


def _is_zero(x):
    return x.is_zero() if isinstance(x, RationalExpr) else x == 0


def total(values):
    values = list(values)
    if any(isinstance(v, RationalExpr) for v in values):
        return sum_exprs(values)
    return sum(values, Fraction(0))


def qpoch(z, q, k: int):
    """(z;q)_k, including negative k via the infinite-product quotient."""
    out = _one_like(z) * _one_like(q)
    if k >= 0:
        zq = z
        for _ in range(k):
            out = out * (1 - zq)
            zq = zq * q
        return out
    step = 1 / q
    zq = z * step
    for _ in range(-k):
        factor = 1 - zq
        if _is_zero(factor):
            raise ZeroDivisionError("vanishing factor in (z;q)_k with k < 0")
        out = out / factor
        zq = zq * step
    return out


def qpochs(zs: Sequence, q, k: int):
    """Product of (z;q)_k over the list zs."""
    out = _one_like(q)
    for z in zs:
        out = out * qpoch(z, q, k)
    return out


def qint(n: int, q):
    """[n]_q = (1-q^n)/(1-q)."""
    if n >= 0:
        return total(q ** i for i in range(n)) if n else q * 0
    return -total(q ** i for i in range(n, 0))


def qfact(n: int, q):
    out = _one_like(q)
    for k in range(1, n + 1):
        out = out * qint(k, q)
    return out


def qbinom(m: int, j: int, q):
    """Gaussian binomial via the product of [m-k+1]_q/[k]_q."""
    if j < 0 or j > m:
        raise ValueError(f"qbinom needs 0 <= j <= m, got m={m}, j={j}")
    out = _one_like(q)
    for k in range(1, j + 1):
        out = out * (1 - q ** (m - k + 1)) / (1 - q ** k)
    return out


def gen_binom(x, j: int):
    """x(x-1)...(x-j+1)/j! for any scalar or symbolic x."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    out = Fraction(1)
    for i in range(j):
        out = out * (x - i)
    return out / Fraction(_factorial(j))


def _factorial(j):
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


@dataclass(frozen=True)
class PhiSpec:
    """A terminating r+1 phi r series summed over indices 0..terms."""

    upper: Sequence
    lower: Sequence
    base: object
    argument: object
    terms: int = 0


def phi_sum(spec: PhiSpec):
    """Sum_{n<=terms} (upper;base)_n / ((base;base)_n (lower;base)_n) * arg^n."""
    base, z = spec.base, spec.argument
    term = _one_like(base)
    parts = [term]
    basepow = _one_like(base)
    for n in range(spec.terms):
        num = term * z
        for u in spec.upper:
            num = num * (1 - u * basepow)
        den = 1 - basepow * base
        for l in spec.lower:
            den = den * (1 - l * basepow)
        if _is_zero(den):
            raise ZeroDivisionError(f"lower parameter Pochhammer vanishes at index {n + 1}")
        term = num / den
        basepow = basepow * base
        parts.append(term)
    return total(parts)


def bibasic_phi(
    upper_q: Sequence, lower_q: Sequence, upper_p: Sequence, lower_p: Sequence,
    q, p, z, terms: int,
):
    """Bibasic series with a q-group (including (q;q)_n below) and a p-group."""
    parts = []
    for n in range(terms + 1):
        num = qpochs(upper_q, q, n) * qpochs(upper_p, p, n) * z ** n
        den = qpoch(q, q, n) * qpochs(lower_q, q, n) * qpochs(lower_p, p, n)
        if _is_zero(den):
            raise ZeroDivisionError(f"lower parameter Pochhammer vanishes at index {n}")
        parts.append(num / den)
    return total(parts)


def catalan_ballot(m: int, j: int) -> int:
    """(m+1)/(m+j+1) * C(m+2j, j)."""
    value = Fraction(m + 1, m + j + 1) * comb(m + 2 * j, j)
    assert value.denominator == 1
    return int(value)


def qballot(m: int, j: int, q=None, form: str = "ratio"):
    """q-ballot number [m+1]/[m+j+1] binom[m+2j, j]_q.

    ``form="difference"`` evaluates q^{-j}(binom[m+2j,j] - binom[m+2j,j-1])
    instead; the two agree identically.
    """
    q = var("q") if q is None else q
    if form == "ratio":
        return qint(m + 1, q) / qint(m + j + 1, q) * qbinom(m + 2 * j, j, q)
    if form == "difference":
        lower = qbinom(m + 2 * j, j - 1, q) if j else q * 0
        return (qbinom(m + 2 * j, j, q) - lower) / q ** j
    raise ValueError(f"unknown form {form!r}")
