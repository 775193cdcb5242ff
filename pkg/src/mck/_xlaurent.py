"""Small helpers for Laurent polynomials in x_1..x_n stored as packed-key dicts."""

from .exactalg import kernel
from .exactalg.packing import decode, encode


def binomial(pairs):
    """Sum of coeff * x^weight over (weight, coeff) pairs."""
    out = {}
    for weight, coeff in pairs:
        k = encode(weight)
        out[k] = out.get(k, 0) + coeff
    return {k: v for k, v in out.items() if v}


def unit_vector(n, entries):
    w = [0] * n
    for i, e in entries:
        w[i] += e
    return tuple(w)


def product(polys):
    out = {0: 1}
    for p in polys:
        out = kernel.mul(out, p)
    return out


def weyl_denominator_bc(n):
    """prod_i (1 - x_i^2) prod_(i<j) (1 - x_i x_j)(1 - x_i/x_j)."""
    zero = (0,) * n
    factors = [binomial([(zero, 1), (unit_vector(n, [(i, 2)]), -1)]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            factors.append(binomial([(zero, 1), (unit_vector(n, [(i, 1), (j, 1)]), -1)]))
            factors.append(binomial([(zero, 1), (unit_vector(n, [(i, 1), (j, -1)]), -1)]))
    return product(factors)


def vandermonde(n):
    """prod_(i<j) (x_i - x_j)."""
    factors = []
    for i in range(n):
        for j in range(i + 1, n):
            factors.append(binomial([(unit_vector(n, [(i, 1)]), 1), (unit_vector(n, [(j, 1)]), -1)]))
    return product(factors)


def move_first(poly, n, target, sign=1):
    """Image under x_1 -> x_target^sign, with x_2..x_n filling the other slots in order."""
    order = [k for k in range(n) if k != target]
    out = {}
    for key, c in poly.items():
        e = decode(key, n) if key else (0,) * n
        w = [0] * n
        w[target] = sign * e[0]
        for slot, val in zip(order, e[1:]):
            w[slot] = val
        out[encode(w)] = c
    return out


def to_raw(poly, n):
    zero = (0,) * n
    return {decode(k, n) if k else zero: c for k, c in poly.items()}
