"""Packed integer keys for Laurent monomials.

An exponent vector (e_0, ..., e_{n-1}) maps to sum(e_i * 2**(WIDTH*i)).  The
map is linear, so monomial multiplication is key addition, and for
|e_i| < 2**(WIDTH-1) it is injective with integer order equal to the
lexicographic order that compares the highest field first.
"""

WIDTH = 24
_BASE = 1 << WIDTH
_HALF = 1 << (WIDTH - 1)
_MASK = _BASE - 1


def encode(exps):
    key = 0
    for e in reversed(exps):
        key = (key << WIDTH) + e
    return key


def unit(i):
    return 1 << (WIDTH * i)


def decode(key, n):
    out = []
    for _ in range(n):
        d = key & _MASK
        if d >= _HALF:
            d -= _BASE
        out.append(d)
        key = (key - d) >> WIDTH
    if key:
        raise ValueError("monomial key has more fields than requested")
    return tuple(out)


def field(key, i):
    """Exponent of variable i in key."""
    for _ in range(i):
        d = key & _MASK
        if d >= _HALF:
            d -= _BASE
        key = (key - d) >> WIDTH
    d = key & _MASK
    return d - _BASE if d >= _HALF else d


def nfields(key):
    """Number of low fields needed to hold key (0 for the unit monomial)."""
    n = 0
    while key:
        d = key & _MASK
        if d >= _HALF:
            d -= _BASE
        key = (key - d) >> WIDTH
        n += 1
    return n
