"""Canonical factors for denominators.

Denominators are kept as products of primitive integer polynomials that are
not divisible by any variable.  Two-term polynomials are split into
cyclotomic pieces in a primitive monomial, which makes the factors that
arise from q-Pochhammer symbols irreducible and shared between expressions.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import kernel
from .packing import decode, encode

NVARS = 9


class Factor:
    __slots__ = ("terms", "_key", "_hash", "_powers", "_box")

    def __init__(self, terms):
        self.terms = terms
        self._key = tuple(sorted(terms.items()))
        self._hash = hash(self._key)
        self._powers = {1: terms}
        self._box = None

    @property
    def box(self):
        """Componentwise (min, max) exponent vectors."""
        if self._box is None:
            self._box = kernel.box(self.terms, NVARS)
        return self._box

    @property
    def span(self):
        lo, hi = self.box
        return [b - a for a, b in zip(lo, hi)]

    def __eq__(self, other):
        return isinstance(other, Factor) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Factor({self._key})"

    def power(self, k):
        got = self._powers.get(k)
        if got is None:
            half = self.power(k // 2)
            got = kernel.mul(half, half)
            if k % 2:
                got = kernel.mul(got, self.terms)
            self._powers[k] = got
        return got


def integer_content(terms):
    """Split a dict with rational coefficients into (content, primitive ints).

    The primitive part has positive coefficient at its largest key.
    """
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            d = c.denominator
            den = den * d // gcd(den, d)
    if den == 1:
        ints = {k: int(c) for k, c in terms.items()}
    else:
        ints = {k: int(c * den) for k, c in terms.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
        if g == 1:
            break
    if ints[max(ints)] < 0:
        g = -g
    if g != 1:
        ints = {k: c // g for k, c in ints.items()}
    return Fraction(g, den), ints


def monomial_content(terms):
    """Key of the componentwise-minimal monomial among the keys of terms."""
    lo = None
    for k in terms:
        e = decode(k, NVARS)
        lo = e if lo is None else tuple(min(x, y) for x, y in zip(lo, e))
    return encode(lo)


def normalize(terms):
    """Return (const, mono_key, primitive) with terms = const*x^mono*primitive."""
    m = monomial_content(terms)
    if m:
        terms = kernel.shift(terms, -m)
    c, prim = integer_content(terms)
    return c, m, prim


@lru_cache(maxsize=None)
def cyclotomic(n):
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _divide_univariate(num, cyclotomic(d))
    return tuple(num)


def _divide_univariate(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    return out


def _iroot(n, k):
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def _rational_root(r, k):
    p = _iroot(r.numerator, k)
    q = _iroot(r.denominator, k)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=1 << 16)
def split_binomial(k1, c1, k2, c2):
    """Factor c1*x^k1 + c2*x^k2 as (const, mono_key, tuple of Factors)."""
    if k2 < k1:
        k1, c1, k2, c2 = k2, c2, k1, c1
    step = decode(k2 - k1, NVARS)
    g = 0
    for e in step:
        g = gcd(g, e)
    base = encode(tuple(e // g for e in step))
    ratio = Fraction(c2) / Fraction(c1)
    mag = abs(ratio)
    e = 1
    w = mag
    for d in reversed(_divisors(g)):
        root = _rational_root(mag, d)
        if root is not None:
            e, w = d, root
            break
    stride = base * (g // e)
    if ratio < 0:
        orders = _divisors(e)
        pieces = [{0: 1, stride: -w}] + [
            _cyclotomic_at(d, w, stride) for d in orders if d > 1
        ]
    else:
        pieces = [_cyclotomic_at(d, w, stride) for d in _divisors(2 * e) if e % d]
    factors = []
    prod = {0: 1}
    for piece in pieces:
        _, _, prim = normalize(piece)
        factors.append(Factor(prim))
        prod = kernel.mul(prod, prim)
    orig = {k1: c1, k2: c2}
    lead_o, lead_p = max(orig), max(prod)
    const = Fraction(orig[lead_o]) / prod[lead_p]
    return const, lead_o - lead_p, tuple(factors)


def _cyclotomic_at(d, w, stride):
    out = {}
    for i, c in enumerate(cyclotomic(d)):
        if c:
            out[i * stride] = c * w ** i
    return out


def factor_poly(terms):
    """Split a Laurent polynomial into (const, mono_key, {Factor: exponent}).

    Monomials and binomials are factored completely; anything longer stays a
    single opaque factor.
    """
    if len(terms) == 1:
        (k, c), = terms.items()
        return Fraction(c), k, {}
    if len(terms) == 2:
        (k1, c1), (k2, c2) = terms.items()
        const, mono, parts = split_binomial(k1, c1, k2, c2)
        out = {}
        for f in parts:
            out[f] = out.get(f, 0) + 1
        return const, mono, out
    c, m, prim = normalize(terms)
    return c, m, {Factor(prim): 1}


def _merge(f, fac, e):
    e += f.get(fac, 0)
    if e:
        f[fac] = e
    else:
        f.pop(fac, None)


def refine(f):
    """Cancel between numerator and denominator factors that divide one another.

    Returns (const, mono_key, factors).  An opaque denominator factor such as
    1 + q + q^2 + q^3 is split against numerator factors 1 + q and 1 + q^2.
    """
    f = dict(f)
    c, m = Fraction(1), 0
    changed = True
    while changed:
        changed = False
        for den, a in [(x, -e) for x, e in f.items() if e < 0]:
            for num, b in [(x, e) for x, e in f.items() if e > 0]:
                if f.get(den, 0) >= 0 or f.get(num, 0) <= 0:
                    continue
                ds, ns = den.span, num.span
                if all(x >= y for x, y in zip(ds, ns)):
                    big, small, sign = den, num, -1
                elif all(x <= y for x, y in zip(ds, ns)):
                    big, small, sign = num, den, 1
                else:
                    continue
                quot = kernel.divexact(big.terms, small.terms, True, big.box, small.box)
                if quot is None:
                    continue
                k = min(a, b)
                qc, qm, qf = factor_poly(quot)
                # big^k = small^k * quot^k, and small cancels against itself
                _merge(f, den, k)
                _merge(f, num, -k)
                c *= qc ** (sign * k)
                m += qm * sign * k
                for fac, e in qf.items():
                    _merge(f, fac, sign * k * e)
                changed = True
                break
            if changed:
                break
    return c, m, f
