"""W_n-invariant Laurent polynomials in the monomial basis m_lambda.

A ``LaurentSym`` stores one coefficient per dominant weight (a partition of
length at most n).  The raw view expands every orbit into individual
monomials; it is used for products, for the q-difference operator and for
invariance checks.  Coefficients may be ``Fraction`` or ``RationalExpr``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Iterable, Mapping

from .exactalg import RationalExpr, SpecField, substitute


@dataclass(frozen=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        parts = tuple(sorted(parts, reverse=True))
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def column(cls, r: int) -> "Partition":
        return cls((1,) * r)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()[]")
        return cls(tuple(int(p) for p in text.split(",") if p.strip()))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def padded(self, n: int) -> tuple:
        if len(self.parts) > n:
            raise ValueError(f"partition {self.parts} has more than {n} parts")
        return self.parts + (0,) * (n - len(self.parts))

    def partial_sums(self, n: int) -> tuple:
        out, run = [], 0
        for p in self.padded(n):
            run += p
            out.append(run)
        return tuple(out)

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def dominance_leq(mu, lam) -> bool:
    """Partial sums of mu never exceed those of lam (weights may differ)."""
    mu, lam = _as_partition(mu), _as_partition(lam)
    n = max(len(mu), len(lam))
    return all(x <= y for x, y in zip(mu.partial_sums(n), lam.partial_sums(n)))


def partitions_below(lam, n: int) -> list:
    """All mu with at most n parts and mu <= lam, in decreasing linear order."""
    lam = _as_partition(lam)
    top = lam.partial_sums(n)
    out = []

    def grow(prefix, run, cap):
        k = len(prefix)
        if k == n:
            out.append(Partition(tuple(prefix)))
            return
        for p in range(min(cap, top[k] - run), -1, -1):
            prefix.append(p)
            grow(prefix, run + p, p)
            prefix.pop()

    grow([], 0, lam.parts[0] if lam.parts else 0)
    out.sort(key=lambda p: p.partial_sums(n), reverse=True)
    return out


@lru_cache(maxsize=None)
def orbit(weight: tuple) -> tuple:
    """Distinct images of an exponent vector under permutations and sign flips."""
    seen = set()
    for perm in set(permutations(weight)):
        slots = [i for i, e in enumerate(perm) if e]
        for signs in product((1, -1), repeat=len(slots)):
            w = list(perm)
            for i, sg in zip(slots, signs):
                w[i] *= sg
            seen.add(tuple(w))
    return tuple(sorted(seen, reverse=True))


def dominant(weight: tuple) -> tuple:
    return tuple(sorted((abs(e) for e in weight), reverse=True))


def _is_dominant(weight: tuple) -> bool:
    return all(x >= y for x, y in zip(weight, weight[1:])) and (not weight or weight[-1] >= 0)


def _nonzero(c) -> bool:
    return bool(c)


@lru_cache(maxsize=None)
def _structure(lam: tuple, mu: tuple) -> tuple:
    """m_lam * m_mu as ((nu, multiplicity), ...), over padded weights."""
    counts = Counter()
    mu_orbit = orbit(mu)
    for alpha in orbit(lam):
        for beta in mu_orbit:
            nu = tuple(x + y for x, y in zip(alpha, beta))
            if _is_dominant(nu):
                counts[nu] += 1
    return tuple(counts.items())


class LaurentSym:
    """Finite sum of coefficient * m_lambda in n variables."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping | None = None):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        out = {}
        for lam, c in (coeffs or {}).items():
            lam = _as_partition(lam)
            if len(lam) > n:
                raise ValueError(f"partition {lam} has more than {n} parts")
            if _nonzero(c):
                prev = out.get(lam)
                c = c if prev is None else prev + c
                if _nonzero(c):
                    out[lam] = c
                else:
                    del out[lam]
        self.coeffs = out

    # construction -----------------------------------------------------

    @classmethod
    def constant(cls, n: int, value) -> "LaurentSym":
        return cls(n, {Partition(): value})

    @classmethod
    def from_raw(cls, n: int, raw: Mapping, check: bool = True) -> "LaurentSym":
        """Collect dominant monomials; with check, insist on W_n invariance."""
        coeffs = {Partition(w): c for w, c in raw.items() if _is_dominant(w) and _nonzero(c)}
        out = cls(n, coeffs)
        if check:
            back = out.raw()
            nonzero = {w for w, c in raw.items() if _nonzero(c)}
            if set(back) != nonzero or any(_nonzero(back[w] - raw[w]) for w in back):
                raise ValueError("raw Laurent polynomial is not W_n-invariant")
        return out

    def raw(self) -> dict:
        out = {}
        for lam, c in self.coeffs.items():
            for w in orbit(lam.padded(self.n)):
                out[w] = c
        return out

    # arithmetic -------------------------------------------------------

    def _check(self, other: "LaurentSym"):
        if self.n != other.n:
            raise ValueError(f"variable counts differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, LaurentSym):
            other = LaurentSym.constant(self.n, other)
        self._check(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out[lam] + c if lam in out else c
        return LaurentSym(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSym(self.n, {lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "LaurentSym":
        return LaurentSym(self.n, {lam: c * factor for lam, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentSym):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def map(self, fn) -> "LaurentSym":
        return LaurentSym(self.n, {lam: fn(c) for lam, c in self.coeffs.items()})

    def specialize(self, spec: SpecField) -> "LaurentSym":
        return self.map(lambda c: substitute(c, spec) if isinstance(c, RationalExpr) else c)

    # inspection -------------------------------------------------------

    def coefficient(self, lam):
        return self.coeffs.get(_as_partition(lam), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, LaurentSym):
            other = LaurentSym.constant(self.n, other)
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def support(self) -> list:
        return sorted(self.coeffs, key=lambda p: p.partial_sums(self.n), reverse=True)

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for lam in self.support():
            c = self.coeffs[lam]
            body = c.text() if isinstance(c, RationalExpr) else str(c)
            if " " in body:
                body = f"({body})"
            parts.append(f"{body} * m{lam}")
        return " + ".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"LaurentSym({self.n}, {self.text()})"


def mul(p: LaurentSym, q: LaurentSym) -> LaurentSym:
    p._check(q)
    n = p.n
    out = {}
    for lam, c1 in p.coeffs.items():
        for mu, c2 in q.coeffs.items():
            c = c1 * c2
            for nu, k in _structure(lam.padded(n), mu.padded(n)):
                nu = Partition(nu)
                out[nu] = out[nu] + c * k if nu in out else c * k
    return LaurentSym(n, out)


def monomial_sym(lam, n: int) -> LaurentSym:
    lam = _as_partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} needs more than {n} variables")
    return LaurentSym(n, {lam: Fraction(1)})


def expand_in_monomial(p: LaurentSym) -> dict:
    return {lam.parts: c for lam, c in p.coeffs.items()}


def _raw_mul(x: dict, y: dict) -> dict:
    out = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            w = tuple(a + b for a, b in zip(wx, wy))
            out[w] = out[w] + cx * cy if w in out else cx * cy
    return {w: c for w, c in out.items() if _nonzero(c)}


@lru_cache(maxsize=None)
def E_r(n: int, r: int) -> LaurentSym:
    """(-1)^r times the y^r coefficient of prod_i (1 - y x_i)(1 - y/x_i)."""
    if not 0 <= r <= 2 * n:
        raise ValueError(f"need 0 <= r <= {2 * n}, got {r}")
    # polynomial in y with raw Laurent coefficients, truncated at degree r
    series = [{(0,) * n: Fraction(1)}]
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        up, down = tuple(unit), tuple(-e for e in unit)
        zero = (0,) * n
        factor = [{zero: Fraction(1)}, {up: Fraction(-1), down: Fraction(-1)}, {zero: Fraction(1)}]
        nxt = [dict() for _ in range(min(len(series) + 2, r + 1))]
        for d1, s1 in enumerate(series):
            for d2, s2 in enumerate(factor):
                if d1 + d2 > r:
                    continue
                for w, c in _raw_mul(s1, s2).items():
                    tgt = nxt[d1 + d2]
                    tgt[w] = tgt.get(w, 0) + c
        series = nxt
    top = series[r] if r < len(series) else {}
    return LaurentSym.from_raw(n, {w: (-1) ** r * c for w, c in top.items()}, check=False)


def E_r_binomial(n: int, r: int) -> LaurentSym:
    """E_r as sum_k C(n - r + 2k, k) m_(1^(r-2k)), valid for 0 <= r <= n."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    return LaurentSym(n, {Partition.column(r - 2 * k): Fraction(comb(n - r + 2 * k, k)) for k in range(r // 2 + 1)})


def E_interp(n: int, r: int, a=None, t=None) -> LaurentSym:
    """Sum over i_1 < ... < i_r of prod_k <x_(i_k); t^(i_k - k) a>.

    Here <z; w> = z + 1/z - w - 1/w.  Variables are indexed from 1.
    """
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}, got {r}")
    a = RationalExpr.var("a") if a is None else a
    t = RationalExpr.var("t") if t is None else t
    zero = (0,) * n
    total = {}
    for chosen in combinations(range(1, n + 1), r):
        term = {zero: Fraction(1)}
        for k, i in enumerate(chosen, start=1):
            w = t ** (i - k) * a
            unit = [0] * n
            unit[i - 1] = 1
            factor = {tuple(unit): Fraction(1), tuple(-e for e in unit): Fraction(1), zero: -(w + 1 / w)}
            term = _raw_mul(term, factor)
        for key, c in term.items():
            total[key] = total[key] + c if key in total else c
    return LaurentSym.from_raw(n, total)


def is_invariant(raw: Mapping) -> bool:
    """Invariance of a raw Laurent polynomial under x1 <-> x2 and x1 -> 1/x1."""
    raw = {w: c for w, c in raw.items() if _nonzero(c)}
    swaps = [lambda w: (-w[0],) + w[1:]]
    if raw and len(next(iter(raw))) > 1:
        swaps.append(lambda w: (w[1], w[0]) + w[2:])
        swaps.append(lambda w: w[1:] + w[:1])
    for g in swaps:
        for w, c in raw.items():
            other = raw.get(g(w))
            if other is None or _nonzero(other - c):
                return False
    return True


def sum_syms(n: int, items: Iterable) -> LaurentSym:
    out = LaurentSym(n)
    for item in items:
        out = out + item
    return out
