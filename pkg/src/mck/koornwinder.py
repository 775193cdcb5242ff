"""Koornwinder operator, a brute-force eigenpolynomial solver and the
explicit one-column formulas.

The operator is used in the scaled form ``alpha * t^(n-1) * D`` with
``alpha^2 = abcd/q`` so that every quantity stays rational.  Parameters may
be exact ``Fraction`` values (fast, used by the solver) or ``RationalExpr``
symbols.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ._xlaurent import binomial, move_first, product, to_raw, unit_vector, weyl_denominator_bc
from .exactalg import IDENTITY, RationalExpr, SpecField, kernel, substitute, var
from .exactalg.packing import encode
from .qseries import qpoch, total
from .symfunc import (
    E_interp,
    E_r,
    LaurentSym,
    Partition,
    monomial_sym,
    partitions_below,
)
from .transition import (
    B_coeff,
    Btilde_coeff,
    C_coeff,
    e_general,
    hl_limit_B,
    interp_coefficient,
    kostka,
)


@dataclass(frozen=True)
class KoornwinderParams:
    a: object
    b: object
    c: object
    d: object
    q: object
    t: object

    @property
    def alpha_sq(self):
        return self.a * self.b * self.c * self.d / self.q

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.q, self.t)

    @classmethod
    def symbolic(cls) -> "KoornwinderParams":
        return cls(*(var(v) for v in "abcdqt"))

    @classmethod
    def random(cls, seed: int = 0, n: int = 3, height: int = 50, column_type: bool = False):
        """Seeded draw of exact rationals avoiding the obvious degeneracies.

        With ``column_type`` the draw satisfies b = -a and d = -c.
        """
        rng = random.Random(seed)
        while True:
            vals = [Fraction(rng.choice((1, -1)) * rng.randint(1, height), rng.randint(1, height)) for _ in range(6)]
            if column_type:
                vals[1], vals[3] = -vals[0], -vals[2]
            params = cls(*vals)
            if params.nondegenerate(n):
                return params

    def nondegenerate(self, n: int) -> bool:
        a, b, c, d, q, t = self.as_tuple()
        if any(v in (0, 1, -1) for v in (a, b, c, d, q, t)):
            return False
        span = 2 * n + 2
        for i in range(-span, span + 1):
            for j in range(-span, span + 1):
                if (i or j) and q ** i * t ** j == 1:
                    return False
        for x in (a * b, a * c, a * d, b * c, b * d, c * d, a * b * c * d):
            for j in range(-span, span + 1):
                if x * t ** j == 1:
                    return False
        return True


def column_params(a, c, q, t) -> KoornwinderParams:
    """The (a, -a, c, -c) degeneration."""
    return KoornwinderParams(a, -a, c, -c, q, t)


# ---------------------------------------------------------------- operator

def apply_D_scaled(p: LaurentSym, params: KoornwinderParams) -> LaurentSym:
    """alpha t^(n-1) D applied to p, as an exact symmetric Laurent polynomial."""
    n = p.n
    if n == 0 or p.is_zero():
        return LaurentSym(n)
    a, b, c, d, q, t = params.as_tuple()
    raw = p.raw()
    zero = (0,) * n
    x1 = unit_vector(n, [(0, 1)])

    qpow = {}

    def qp(e):
        if e not in qpow:
            qpow[e] = q ** e
        return qpow[e]

    # (T_{q,x_1} - 1) p
    diff = {}
    for w, cf in raw.items():
        if w[0]:
            diff[encode(w)] = cf * (qp(w[0]) - 1)
    if not diff:
        return LaurentSym(n)

    num = [binomial([(zero, 1), (x1, -par)]) for par in (a, b, c, d)]
    den = [binomial([(zero, 1), (unit_vector(n, [(0, 2)]), -1)])]
    for j in range(1, n):
        num.append(binomial([(zero, 1), (unit_vector(n, [(0, 1), (j, 1)]), -t)]))
        num.append(binomial([(zero, 1), (unit_vector(n, [(0, 1), (j, -1)]), -t)]))
        den.append(binomial([(zero, 1), (unit_vector(n, [(0, 1), (j, 1)]), -1)]))
        den.append(binomial([(zero, 1), (unit_vector(n, [(0, 1), (j, -1)]), -1)]))
    head = kernel.mul(product(num), diff)
    # invariance under x_1 -> 1/x_1 makes (1 - q x_1^2) divide the head exactly
    head = kernel.divexact(head, binomial([(zero, 1), (unit_vector(n, [(0, 2)]), -q)]), False)
    if head is None:
        raise ArithmeticError("q-shift factor did not cancel: input is not W_n-invariant")
    den1 = product(den)
    delta = weyl_denominator_bc(n)
    acc = {}
    for target in range(n):
        for sign in (1, -1):
            img_den = move_first(den1, n, target, sign)
            cof = kernel.divexact(delta, img_den, False)
            if cof is None:
                raise ArithmeticError("operator denominator does not divide the Weyl denominator")
            kernel.add_into(acc, kernel.mul(move_first(head, n, target, sign), cof))
    out = kernel.divexact(acc, delta, False)
    if out is None:
        raise ArithmeticError("x-denominators of the operator did not cancel")
    return LaurentSym.from_raw(n, to_raw(out, n))


def eigenvalue_scaled(lam, params: KoornwinderParams, n: int):
    """alpha t^(n-1) d_lambda."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    a2, q, t = params.alpha_sq, params.q, params.t
    out = []
    for j, part in enumerate(lam.padded(n), start=1):
        x = t ** (n - j)
        out.append(t ** (n - 1) * (a2 * x * q ** part + q ** (-part) / x - a2 * x - 1 / x))
    return total(out) if out else 0


def _column_step(lam, n, params, cache):
    mu = Partition(tuple(lam))
    if mu not in cache:
        cache[mu] = apply_D_scaled(monomial_sym(mu, n), params)
    return cache[mu]


def oracle_P(lam, n: int, params: KoornwinderParams, check: bool = True) -> LaurentSym:
    """The monic eigenpolynomial m_lam + lower terms, by a triangular solve."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    basis = partitions_below(lam, n)
    index = {mu: k for k, mu in enumerate(basis)}
    energy = eigenvalue_scaled(lam, params, n)
    cache = {}
    columns = {}
    for mu in basis:
        img = _column_step(mu, n, params, cache)
        stray = [nu for nu in img.coeffs if nu not in index]
        if stray:
            raise ArithmeticError(f"operator image of m{mu} leaves the dominance ideal: {stray}")
        columns[mu] = img
    coeffs = {lam: Fraction(1) if not isinstance(energy, RationalExpr) else RationalExpr(1)}
    for nu in basis[1:]:
        rhs = total([columns[mu].coefficient(nu) * coeffs[mu] for mu in coeffs if columns[mu].coefficient(nu)])
        gap = energy - columns[nu].coefficient(nu)
        if not gap:
            raise ArithmeticError(f"eigenvalue collision between {lam} and {nu}")
        value = rhs / gap
        if value:
            coeffs[nu] = value
    out = LaurentSym(n, coeffs)
    if check:
        residual = apply_D_scaled(out, params) - out.scale(energy)
        if not residual.is_zero():
            raise ArithmeticError("eigen-equation residual is nonzero")
    return out


def eigen_residual(p: LaurentSym, lam, params: KoornwinderParams) -> LaurentSym:
    return apply_D_scaled(p, params) - p.scale(eigenvalue_scaled(lam, params, p.n))


# ---------------------------------------------------------------- one-column formulas

def _qp(z, base, k):
    return qpoch(z, base, k)


def c_even(k: int, l: int, s, params: KoornwinderParams):
    """The even coefficient family of the fourfold formula (with the 1 - s/t pole cancelled)."""
    a, c, t = params.a, params.c, params.t
    t2 = t * t
    a2, c2 = a * a, c * c
    head = (
        _qp(t * c2 / a2, t2, k) * _qp(s * c2 * t, t2, k) * _qp(s * s * c2 * c2 / t2, t2, k)
        / (_qp(t2, t2, k) * _qp(s * c2 / t, t2, k) * _qp(s * s * a2 * c2 / t, t2, k))
    )
    span = 2 * k + l
    if span == 0:
        ratio = 1
    else:
        ratio = _qp(s, t, span - 1) * (1 - s * t ** (2 * k + 2 * l - 1))
    tail = _qp(1 / c2, t, l) * ratio / (_qp(t, t, l) * _qp(s * c2, t, span))
    return head * tail * a2 ** k * c2 ** l


def c_odd(i: int, j: int, s, params: KoornwinderParams):
    """The odd coefficient family of the fourfold formula; the half-integer
    pair (x t^(-3/2);t)(-x t^(-3/2);t) is folded into (x^2 t^(-3);t^2)."""
    a, b, c, d, t = params.a, params.b, params.c, params.d, params.t
    sac = s * a * c
    m = i + j
    left = _qp(-a / b, t, i) * _qp(s * c * d / t, t, i) / (_qp(t, t, i) * _qp(-sac / t, t, i))
    mid = (
        _qp(s, t, m) * _qp(-sac / t, t, m) * _qp(sac * sac / t ** 3, t, m)
        / (_qp(s * s * a * b * c * d / t ** 2, t, m) * _qp(sac * sac / t ** 3, t * t, m))
    )
    right = _qp(-c / d, t, j) * _qp(s * a * b / t, t, j) / (_qp(t, t, j) * _qp(-sac / t, t, j))
    return left * mid * right * b ** i * d ** j


def _E(n, m):
    return E_r(n, m)


def P_one_column_fourfold(n: int, r: int, params: KoornwinderParams) -> LaurentSym:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    t = params.t
    s0 = t ** (n - r + 1)
    out = LaurentSym(n)
    for i in range(r + 1):
        for j in range(r + 1 - i):
            odd = c_odd(i, j, s0, params)
            if not odd:
                continue
            sign = -1 if (i + j) % 2 else 1
            s1 = t ** (n - r + 1 + i + j)
            for k in range((r - i - j) // 2 + 1):
                for l in range((r - i - j - 2 * k) // 2 + 1):
                    coeff = sign * c_even(k, l, s1, params) * odd
                    out = out + _E(n, r - 2 * k - 2 * l - i - j).scale(coeff)
    return out


def P_one_column_twofold(n: int, r: int, params: KoornwinderParams) -> LaurentSym:
    """The b = -a, d = -c degeneration: only the even family survives."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    s_val = params.t ** (n - r + 1)
    out = LaurentSym(n)
    for k in range(r // 2 + 1):
        for l in range((r - 2 * k) // 2 + 1):
            out = out + _E(n, r - 2 * k - 2 * l).scale(c_even(k, l, s_val, params))
    return out


def _spec_value(e, spec):
    return substitute(e, spec) if spec is not None and spec.mapping else e


def P_one_column_via_E(n: int, r: int, spec: SpecField = IDENTITY) -> LaurentSym:
    """sum_j B(t^(n-r+1), j) E_(r-2j), coefficients in Q(a^2, c^2, t) or its image under spec."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    out = LaurentSym(n)
    for j in range(r // 2 + 1):
        out = out + _E(n, r - 2 * j).scale(_spec_value(B_coeff(n - r, j), spec))
    return out


def P_one_column_via_C(n: int, r: int, spec: SpecField = IDENTITY) -> LaurentSym:
    """sum_j C(t^(n-r+1), j) m_(1^(r-2j))."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    return LaurentSym(
        n, {Partition.column(r - 2 * j): _spec_value(C_coeff(n - r, j), spec) for j in range(r // 2 + 1)}
    )


def E_from_P(n: int, r: int, spec: SpecField = IDENTITY) -> LaurentSym:
    """sum_j Btilde(t^(n-r+1), j) P_(1^(r-2j)), with P built by P_one_column_via_E."""
    out = LaurentSym(n)
    for j in range(r // 2 + 1):
        out = out + P_one_column_via_E(n, r - 2 * j, spec).scale(_spec_value(Btilde_coeff(n - r, j), spec))
    return out


def E_from_P_twofold(n: int, r: int, params: KoornwinderParams) -> dict:
    """Coefficients of P_(1^(r-2l-2k)) in E_r from the explicit double sum.

    Returns {r - 2l - 2k: coefficient}, summed over l and k.
    """
    a, c, t = params.a, params.c, params.t
    a2, c2, t2 = a * a, c * c, t * t
    s_val = t ** (n - r + 1)
    out = {}
    for l in range(r // 2 + 1):
        for k in range((r - 2 * l) // 2 + 1):
            ss = s_val * s_val
            coeff = (
                _qp(c2, t, l) / _qp(t, t, l)
                * _qp(s_val * t ** l, t, l + 2 * k) / _qp(s_val * t ** (l - 1) * c2, t, l + 2 * k)
                * _qp(a2 / (t * c2), t2, k) / _qp(t2, t2, k)
                * _qp(ss * t ** (4 * l - 2) * c2 * c2, t2, k) / _qp(ss * t ** (4 * l) * c2 * c2, t2, k)
                * _qp(ss * t ** (4 * l + 2 * k - 2) * c2 * c2, t2, k)
                / _qp(ss * t ** (4 * l + 2 * k - 3) * a2 * c2, t2, k)
                * (t * c2) ** k
            )
            key = r - 2 * l - 2 * k
            out[key] = out[key] + coeff if key in out else coeff
    return out


def scalar_spec(params: KoornwinderParams) -> SpecField:
    """Evaluation map sending a^2, c^2, t to the values carried by params."""
    return SpecField("point", {"a^2": params.a * params.a, "c^2": params.c * params.c, "t": params.t})


# ---------------------------------------------------------------- interpolation polynomials

def interp_transitions(n: int, r: int, params: KoornwinderParams) -> dict:
    """The three one-column transitions involving E_r(x;a|t).

    ``P_from_interp[l]`` is the coefficient of E_(r-l)(x;a|t) in P_(1^r),
    ``interp_from_P[l]`` that of P_(1^(r-l)) in E_r(x;a|t), and
    ``interp_from_E[m]`` that of E_(r-m)(x) in E_r(x;a|t).
    """
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    quad = (params.a, params.b, params.c, params.d)
    forward = [_at_t(interp_coefficient(n, r, l, quad), params) for l in range(r + 1)]
    backward = [_at_t(interp_coefficient(n, r, l, quad, inverse=True), params) for l in range(r + 1)]
    s_val = var("t") ** (n - r + 1)
    from_e = [(-1) ** m * _at_at(e_general(s_val, m), params) for m in range(r + 1)]
    return {"P_from_interp": forward, "interp_from_P": backward, "interp_from_E": from_e}


def _at_t(e, params):
    if isinstance(params.t, RationalExpr) and params.t == var("t"):
        return e
    return substitute(e, {"t": params.t})


def _at_at(e, params):
    mapping = {}
    if not (isinstance(params.t, RationalExpr) and params.t == var("t")):
        mapping["t"] = params.t
    if not (isinstance(params.a, RationalExpr) and params.a == var("a")):
        mapping["a"] = params.a
    return substitute(e, mapping) if mapping else e


def interp_from_E(n: int, r: int, params: KoornwinderParams) -> LaurentSym:
    coeffs = interp_transitions(n, r, params)["interp_from_E"]
    out = LaurentSym(n)
    for m, coeff in enumerate(coeffs):
        out = out + _E(n, r - m).scale(coeff)
    return out


def P_from_interp(n: int, r: int, params: KoornwinderParams) -> LaurentSym:
    coeffs = interp_transitions(n, r, params)["P_from_interp"]
    out = LaurentSym(n)
    for l, coeff in enumerate(coeffs):
        out = out + E_interp(n, r - l, params.a, params.t).scale(coeff)
    return out


# ---------------------------------------------------------------- Hall-Littlewood and Schur

def hall_littlewood_P(family: str, n: int, r: int) -> LaurentSym:
    """q -> 0 limit of the one-column (C_n,C_n) or (D_n,D_n) Macdonald polynomial."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    out = LaurentSym(n)
    for j in range(r // 2 + 1):
        out = out + _E(n, r - 2 * j).scale(hl_limit_B(family, n - r, j))
    return out


def schur_one_column(family: str, n: int, r: int) -> LaurentSym:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}")
    if family == "C":
        return _E(n, r) - _E(n, r - 2) if r >= 2 else _E(n, r)
    if family == "D":
        return _E(n, r)
    raise ValueError("family must be 'C' or 'D'")


def kostka_expansion(family: str, n: int, r: int) -> LaurentSym:
    """sum_j K(t) P^HL_(1^(r-2j)); agrees with schur_one_column."""
    out = LaurentSym(n)
    for j in range(r // 2 + 1):
        out = out + hall_littlewood_P(family, n, r - 2 * j).scale(kostka(family, n, r, j))
    return out
