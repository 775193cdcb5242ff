"""Exact rational expressions over a fixed variable alphabet.

A value is stored as ``const * x^mono * poly * prod(factor**e)``: ``poly`` is
an expanded Laurent polynomial with primitive integer coefficients and each
factor is a canonical primitive polynomial (see ``factors``) with a nonzero
integer exponent.  Negative exponents form the denominator.  Addition pulls
out the shared factors and expands only what differs, so products of
q-Pochhammer symbols never get multiplied out until they are summed.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import kernel
from .factors import NVARS, factor_poly, integer_content, normalize, refine
from .packing import decode, encode, unit

# display order (the order used for exponent vectors in text output)
ALPHABET = ("a", "b", "c", "d", "q", "t", "u", "s", "m")
# packing slot per variable: frequently used variables sit in low fields
_SLOT = {"t": 0, "a": 1, "c": 2, "q": 3, "s": 4, "b": 5, "d": 6, "u": 7, "m": 8}
_BY_SLOT = sorted(_SLOT, key=_SLOT.get)

_ONE = {0: 1}


class ZeroDivision(ZeroDivisionError):
    pass


def _mixed(f, g):
    """True if one factor dict has a numerator factor and the other a denominator factor."""
    return (any(e > 0 for e in f.values()) and any(e < 0 for e in g.values())) or (
        any(e < 0 for e in f.values()) and any(e > 0 for e in g.values())
    )


def _may_divide(p, dens, box=None) -> bool:
    """Could p divide one of the factors in dens?  Compares exponent spans only."""
    if not dens:
        return False
    lo, hi = box if box is not None else kernel.box(p, NVARS)
    span = [b - a for a, b in zip(lo, hi)]
    return any(all(x >= y for x, y in zip(fac.span, span)) for fac in dens)


def _is_one(p):
    return len(p) == 1 and p.get(0) == 1


class RationalExpr:
    __slots__ = ("_c", "_m", "_p", "_f", "_reduced", "_text", "_red")

    def __init__(self, value=0):
        if isinstance(value, RationalExpr):
            self._c, self._m, self._p, self._f = value._c, value._m, value._p, value._f
            self._reduced, self._text, self._red = value._reduced, value._text, value._red
            return
        c = Fraction(value)
        self._c = c
        self._m = 0
        self._p = _ONE if c else {}
        self._f = {}
        self._reduced = True
        self._text = None
        self._red = None

    @classmethod
    def _make(cls, c, m, p, f, reduced=False):
        out = object.__new__(cls)
        if not c or not p:
            out._c, out._m, out._p, out._f = Fraction(0), 0, {}, {}
            out._reduced = True
        else:
            out._c, out._m, out._p, out._f = c, m, p, f
            has_den = any(e < 0 for e in f.values())
            out._reduced = reduced or not has_den or (_is_one(p) and not any(e > 0 for e in f.values()))
        out._text = None
        out._red = None
        return out

    @classmethod
    def var(cls, name: str) -> "RationalExpr":
        return cls._make(Fraction(1), unit(_SLOT[name]), _ONE, {}, True)

    @classmethod
    def from_terms(cls, terms: dict) -> "RationalExpr":
        """Build from a packed-key Laurent polynomial with rational coefficients."""
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return cls(0)
        if len(terms) <= 2:
            c, m, f = factor_poly(terms)
            return cls._make(c, m, _ONE, f, True)
        c, p = integer_content(terms)
        return cls._make(c, 0, p, {}, True)

    @classmethod
    def monomial(cls, coeff, exps: dict) -> "RationalExpr":
        key = sum(e * unit(_SLOT[v]) for v, e in exps.items())
        return cls._make(Fraction(coeff), key, _ONE, {}, True)

    # ------------------------------------------------------------------
    # structure

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return self.constant_value() is not None

    def constant_value(self):
        """The value as a Fraction if the expression is a constant, else None."""
        if not self._c:
            return Fraction(0)
        if self._m or self._f or not _is_one(self._p):
            r = self.reduced()
            if r._m or r._f or not _is_one(r._p):
                return None
            return r._c
        return self._c

    def is_monomial(self) -> bool:
        return bool(self._c) and not self._f and _is_one(self._p)

    def variables(self) -> set:
        keys = [self._m, *self._p]
        for f in self._f:
            keys.extend(f.terms)
        used = set()
        for k in keys:
            for i, e in enumerate(decode(k, NVARS)):
                if e:
                    used.add(_BY_SLOT[i])
        return used

    def reduced(self) -> "RationalExpr":
        """Cancel every denominator factor that divides the expanded part."""
        if self._reduced:
            return self
        if self._red is not None:
            return self._red
        p = self._p
        pbox = None
        f = dict(self._f)
        for fac, e in self._f.items():
            while e < 0 and not _is_one(p):
                if pbox is None:
                    pbox = kernel.box(p, NVARS)
                q = kernel.divexact(p, fac.terms, True, pbox, fac.box)
                if q is None:
                    break
                p, pbox = q, None
                e += 1
            if e:
                f[fac] = e
            else:
                del f[fac]
        c, m = self._c, self._m
        if len(p) > 2 and _may_divide(p, [fac for fac, e in f.items() if e < 0], pbox):
            # let the expanded part take part in the factor refinement
            pc, pm, pf = factor_poly(p)
            c, m, p = c * pc, m + pm, _ONE
            for fac, e in pf.items():
                f[fac] = f.get(fac, 0) + e
            f = {fac: e for fac, e in f.items() if e}
        if any(e < 0 for e in f.values()) and any(e > 0 for e in f.values()):
            rc, rm, f = refine(f)
            c, m = c * rc, m + rm
        if len(p) <= 2:
            pc, pm, pf = factor_poly(p)
            c, m, p = c * pc, m + pm, _ONE
            for fac, e in pf.items():
                e += f.get(fac, 0)
                if e:
                    f[fac] = e
                else:
                    f.pop(fac, None)
        self._red = RationalExpr._make(c, m, p, f, True)
        return self._red

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sum_exprs((self, other))

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr._make(-self._c, self._m, self._p, self._f, self._reduced)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sum_exprs((self, -other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sum_exprs((other, -self))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalExpr._make(self._c * other, self._m, self._p, self._f, self._reduced)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return RationalExpr(0)
        f = dict(self._f)
        for fac, e in other._f.items():
            e += f.get(fac, 0)
            if e:
                f[fac] = e
            else:
                del f[fac]
        if _is_one(self._p):
            p = other._p
        elif _is_one(other._p):
            p = self._p
        else:
            p = kernel.mul(self._p, other._p)
        if _is_one(self._p):
            reduced = other._reduced and not any(e < 0 for e in self._f.values())
        elif _is_one(other._p):
            reduced = self._reduced and not any(e < 0 for e in other._f.values())
        else:
            reduced = False
        if reduced and _mixed(self._f, other._f):
            reduced = False
        return RationalExpr._make(self._c * other._c, self._m + other._m, p, f, reduced)

    __rmul__ = __mul__

    def inverse(self) -> "RationalExpr":
        if not self._c:
            raise ZeroDivision("division by the zero expression")
        if not self._reduced:
            return self.reduced().inverse()
        f = {fac: -e for fac, e in self._f.items()}
        c, m = 1 / self._c, -self._m
        if not _is_one(self._p):
            pc, pm, pf = factor_poly(self._p)
            c, m = c / pc, m - pm
            for fac, e in pf.items():
                e = f.get(fac, 0) - e
                if e:
                    f[fac] = e
                else:
                    f.pop(fac, None)
        return RationalExpr._make(c, m, _ONE, f)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivision("division by zero")
            return RationalExpr._make(self._c / other, self._m, self._p, self._f, self._reduced)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RationalExpr(1)
        if not self._c:
            return RationalExpr(0)
        p = self._p
        if not _is_one(p):
            out = {0: 1}
            base = p
            n = k
            while n:
                if n & 1:
                    out = kernel.mul(out, base)
                n >>= 1
                if n:
                    base = kernel.mul(base, base)
            p = out
        f = {fac: e * k for fac, e in self._f.items()}
        return RationalExpr._make(self._c ** k, self._m * k, p, f, self._reduced and _is_one(p))

    # ------------------------------------------------------------------
    # comparison

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._c == other._c and self._m == other._m and self._f == other._f and self._p == other._p:
            return True
        return (self - other).is_zero()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.text())

    def __bool__(self):
        return bool(self._c)

    # ------------------------------------------------------------------
    # expanded views

    def numden(self):
        """Return (num, den) as packed-key integer polynomials, den normalized.

        Both are true polynomials (no negative exponents); den has positive
        coefficient on its lowest term in display order and the pair has no
        common integer content or monomial factor.
        """
        r = self.reduced()
        if not r._c:
            return {}, {0: 1}
        num = dict(r._p)
        den = {0: 1}
        for fac, e in r._f.items():
            if e > 0:
                num = kernel.mul(num, fac.power(e))
            else:
                den = kernel.mul(den, fac.power(-e))
        nc, nm, num = normalize(num)
        dc, dm, den = normalize(den)
        c = r._c * nc / dc
        shift = decode(r._m + nm - dm, NVARS)
        up = encode(tuple(max(e, 0) for e in shift))
        down = encode(tuple(max(-e, 0) for e in shift))
        num = kernel.shift(num, up)
        den = kernel.shift(den, down)
        if _display_lead(den) < 0:
            c = -c
            den = {k: -v for k, v in den.items()}
        num = {k: v * c.numerator for k, v in num.items()}
        den = {k: v * c.denominator for k, v in den.items()}
        return num, den

    def text(self) -> str:
        if self._text is None:
            num, den = self.numden()
            ntxt = format_poly(num)
            if den == {0: 1}:
                self._text = ntxt
            else:
                dtxt = format_poly(den)
                if len(num) > 1:
                    ntxt = f"({ntxt})"
                if len(den) > 1 or "*" in dtxt:
                    dtxt = f"({dtxt})"
                self._text = f"{ntxt}/{dtxt}"
        return self._text

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"RationalExpr('{self.text()}')"

    def num_poly(self) -> "MultiPoly":
        return MultiPoly(self.numden()[0])

    def den_poly(self) -> "MultiPoly":
        return MultiPoly(self.numden()[1])

    def evaluate(self, values: dict):
        """Evaluate at exact scalars; values maps variable name -> Fraction."""
        from .spec import substitute_scalar

        return substitute_scalar(self, values)


class MultiPoly:
    """Expanded polynomial view: exponent vectors in display order -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, packed: dict):
        self.terms = {display_exponents(k): Fraction(v) for k, v in packed.items()}

    @property
    def variables(self):
        used = set()
        for e in self.terms:
            used.update(v for v, x in zip(ALPHABET, e) if x)
        return [v for v in ALPHABET if v in used]

    def __str__(self):
        return format_poly({_pack_display(e): c for e, c in self.terms.items()})


def display_exponents(key):
    e = decode(key, NVARS)
    return tuple(e[_SLOT[v]] for v in ALPHABET)


def _pack_display(exps):
    return sum(x * unit(_SLOT[v]) for v, x in zip(ALPHABET, exps))


def _display_lead(poly):
    k = min(poly, key=display_exponents)
    return poly[k]


def format_monomial(exps):
    parts = []
    for v, e in zip(ALPHABET, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(poly) -> str:
    if not poly:
        return "0"
    items = sorted(poly.items(), key=lambda kv: display_exponents(kv[0]))
    out = []
    for i, (k, c) in enumerate(items):
        mono = format_monomial(display_exponents(k))
        c = Fraction(c)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _coerce(x):
    if isinstance(x, RationalExpr):
        return x
    if isinstance(x, (int, Rational)):
        return RationalExpr(Fraction(x))
    return NotImplemented


def sum_exprs(items) -> RationalExpr:
    """Exact sum of many expressions with a single expansion pass."""
    terms = [_coerce(x) for x in items]
    terms = [x for x in terms if x._c]
    if not terms:
        return RationalExpr(0)
    if len(terms) == 1:
        return terms[0]
    common = None
    for x in terms:
        if common is None:
            common = dict(x._f)
            continue
        for fac in list(common):
            e = x._f.get(fac, 0)
            if e < common[fac]:
                common[fac] = e
        for fac, e in x._f.items():
            if fac not in common and e < 0:
                common[fac] = e
    common = {fac: e for fac, e in common.items() if e}
    first = terms[0]
    c0, m0 = first._c, first._m
    ratios = [x._c / c0 for x in terms]
    lcm = 1
    for r in ratios:
        d = r.denominator
        if d != 1:
            lcm = lcm * d // _gcd(lcm, d)
    acc = {}
    for x, r in zip(terms, ratios):
        rest = {0: 1}
        for fac, e in x._f.items():
            left = e - common.get(fac, 0)
            if left:
                rest = kernel.mul(rest, fac.power(left))
        for fac, e in common.items():
            if fac not in x._f:
                rest = kernel.mul(rest, fac.power(-e))
        poly = x._p if _is_one(rest) else kernel.mul(x._p, rest)
        if x._m != m0:
            poly = kernel.shift(poly, x._m - m0)
        kernel.add_into(acc, poly, int(r * lcm))
    if not acc:
        return RationalExpr(0)
    pc, p = integer_content(acc)
    c = c0 * pc / lcm
    if len(p) <= 2:
        fc, fm, ff = factor_poly(p)
        for fac, e in ff.items():
            e += common.get(fac, 0)
            if e:
                common[fac] = e
            else:
                common.pop(fac, None)
        return RationalExpr._make(c * fc, m0 + fm, _ONE, common, True)
    return RationalExpr._make(c, m0, p, common, False)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def var(name: str) -> RationalExpr:
    return RationalExpr.var(name)


def const(x) -> RationalExpr:
    return RationalExpr(Fraction(x))


def symbols(names: str):
    return tuple(var(n) for n in names.split())
