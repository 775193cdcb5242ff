"""Substitution maps, scalar evaluation and randomized zero testing."""

from __future__ import annotations

import ast
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernel
from .expr import ALPHABET, _SLOT, RationalExpr, _coerce, sum_exprs
from .factors import NVARS, normalize
from .packing import decode, unit


class SubstitutionError(ZeroDivisionError):
    """A denominator vanishes under the requested substitution."""


class OddPowerError(SubstitutionError, ValueError):
    """A squared-variable key met an odd exponent."""


@dataclass(frozen=True)
class SpecField:
    """A substitution map from variables into expressions.

    Keys are variable names, or ``"a^2"``-style keys that substitute the
    square of a variable (only valid where that variable occurs to even
    powers).  Unmapped variables are left alone.
    """

    name: str
    mapping: dict = field(default_factory=dict)

    def __call__(self, e):
        return substitute(e, self)

    def describe(self) -> str:
        if not self.mapping:
            return self.name
        body = ", ".join(f"{k}->{_coerce(v).text()}" for k, v in self.mapping.items())
        return f"{self.name} ({body})"


IDENTITY = SpecField("generic")


def _plan(mapping):
    plan = {}
    for key, value in mapping.items():
        value = _coerce(value)
        if key.endswith("^2"):
            plan[_SLOT[key[:-2]]] = (2, value)
        else:
            plan[_SLOT[key]] = (1, value)
    return plan


def _monomial_image(exps, plan, cache):
    """Image of a monomial as (coeff, key) for monomial images, else an expr."""
    out = RationalExpr(1)
    for slot, e in enumerate(exps):
        if not e or slot not in plan:
            continue
        step, value = plan[slot]
        if e % step:
            name = next(v for v, s in _SLOT.items() if s == slot)
            raise OddPowerError(f"odd power of {name} cannot be specialized via {name}^2")
        k = e // step
        if value.is_zero():
            if k < 0:
                raise SubstitutionError("vanishing denominator: variable mapped to 0")
            return RationalExpr(0)
        got = cache.get((slot, k))
        if got is None:
            got = cache[(slot, k)] = value ** k
        out = out * got
    return out


def _image(terms, mono, plan, cache):
    """Image of mono * sum(terms) under the plan."""
    kept_mask = [slot not in plan for slot in range(NVARS)]
    if all(v.is_monomial() or v.is_zero() for _, v in plan.values()):
        out = {}
        for k, c in terms.items():
            exps = decode(k + mono, NVARS)
            img = _monomial_image(exps, plan, cache)
            if img.is_zero():
                continue
            key = img._m + sum(
                e * unit(slot) for slot, e in enumerate(exps) if kept_mask[slot] and e
            )
            kernel.add_into(out, {key: img._c * c})
        return RationalExpr.from_terms(out)
    parts = []
    for k, c in terms.items():
        exps = decode(k + mono, NVARS)
        img = _monomial_image(exps, plan, cache)
        keep = sum(e * unit(slot) for slot, e in enumerate(exps) if kept_mask[slot] and e)
        parts.append(img * RationalExpr._make(Fraction(c), keep, {0: 1}, {}, True))
    return sum_exprs(parts)


def substitute(e, spec) -> RationalExpr:
    """Exact image of e; raises SubstitutionError if a denominator vanishes.

    Squared keys such as ``a^2`` need even exponents.  Cyclotomic factors can
    carry odd exponents even when the whole expression is even, so those
    factors are multiplied out together before they are mapped.
    """
    e = _coerce(e).reduced()
    mapping = spec.mapping if isinstance(spec, SpecField) else spec
    if e.is_zero() or not mapping:
        return e
    plan = _plan(mapping)
    cache = {}
    pc, pm, prim = normalize(e._p)
    mono = e._m + pm
    out = RationalExpr(e._c * pc)
    odd_num, odd_den = {0: 1}, {0: 1}
    try:
        out = out * _image(prim, 0, plan, cache)
    except OddPowerError:
        odd_num = prim
    for fac, k in e._f.items():
        try:
            img = _image(fac.terms, 0, plan, cache)
        except OddPowerError:
            if k > 0:
                odd_num = kernel.mul(odd_num, fac.power(k))
            else:
                odd_den = kernel.mul(odd_den, fac.power(-k))
            continue
        if img.is_zero():
            if k < 0:
                raise SubstitutionError("vanishing denominator under substitution")
            return RationalExpr(0)
        out = out * img ** k
    if len(odd_num) > 1 or len(odd_den) > 1:
        nc, nm, odd_num = normalize(odd_num)
        dc, dm, odd_den = normalize(odd_den)
        mono += nm - dm
        out = out * (nc / dc)
        den_img = _image(odd_den, 0, plan, cache)
        if den_img.is_zero():
            raise SubstitutionError("vanishing denominator under substitution")
        out = out * _image(odd_num, 0, plan, cache) / den_img
    return (out * _image({mono: 1}, 0, plan, cache)).reduced()


def _scalar_poly(terms, values):
    """Evaluate a Laurent polynomial; integer coefficients use one common denominator."""
    decoded = [(decode(k, NVARS), c) for k, c in terms.items()]
    active = [i for i in range(NVARS) if any(e[i] for e, _ in decoded)]
    if any(not values[i] for i in active) or any(not isinstance(c, int) for _, c in decoded):
        return _scalar_poly_fractions(decoded, values)
    lo = {i: min(e[i] for e, _ in decoded) for i in active}
    hi = {i: max(e[i] for e, _ in decoded) for i in active}
    nums = {i: values[i].numerator for i in active}
    dens = {i: values[i].denominator for i in active}
    powers = {}

    def power(base, k):
        got = powers.get((base, k))
        if got is None:
            got = powers[(base, k)] = base ** k
        return got

    acc = 0
    for e, c in decoded:
        term = c
        for i in active:
            term *= power(nums[i], e[i] - lo[i]) * power(dens[i], hi[i] - e[i])
        acc += term
    out = Fraction(acc)
    for i in active:
        out *= Fraction(nums[i]) ** lo[i] / Fraction(dens[i]) ** hi[i]
    return out


def _scalar_poly_fractions(decoded, values):
    acc = Fraction(0)
    for e, c in decoded:
        term = Fraction(c)
        for slot, k in enumerate(e):
            if k:
                term *= values[slot] ** k
        acc += term
    return acc


def substitute_scalar(e, values: dict) -> Fraction:
    """Evaluate at exact scalar values for every variable that occurs."""
    e = _coerce(e)
    if e.is_zero():
        return Fraction(0)
    slots = [None] * NVARS
    for name, v in values.items():
        slots[_SLOT[name]] = Fraction(v)
    needed = e.variables()
    missing = [v for v in needed if slots[_SLOT[v]] is None]
    if missing:
        raise KeyError(f"no value for {missing}")
    slots = [Fraction(1) if s is None else s for s in slots]
    out = e._c * _scalar_poly({e._m: 1}, slots) * _scalar_poly(e._p, slots)
    for fac, k in e._f.items():
        v = _scalar_poly(fac.terms, slots)
        if not v:
            if k < 0:
                raise SubstitutionError("evaluation point is a pole")
            return Fraction(0)
        out *= v ** k
    return out


def random_point(names, rng, height=10**4):
    return {v: Fraction(rng.randint(1, height), rng.randint(1, height)) for v in names}


def probably_zero(e, trials: int = 20, seed: int = 0, height: int = 10**4) -> bool:
    """Randomized zero test; exact zero returns True without sampling."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    e = _coerce(e)
    if e.is_zero():
        return True
    names = sorted(e.variables())
    return probably_zero_fn(lambda p: substitute_scalar(e, p), names, trials, seed, height)


def probably_zero_fn(fn, names, trials: int = 20, seed: int = 0, height: int = 10**4) -> bool:
    """Randomized zero test of a function of scalar parameters.

    fn receives a dict name -> Fraction; points where it raises
    ZeroDivisionError are redrawn.
    """
    rng = random.Random(seed)
    done = 0
    misses = 0
    while done < trials:
        point = random_point(names, rng, height)
        try:
            value = fn(point)
        except ZeroDivisionError:
            misses += 1
            if misses > 50 * trials:
                raise
            continue
        if value != 0:
            return False
        done += 1
    return True


_BINOPS = {
    ast.Add: lambda x, y: x + y,
    ast.Sub: lambda x, y: x - y,
    ast.Mult: lambda x, y: x * y,
    ast.Div: lambda x, y: x / y,
}


def parse(text: str) -> RationalExpr:
    """Parse an arithmetic expression over the alphabet, e.g. '(1-q*t)/t^2'."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return RationalExpr(node.value)
        if isinstance(node, ast.Name) and node.id in ALPHABET:
            return RationalExpr.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = walk(node.right).constant_value()
                if exp is None or exp.denominator != 1:
                    raise ValueError("exponents must be integers")
                return walk(node.left) ** int(exp)
            op = _BINOPS.get(type(node.op))
            if op is not None:
                return op(walk(node.left), walk(node.right))
        raise ValueError(f"unsupported syntax in {text!r}")

    return walk(tree)
