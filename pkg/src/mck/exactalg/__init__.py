"""Exact arithmetic: rationals, sparse Laurent polynomials, rational expressions."""

from fractions import Fraction

from .expr import (
    ALPHABET,
    MultiPoly,
    RationalExpr,
    ZeroDivision,
    const,
    format_poly,
    sum_exprs,
    symbols,
    var,
)
from .kernel import BACKEND
from .spec import (
    IDENTITY,
    SpecField,
    SubstitutionError,
    parse,
    probably_zero,
    probably_zero_fn,
    random_point,
    substitute,
    substitute_scalar,
)

ExactRational = Fraction


def poly_arith(x, y, op: str) -> RationalExpr:
    x, y = RationalExpr(x), RationalExpr(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "ALPHABET", "BACKEND", "ExactRational", "IDENTITY", "MultiPoly", "RationalExpr",
    "SpecField", "SubstitutionError", "ZeroDivision", "const", "format_poly", "parse",
    "poly_arith", "probably_zero", "probably_zero_fn", "random_point", "substitute",
    "substitute_scalar", "sum_exprs", "symbols", "var",
]
