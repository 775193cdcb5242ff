"""The compiled kernel and the pure-Python fallback must agree term for term."""

import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mck.exactalg import _kernel_py
from mck.exactalg.packing import decode, encode

compiled = pytest.importorskip("mck.exactalg._kernel")
IMPLS = [_kernel_py, compiled]

exps = st.tuples(*[st.integers(-4, 4)] * 3)
coeffs = st.one_of(
    st.integers(-50, 50).filter(bool),
    st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool),
)
polys = st.dictionaries(exps, coeffs, max_size=8).map(lambda d: {encode(e): c for e, c in d.items()})


def _box(*ps):
    vecs = [decode(k, 3) for p in ps for k in p]
    return [min(v[i] for v in vecs) for i in range(3)], [max(v[i] for v in vecs) for i in range(3)]


@given(exps)
def test_packing_round_trip(e):
    assert decode(encode(e), 3) == e


@given(polys, polys)
def test_mul_parity(a, b):
    assert compiled.mul(a, b) == _kernel_py.mul(a, b)


@given(polys, polys, coeffs)
def test_add_parity(a, b, k):
    assert compiled.add(a, b, k) == _kernel_py.add(a, b, k)
    left, right = dict(a), dict(a)
    compiled.add_into(left, b, k)
    _kernel_py.add_into(right, b, k)
    assert left == right


@given(polys, coeffs, exps)
def test_scale_shift_parity(a, k, e):
    assert compiled.scale(a, k) == _kernel_py.scale(a, k)
    assert compiled.shift(a, encode(e)) == _kernel_py.shift(a, encode(e))


@given(polys, polys)
def test_divexact_recovers_factor(f, g):
    if not f or not g:
        return
    f = {k: Fraction(v) for k, v in f.items()}
    n = _kernel_py.mul(f, g)
    if not n:
        return
    nlo, nhi = _box(n)
    flo, fhi = _box(f)
    lo = [x - y for x, y in zip(nlo, flo)]
    hi = [x - y for x, y in zip(nhi, fhi)]
    for impl in IMPLS:
        assert impl.divexact(n, f, False, lo, hi, 24) == g


def test_pure_backend_selected_by_environment():
    env = dict(os.environ, MCK_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from mck.exactalg import BACKEND; print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
