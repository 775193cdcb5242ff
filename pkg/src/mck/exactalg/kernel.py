"""Backend selection for the polynomial kernel.

The compiled module is used when it was built and ``MCK_PURE_PYTHON`` is not
set; otherwise the pure-Python fallback is loaded.  Both expose ``mul``,
``add``, ``add_into``, ``scale``, ``shift`` and ``divexact``.
"""

import os
from fractions import Fraction

from .packing import WIDTH, decode, nfields

if os.environ.get("MCK_PURE_PYTHON"):
    from . import _kernel_py as impl
    BACKEND = "python"
else:
    try:
        from . import _kernel as impl
        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as impl
        BACKEND = "python"

mul = impl.mul
add = impl.add
add_into = impl.add_into
scale = impl.scale
shift = impl.shift


def divexact(n, f, integral, nbox=None, fbox=None):
    """n/f when f divides n exactly in the Laurent ring, else None.

    Precomputed exponent boxes (over all NVARS fields) may be passed in.
    """
    if not n:
        return {}
    if nbox is None or fbox is None:
        nv = max(nfields(k) for k in (min(n), max(n), min(f), max(f)))
        nbox, fbox = _box(n, nv), _box(f, nv)
    (nlo, nhi), (flo, fhi) = nbox, fbox
    lo = [a - b for a, b in zip(nlo, flo)]
    hi = [a - b for a, b in zip(nhi, fhi)]
    if any(a > b for a, b in zip(lo, hi)):
        return None
    if not integral:
        # keep int / int exact
        f = {k: Fraction(v) if isinstance(v, int) else v for k, v in f.items()}
    return impl.divexact(n, f, integral, lo, hi, WIDTH)


def box(terms, nv):
    return _box(terms, nv)


def _box(terms, nv):
    it = iter(terms)
    lo = list(decode(next(it), nv))
    hi = list(lo)
    for k in it:
        for i, e in enumerate(decode(k, nv)):
            if e < lo[i]:
                lo[i] = e
            elif e > hi[i]:
                hi[i] = e
    return lo, hi
