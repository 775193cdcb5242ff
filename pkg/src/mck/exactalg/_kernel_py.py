"""Pure-Python sparse Laurent polynomial kernel.

Polynomials are plain dicts mapping a packed exponent key to a nonzero
coefficient.  Keys are linear in the exponent vector, so multiplying two
monomials is integer addition of their keys, and integer comparison of keys
is a lexicographic monomial order.  The compiled module ``_kernel`` exposes
the same functions with the same semantics.
"""

from heapq import heappop, heappush


def mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def add(a, b, scale=1):
    """Return a + scale*b."""
    out = dict(a)
    get = out.get
    for k, c in b.items():
        v = get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def add_into(acc, b, scale=1):
    """In-place acc += scale*b."""
    get = acc.get
    for k, c in b.items():
        v = get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            del acc[k]


def scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def shift(a, m):
    if not m:
        return dict(a)
    return {k + m: v for k, v in a.items()}


def _inside(k, lo, hi, width):
    half = 1 << (width - 1)
    mask = (1 << width) - 1
    for a, b in zip(lo, hi):
        d = k & mask
        if d >= half:
            d -= mask + 1
        if d < a or d > b:
            return False
        k = (k - d) >> width
    return not k


def divexact(n, f, integral, lo, hi, width):
    """Quotient n/f if f divides n exactly in the Laurent ring, else None.

    With ``integral`` set, both inputs carry integer coefficients and f is
    primitive, so by Gauss's lemma every quotient coefficient is an integer
    and a non-integral step proves non-divisibility.
    """
    if not n:
        return {}
    lf = max(f)
    lc = f[lf]
    rest = [(k - lf, c) for k, c in f.items() if k != lf]
    r = dict(n)
    heap = [-k for k in r]
    heap.sort()
    q = {}
    while heap:
        k = -heappop(heap)
        c = r.pop(k, 0)
        if not c:
            continue
        qk = k - lf
        if not _inside(qk, lo, hi, width):
            return None
        if integral:
            if lc == 1:
                qc = c
            elif lc == -1:
                qc = -c
            else:
                qc, rem = divmod(c, lc)
                if rem:
                    return None
        else:
            qc = c / lc
        q[qk] = qc
        for dk, dc in rest:
            kk = qk + lf + dk
            old = r.get(kk)
            if old is None:
                r[kk] = -qc * dc
                heappush(heap, -kk)
            else:
                r[kk] = old - qc * dc
    return q

