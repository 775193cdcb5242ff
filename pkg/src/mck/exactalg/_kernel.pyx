# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse Laurent polynomial kernel.

Same contract as ``_kernel_py``: dicts from packed exponent keys to nonzero
coefficients.  Coefficients stay Python objects (exact integers, fractions
or nested rational expressions); the gain comes from C-level loops and
direct dict API calls.
"""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from cpython.ref cimport PyObject
from heapq import heappop, heappush


def mul(dict a, dict b):
    cdef dict out = {}
    cdef object ka, ca, kb, cb, k, v
    cdef PyObject* slot
    cdef list items_b
    if len(a) > len(b):
        a, b = b, a
    items_b = list(b.items())
    for ka, ca in a.items():
        for kb, cb in items_b:
            k = ka + kb
            slot = PyDict_GetItem(out, k)
            if slot is NULL:
                PyDict_SetItem(out, k, ca * cb)
            else:
                v = <object>slot + ca * cb
                if v:
                    PyDict_SetItem(out, k, v)
                else:
                    PyDict_DelItem(out, k)
    return out


def add(dict a, dict b, scale=1):
    cdef dict out = dict(a)
    add_into(out, b, scale)
    return out


def add_into(dict acc, dict b, scale=1):
    cdef object k, c, v
    cdef PyObject* slot
    cdef bint unit = scale == 1
    for k, c in b.items():
        if not unit:
            c = scale * c
        slot = PyDict_GetItem(acc, k)
        if slot is NULL:
            PyDict_SetItem(acc, k, c)
        else:
            v = <object>slot + c
            if v:
                PyDict_SetItem(acc, k, v)
            else:
                PyDict_DelItem(acc, k)


def scale(dict a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def shift(dict a, m):
    if not m:
        return dict(a)
    return {k + m: v for k, v in a.items()}


cdef bint _inside(object k, list lo, list hi, int width):
    cdef object half = 1 << (width - 1)
    cdef object mask = (1 << width) - 1
    cdef object d
    cdef Py_ssize_t i
    for i in range(len(lo)):
        d = k & mask
        if d >= half:
            d -= mask + 1
        if d < lo[i] or d > hi[i]:
            return False
        k = (k - d) >> width
    return not k


def divexact(dict n, dict f, bint integral, list lo, list hi, int width):
    cdef object lf, lc, k, c, qk, qc, rem, kk, dk, dc
    cdef PyObject* slot
    cdef dict r, q
    cdef list heap, rest
    if not n:
        return {}
    lf = max(f)
    lc = f[lf]
    rest = [(kf - lf, cf) for kf, cf in f.items() if kf != lf]
    r = dict(n)
    heap = [-k for k in r]
    heap.sort()
    q = {}
    while heap:
        k = -heappop(heap)
        slot = PyDict_GetItem(r, k)
        if slot is NULL:
            continue
        c = <object>slot
        PyDict_DelItem(r, k)
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
            kk = k + dk
            slot = PyDict_GetItem(r, kk)
            if slot is NULL:
                PyDict_SetItem(r, kk, -qc * dc)
                heappush(heap, -kk)
            else:
                PyDict_SetItem(r, kk, <object>slot - qc * dc)
    return q
