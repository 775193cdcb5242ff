"""Compiled vs pure-Python polynomial kernel.

Micro benchmarks call both kernel modules directly; the end-to-end rows run
the same workload in subprocesses with and without MCK_PURE_PYTHON.

    python3 benchmarks/bench_kernel.py [--repeat 3]
"""

import argparse
import os
import subprocess
import sys
import time
from fractions import Fraction

from mck.exactalg import _kernel_py
from mck.exactalg.packing import encode

try:
    from mck.exactalg import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def dense_laurent(nvars, degree, coeff=int):
    """All monomials with exponents in [-degree, degree]."""
    terms = {(): 1}
    for _ in range(nvars):
        terms = {k + (e,): 1 for k in terms for e in range(-degree, degree + 1)}
    return {encode(k): coeff(i % 7 + 1) for i, k in enumerate(sorted(terms))}


def weyl_like(kernel, n):
    zero = [0] * n
    out = {0: 1}
    for i in range(n):
        for j in range(i + 1, n):
            e1, e2 = list(zero), list(zero)
            e1[i] = e1[j] = 1
            e2[i], e2[j] = 1, -1
            out = kernel.mul(out, {0: 1, encode(e1): -1})
            out = kernel.mul(out, {0: 1, encode(e2): -1})
    return out


WORKLOADS = {
    "mul 3 vars int": lambda k: k.mul(dense_laurent(3, 3), dense_laurent(3, 3)),
    "mul 3 vars Fraction": lambda k: k.mul(dense_laurent(3, 2, lambda v: Fraction(v, 3)), dense_laurent(3, 2)),
    "product of root factors n=5": lambda k: weyl_like(k, 5),
    "add_into 4 vars": lambda k: k.add_into(dict(dense_laurent(4, 3)), dense_laurent(4, 3), 3),
}

END_TO_END = {
    "oracle P_(2,1), n=3": (
        "from mck.koornwinder import KoornwinderParams, oracle_P; "
        "oracle_P((2, 1), 3, KoornwinderParams.random(1, 3))"
    ),
    "symbolic B*Btilde size 10": (
        "from mck.transition import build_matrices; "
        "(build_matrices('B', 10) @ build_matrices('Btilde', 10)).is_identity()"
    ),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def run_subprocess(code, pure):
    env = dict(os.environ)
    env.pop("MCK_PURE_PYTHON", None)
    if pure:
        env["MCK_PURE_PYTHON"] = "1"
    start = time.perf_counter()
    subprocess.run([sys.executable, "-c", code], env=env, check=True)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args()
    if _kernel_c is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'workload':<32} {'python (s)':>11} {'compiled (s)':>13} {'speedup':>8}")
    for name, fn in WORKLOADS.items():
        assert fn(_kernel_py) == fn(_kernel_c), name
        slow = best_of(lambda: fn(_kernel_py), args.repeat)
        fast = best_of(lambda: fn(_kernel_c), args.repeat)
        print(f"{name:<32} {slow:>11.4f} {fast:>13.4f} {slow / fast:>7.2f}x")
    if not args.skip_end_to_end:
        for name, code in END_TO_END.items():
            slow = min(run_subprocess(code, True) for _ in range(args.repeat))
            fast = min(run_subprocess(code, False) for _ in range(args.repeat))
            print(f"{name:<32} {slow:>11.4f} {fast:>13.4f} {slow / fast:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
