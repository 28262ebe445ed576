"""Compare the compiled and pure-Python point-counting kernels.

    python benchmarks/bench_kernels.py [--sizes 5^4,7^4,5^6] [--repeat 3]

Each row counts the affine fiber roots of ``x^3 + A(t) x + B(t)`` over every
``t`` in ``GF(p^n)`` with both backends and checks that they agree.
"""

import argparse
import random
import time

from ellrank.algebra.factor import primitive_modulus
from ellrank.kernels import PythonFieldTables, compiled_tables


def _tables(cls, p, n):
    M = primitive_modulus(p, n)
    return cls(p, n, [int(c) for c in M.coeffs[:-1]])


def _time(T, A, B, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = T.count_range(A, B, 0, T.N1, True)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return out, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="5^4,7^4,5^6")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    compiled = compiled_tables()
    rng = random.Random(args.seed)
    print(f"{'field':>8}  {'python s':>10}  {'cython s':>10}  {'speedup':>8}  result")
    for spec in args.sizes.split(","):
        p, n = (int(x) for x in spec.split("^"))
        py = _tables(PythonFieldTables, p, n)
        A = [rng.randrange(py.N1) for _ in range(4)]
        B = [rng.randrange(py.N1) for _ in range(7)]
        out_py, t_py = _time(py, A, B, args.repeat)
        if compiled is None:
            print(f"{spec:>8}  {t_py:10.4f}  {'n/a':>10}  {'n/a':>8}  {out_py}")
            continue
        cy = _tables(compiled, p, n)
        out_cy, t_cy = _time(cy, A, B, args.repeat)
        if out_cy != out_py:
            raise SystemExit(f"backends disagree over GF({spec}): {out_py} vs {out_cy}")
        print(f"{spec:>8}  {t_py:10.4f}  {t_cy:10.4f}  {t_py / t_cy:8.1f}  {out_py}")


if __name__ == "__main__":
    main()
