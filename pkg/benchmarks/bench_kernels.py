"""Time the compiled and pure-Python convolution kernels against each other.

    python3 benchmarks/bench_kernels.py --n 2000 5000 --mod 5 0
"""

from __future__ import annotations

import argparse
import random
import timeit

from qgrowth import _pykernels as py

try:
    from qgrowth import _ckernels as cy
except ImportError:
    cy = None


def _operands(n, m, seed=0):
    rng = random.Random(seed)
    hi = m - 1 if m else 10 ** 6
    a = [rng.randint(0, hi) for _ in range(n)]
    b = [rng.randint(0, hi) for _ in range(n)]
    u = [1] + [rng.randint(0, hi) for _ in range(n - 1)]
    return a, b, u


def bench(n, m, repeat):
    a, b, u = _operands(n, m)
    rows = []
    for op, args in (("mul", (a, b, n, m)), ("inv", (u, n, m))):
        timings = {}
        for name, mod in (("python", py), ("cython", cy)):
            if mod is None:
                continue
            fn = getattr(mod, f"{op}_trunc")
            timings[name] = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
        if cy is not None:
            assert py.__dict__[f"{op}_trunc"](*args) == cy.__dict__[f"{op}_trunc"](*args)
        rows.append((op, n, m, timings))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[500, 2000, 5000])
    ap.add_argument("--mod", type=int, nargs="+", default=[5, 49, 0], help="0 means exact integers")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; timing the Python path only")
    print(f"{'op':4} {'n':>6} {'mod':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in args.n:
        for m in args.mod:
            for op, n_, m_, t in bench(n, m, args.repeat):
                c = t.get("cython")
                speed = f"{t['python'] / c:8.1f}" if c else "       -"
                cs = f"{c:10.4f}" if c else "         -"
                print(f"{op:4} {n_:6d} {m_ or 'Z':>6} {t['python']:10.4f} {cs} {speed}")


if __name__ == "__main__":
    main()
