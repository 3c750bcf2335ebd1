"""Compare the compiled and pure-Python echelon kernels.

    python3 benchmarks/bench_echelon.py
    python3 benchmarks/bench_echelon.py --rows 400 --cols 600 --density 0.02 --repeat 5
    python3 benchmarks/bench_echelon.py --end-to-end

The kernel benchmark feeds both backends the same seeded random sparse
matrices (the shape of the Macaulay-style matrices built by the Groebner
engine: wide, sparse, a few trusted pivot rows on top) and checks the
outputs are identical before reporting times.  ``--end-to-end`` also times a
resolution in a subprocess with each backend selected via SYZLAB_PURE_PYTHON.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from syzlab import echelon

P = 32003


def random_csr(rng, nrows, ncols, density):
    indptr, indices, data = [0], [], []
    for _ in range(nrows):
        k = max(1, rng.binomial(ncols, density))
        cols = np.sort(rng.choice(ncols, size=min(k, ncols), replace=False))
        indices.extend(cols.tolist())
        data.extend(rng.integers(1, P, size=len(cols)).tolist())
        indptr.append(len(indices))
    return np.array(indptr), np.array(indices), np.array(data)


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_kernel(args):
    rng = np.random.default_rng(args.seed)
    print(f"{'rows':>6} {'cols':>6} {'nnz':>8} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for scale in args.scales:
        nrows, ncols = int(args.rows * scale), int(args.cols * scale)
        ip, ix, dt = random_csr(rng, nrows, ncols, args.density)
        call = lambda b: echelon.echelonize(ip, ix, dt, ncols, P, 0, 0, backend=b)
        tp, outp = best_time(lambda: call("python"), args.repeat)
        if echelon.BACKEND != "cython":
            print(f"{nrows:>6} {ncols:>6} {len(ix):>8} {tp:>10.4f} {'n/a':>10} {'n/a':>8}")
            continue
        tc, outc = best_time(lambda: call("cython"), args.repeat)
        for a, b in zip(outp, outc):
            if not np.array_equal(a, b):
                sys.exit("backends disagree")
        print(f"{nrows:>6} {ncols:>6} {len(ix):>8} {tp:>10.4f} {tc:>10.4f} {tp / tc:>8.1f}")


E2E = """
import time
from syzlab import BACKEND, quotient_ring, residue_field, minimal_free_resolution
R = quotient_ring(["x", "y", "z"], ["x^2", "x*y", "y^2", "z^3"])
t0 = time.perf_counter()
F = minimal_free_resolution(residue_field(R), {n})
print(BACKEND, time.perf_counter() - t0, F.ranks())
"""


def bench_end_to_end(args):
    print("\nresolution of k over F_p[x,y,z]/(x^2,xy,y^2,z^3), length", args.length)
    for flag in ("1", "0"):
        env = dict(os.environ, SYZLAB_PURE_PYTHON=flag)
        out = subprocess.run([sys.executable, "-c", E2E.format(n=args.length)], env=env,
                             capture_output=True, text=True, check=True).stdout.split(maxsplit=2)
        print(f"  {out[0]:>7}: {float(out[1]):.3f} s  ranks {out[2].strip()}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=200)
    ap.add_argument("--cols", type=int, default=300)
    ap.add_argument("--density", type=float, default=0.03)
    ap.add_argument("--scales", type=float, nargs="+", default=[0.5, 1, 1.5])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true")
    ap.add_argument("--length", type=int, default=7)
    args = ap.parse_args()
    print(f"default backend: {echelon.BACKEND}")
    bench_kernel(args)
    if args.end_to_end:
        bench_end_to_end(args)


if __name__ == "__main__":
    main()
