"""Compare the numba and numpy kernel backends.

Kernel timings run in-process on random packed inputs. The end-to-end
timing runs a threshold workload in a subprocess per backend, with
FTHRESH_BACKEND set, since the backend is chosen at import.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from fthresh import _kernels as K

WORKLOAD = """
import gc
import time
from fthresh import Ideal, make_ring, threshold_interval, BACKEND
from fthresh._kernels import warmup
warmup()  # compile or load the jitted kernels outside the timing
gc.freeze()  # see README: import-time objects otherwise slow every full collection
t0 = time.perf_counter()
for p in (5, 7):
    R = make_ring(p, "x,y")
    m = Ideal.maximal(R)
    for fs in ("x^2+y^3", "x^3+y^3", "x^2*y+x*y^2", "x^3+y^4+x*y^2"):
        threshold_interval(R.parse(fs), m, {levels})
print(BACKEND, time.perf_counter() - t0)
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def random_poly(rng, nterms, radix, nvars, p):
    keys = np.unique(rng.integers(0, radix**nvars, size=nterms, dtype=np.int64))
    return keys, rng.integers(1, p, size=keys.shape[0], dtype=np.int64)


def bench_kernels(sizes, repeat, seed):
    rng = np.random.default_rng(seed)
    p = 7
    rows = []
    for n in sizes:
        # radix 64 keeps keys dense, as in powers of a fixed polynomial
        ka, ca = random_poly(rng, n, 64, 2, p)
        kb, cb = random_poly(rng, n, 64, 2, p)
        exps = rng.integers(0, 400, size=(n * n, 2), dtype=np.int64)
        gens = rng.integers(0, 200, size=(max(2, n // 10), 2), dtype=np.int64)
        row = {"size": n}
        row["mul/numpy"] = best_of(lambda: K.mul_numpy(ka, ca, kb, cb, p), repeat)
        row["div/numpy"] = best_of(lambda: K.divisible_mask_numpy(exps, gens), repeat)
        if K.HAVE_NUMBA:
            K.warmup()
            row["mul/numba"] = best_of(lambda: K.mul_numba(ka, ca, kb, cb, p), repeat)
            row["div/numba"] = best_of(lambda: K.divisible_mask_numba(exps, gens), repeat)
        rows.append(row)
    return rows


def bench_end_to_end(levels):
    out = {}
    for backend in ("numpy", "numba"):
        if backend == "numba" and not K.HAVE_NUMBA:
            continue
        env = dict(os.environ, FTHRESH_BACKEND=backend)
        res = subprocess.run([sys.executable, "-c", WORKLOAD.format(levels=levels)],
                             env=env, capture_output=True, text=True, check=True)
        name, secs = res.stdout.split()
        out[name] = float(secs)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="32,128,512", help="terms per factor")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--levels", type=int, default=4, help="Frobenius level for the end-to-end run")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args(argv)

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"numba available: {K.HAVE_NUMBA}")
    print(f"{'size':>6} {'kernel':>5} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for row in bench_kernels(sizes, args.repeat, args.seed):
        for kern in ("mul", "div"):
            a = row[f"{kern}/numpy"] * 1e3
            b = row.get(f"{kern}/numba")
            if b is None:
                print(f"{row['size']:>6} {kern:>5} {a:>10.3f} {'-':>10} {'-':>8}")
            else:
                b *= 1e3
                print(f"{row['size']:>6} {kern:>5} {a:>10.3f} {b:>10.3f} {a / b:>7.1f}x")
    if not args.skip_e2e:
        for name, secs in bench_end_to_end(args.levels).items():
            print(f"end-to-end threshold_interval (e<={args.levels}), {name}: {secs:.2f} s")


if __name__ == "__main__":
    main()
