"""Numba vs numpy timings for the two hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from dlcurves import _accel, gf


def best_of(fn, repeat):
    fn()  # warm-up (numba compiles here)
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return min(ts)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])

    cases = []
    for p, shape in [(2, (20000, 12, 12)), (3, (20000, 14, 14))]:
        M = rng.integers(0, p, size=shape)
        ref = _accel.batched_rank_modp(M, p, backend="numpy")
        cases.append((f"rank mod {p} {shape}", lambda be, M=M, p=p: _accel.batched_rank_modp(M, p, backend=be), ref))

    for p, k in [(2, 12), (3, 7)]:
        F = gf.mk_field(p, k)
        a = F.random(rng, size=1 << 20)
        b = F.random(rng, size=1 << 20)
        ref = _accel.table_mul(a, b, F._log, F._exp, backend="numpy")
        cases.append((f"table_mul GF({p}^{k}) 2^20", lambda be, a=a, b=b, F=F: _accel.table_mul(a, b, F._log, F._exp, backend=be), ref))

    print(f"{'kernel':36s}" + "".join(f"{b:>12s}" for b in backends))
    for name, fn, ref in cases:
        row = []
        for be in backends:
            assert np.array_equal(fn(be), ref), f"{name}: {be} disagrees with numpy"
            row.append(best_of(lambda: fn(be), args.repeat))
        print(f"{name:36s}" + "".join(f"{t * 1e3:10.2f}ms" for t in row))


if __name__ == "__main__":
    main()
