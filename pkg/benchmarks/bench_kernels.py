"""Time the numba kernels against their numpy fallbacks on realistic inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is called once untimed (numba compiles or loads its cache), then
timed as the best of N runs.  Both backends must return identical arrays.
"""
import argparse
import itertools
import time

import numpy as np

from cubforge import kernels
from cubforge.designs import complete_design, dual_bch_oa, nordstrom_robinson
from cubforge.reflect import group_data


def _subsets(n, t):
    return np.array(list(itertools.combinations(range(n), t)), dtype=np.int64)


def _e8_layer():
    g = group_data("E8")
    refl, _ = g._search
    layer = np.zeros((1, g.rank, 2), dtype=np.int64)
    layer[0, 2, 0] = 1
    for _ in range(8):  # grow a few layers so the benchmark sees a wide frontier
        nxt = kernels.IMPLEMENTATIONS["orbit_layer"]["numpy"](layer, refl)
        layer = np.unique(nxt.reshape(nxt.shape[0], -1), axis=0).reshape(-1, g.rank, 2)
    return layer, refl


def cases():
    rng = np.random.default_rng(0)
    bch = (dual_bch_oa(augment=True).rows < 0).astype(np.uint8)
    yield "oa_counts  OA(2048,31) t=3", "oa_counts", (bch, _subsets(bch.shape[1], 3))
    nr = (nordstrom_robinson().rows < 0).astype(np.uint8)
    yield "oa_counts  NR t=5", "oa_counts", (nr, _subsets(nr.shape[1], 5))
    inc = complete_design(12, 5).incidence()
    yield "coverage   C(12,5) t=4", "coverage", (inc, _subsets(12, 4))
    pts = rng.integers(-3, 4, size=(2000, 9)).astype(np.int64)
    exps = np.array([e for e in itertools.product(range(5), repeat=9) if sum(e) == 4], dtype=np.int64)
    yield "power_table 2000 pts x deg-4 monomials m=9", "power_table", (pts, exps)
    gens = rng.integers(0, 2, size=(14, 40)).astype(np.uint8)
    yield "gf2_span   14 x 40", "gf2_span", (gens,)
    yield "orbit_layer E8 frontier", "orbit_layer", _e8_layer()


def best_of(fn, args, repeat):
    out = fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':46s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for label, name, inputs in cases():
        impl = kernels.IMPLEMENTATIONS[name]
        t_np, a = best_of(impl["numpy"], inputs, args.repeat)
        t_nb, b = best_of(impl["numba"], inputs, args.repeat)
        if not np.array_equal(a, b):
            raise SystemExit(f"{label}: backends disagree")
        print(f"{label:46s} {1e3 * t_np:10.2f} {1e3 * t_nb:10.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
