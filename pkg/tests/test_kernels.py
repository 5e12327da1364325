import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cubforge import kernels
from cubforge.kernels import IMPLEMENTATIONS

pytestmark = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not importable")

seeds = st.integers(0, 2 ** 32 - 1)


def _both(name, *args):
    a = IMPLEMENTATIONS[name]["numpy"](*args)
    b = IMPLEMENTATIONS[name]["numba"](*args)
    return a, b


@settings(max_examples=25)
@given(seeds, st.integers(1, 40), st.integers(1, 8), st.integers(1, 4))
def test_oa_counts_agree(seed, rows, cols, t):
    rng = np.random.default_rng(seed)
    t = min(t, cols)
    bits = rng.integers(0, 2, size=(rows, cols)).astype(np.uint8)
    subsets = np.array(list(itertools.combinations(range(cols), t)), dtype=np.int64)
    a, b = _both("oa_counts", bits, subsets)
    assert np.array_equal(a, b)
    for s, row in zip(subsets, a):
        naive = np.zeros(1 << t, dtype=np.int64)
        for r in bits:
            naive[sum(int(r[c]) << j for j, c in enumerate(s))] += 1
        assert np.array_equal(row, naive)


@settings(max_examples=25)
@given(seeds, st.integers(1, 20), st.integers(2, 9), st.integers(1, 3))
def test_coverage_agrees(seed, blocks, v, t):
    rng = np.random.default_rng(seed)
    t = min(t, v)
    inc = rng.integers(0, 2, size=(blocks, v)).astype(np.uint8)
    subsets = np.array(list(itertools.combinations(range(v), t)), dtype=np.int64)
    a, b = _both("coverage", inc, subsets)
    assert np.array_equal(a, b)
    assert np.array_equal(a, np.array([int(inc[:, list(s)].all(axis=1).sum()) for s in subsets]))


@settings(max_examples=25)
@given(seeds, st.integers(1, 30), st.integers(1, 6), st.integers(1, 10))
def test_power_table_agrees(seed, n, m, k):
    rng = np.random.default_rng(seed)
    pts = rng.integers(-5, 6, size=(n, m)).astype(np.int64)
    exps = rng.integers(0, 4, size=(k, m)).astype(np.int64)
    a, b = _both("power_table", pts, exps)
    assert np.array_equal(a, b)
    assert np.array_equal(a, np.prod(pts[:, None, :] ** exps[None, :, :], axis=2))


@settings(max_examples=25)
@given(seeds, st.integers(1, 8), st.integers(1, 12))
def test_gf2_span_agrees(seed, k, n):
    rng = np.random.default_rng(seed)
    gens = rng.integers(0, 2, size=(k, n)).astype(np.uint8)
    a, b = _both("gf2_span", gens)
    assert np.array_equal(a, b)
    assert a.shape == (1 << k, n)
    naive = {tuple(np.bitwise_xor.reduce(gens[list(c)], axis=0)) if c else (0,) * n
             for r in range(k + 1) for c in itertools.combinations(range(k), r)}
    assert {tuple(int(x) for x in row) for row in a} == naive


@pytest.mark.parametrize("label", ["F4", "H3", "H4", "E6"])
def test_orbit_layers_agree(label):
    from cubforge.reflect import group_data
    g = group_data(label)
    refl, _ = g._search
    for k in range(g.rank):
        layer = np.zeros((1, g.rank, 2), dtype=np.int64)
        layer[0, k, 0] = 1
        for _ in range(6):
            a, b = _both("orbit_layer", layer, refl)
            assert np.array_equal(a, b)
            if a.shape[0] == 0:
                break
            layer = np.unique(a.reshape(a.shape[0], -1), axis=0).reshape(-1, g.rank, 2)


def test_env_flag_selects_numpy_and_gives_same_results():
    code = ("from cubforge import kernels; from cubforge.reflect import group_data, orbit_sizes;"
            "from cubforge.designs import nordstrom_robinson, verify_oa;"
            "print(kernels.selected_backend(), orbit_sizes(group_data('H4')), verify_oa(nordstrom_robinson(), 5).passed)")
    out = {}
    for flag in ("numpy", ""):
        env = dict(os.environ, CUBFORGE_KERNELS=flag)
        out[flag] = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                   text=True, check=True).stdout.split(" ", 1)
    assert out["numpy"][0] == "numpy" and out[""][0] == "numba"
    assert out["numpy"][1] == out[""][1]
