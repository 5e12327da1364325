"""Integer hot loops with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``CUBFORGE_KERNELS`` is not set
to ``numpy``.  Both paths return identical arrays; the choice only affects
speed.  Every public kernel is also reachable per-backend through
``IMPLEMENTATIONS`` so tests and the benchmark can compare them directly.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def selected_backend() -> str:
    flag = os.environ.get("CUBFORGE_KERNELS", "").strip().lower()
    if flag == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def _njit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


# -- orthogonal array column-pattern counts -------------------------------

def _oa_counts_numpy(bits: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    n_sub, t = subsets.shape
    weights = 1 << np.arange(t, dtype=np.int64)
    out = np.zeros((n_sub, 1 << t), dtype=np.int64)
    b = bits.astype(np.int64)
    for s in range(n_sub):
        codes = b[:, subsets[s]] @ weights
        out[s] = np.bincount(codes, minlength=1 << t)
    return out


@_njit
def _oa_counts_numba(bits, subsets):
    n_sub, t = subsets.shape
    n_rows = bits.shape[0]
    out = np.zeros((n_sub, 1 << t), dtype=np.int64)
    for s in range(n_sub):
        for r in range(n_rows):
            code = 0
            for j in range(t):
                if bits[r, subsets[s, j]]:
                    code |= 1 << j
            out[s, code] += 1
    return out


# -- block design t-subset coverage --------------------------------------

def _coverage_numpy(incidence: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    inc = incidence.astype(bool)
    out = np.empty(subsets.shape[0], dtype=np.int64)
    chunk = 4096
    for start in range(0, subsets.shape[0], chunk):
        sub = subsets[start:start + chunk]
        hit = inc[:, sub].all(axis=2)  # blocks x chunk
        out[start:start + chunk] = hit.sum(axis=0)
    return out


@_njit
def _coverage_numba(incidence, subsets):
    n_blocks = incidence.shape[0]
    n_sub, t = subsets.shape
    out = np.zeros(n_sub, dtype=np.int64)
    for s in range(n_sub):
        c = 0
        for b in range(n_blocks):
            ok = True
            for j in range(t):
                if incidence[b, subsets[s, j]] == 0:
                    ok = False
                    break
            if ok:
                c += 1
        out[s] = c
    return out


# -- monomial power tables -------------------------------------------------

def _power_table_numpy(points: np.ndarray, exps: np.ndarray) -> np.ndarray:
    n = points.shape[0]
    out = np.ones((n, exps.shape[0]), dtype=np.int64)
    for j in range(points.shape[1]):
        col = points[:, j][:, None]
        e = exps[:, j][None, :]
        out *= col ** e
    return out


@_njit
def _power_table_numba(points, exps):
    n, m = points.shape
    n_mono = exps.shape[0]
    out = np.ones((n, n_mono), dtype=np.int64)
    for i in range(n):
        for k in range(n_mono):
            v = 1
            for j in range(m):
                e = exps[k, j]
                if e:
                    x = points[i, j]
                    for _ in range(e):
                        v *= x
            out[i, k] = v
    return out


# -- GF(2) row span ----------------------------------------------------------

def _gf2_span_numpy(gens: np.ndarray) -> np.ndarray:
    k = gens.shape[0]
    coeff = ((np.arange(1 << k)[:, None] >> np.arange(k)[None, :]) & 1).astype(np.int64)
    return ((coeff @ gens.astype(np.int64)) & 1).astype(np.uint8)


@_njit
def _gf2_span_numba(gens):
    k, n = gens.shape
    out = np.zeros((1 << k, n), dtype=np.uint8)
    for c in range(1 << k):
        for i in range(k):
            if (c >> i) & 1:
                for j in range(n):
                    out[c, j] ^= gens[i, j]
    return out


# -- reflection orbit layer in Z[phi] coordinates ----------------------------
# A coordinate is a pair (a, b) meaning a + b*phi with phi^2 = phi + 1.

def _zphi_positive_numpy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = 2 * a + b
    both_nonneg = (s >= 0) & (b >= 0) & ((s > 0) | (b > 0))
    mixed1 = (s > 0) & (b < 0) & (s * s > 5 * b * b)
    mixed2 = (s < 0) & (b > 0) & (5 * b * b > s * s)
    return both_nonneg | mixed1 | mixed2


def _layer_numpy(layer: np.ndarray, refl: np.ndarray) -> np.ndarray:
    m = refl.shape[0]
    out = []
    for i in range(m):
        ca, cb = layer[:, i, 0], layer[:, i, 1]
        mask = _zphi_positive_numpy(ca, cb)
        if not mask.any():
            continue
        ca, cb = ca[mask][:, None], cb[mask][:, None]
        ra, rb = refl[i, :, 0][None, :], refl[i, :, 1][None, :]
        pa = ca * ra + cb * rb
        pb = ca * rb + cb * ra + cb * rb
        child = layer[mask].copy()
        child[:, :, 0] -= pa
        child[:, :, 1] -= pb
        out.append(child)
    if not out:
        return np.zeros((0,) + layer.shape[1:], dtype=np.int64)
    return np.concatenate(out)


@_njit
def _zphi_positive_scalar(a, b):
    s = 2 * a + b
    if s >= 0 and b >= 0:
        return s > 0 or b > 0
    if s > 0 and b < 0:
        return s * s > 5 * b * b
    if s < 0 and b > 0:
        return 5 * b * b > s * s
    return False


@_njit
def _layer_numba(layer, refl):
    n, m, _ = layer.shape
    count = 0
    for r in range(n):
        for i in range(m):
            if _zphi_positive_scalar(layer[r, i, 0], layer[r, i, 1]):
                count += 1
    out = np.empty((count, m, 2), dtype=np.int64)
    k = 0
    for i in range(m):
        for r in range(n):
            ca = layer[r, i, 0]
            cb = layer[r, i, 1]
            if _zphi_positive_scalar(ca, cb):
                for j in range(m):
                    ra = refl[i, j, 0]
                    rb = refl[i, j, 1]
                    out[k, j, 0] = layer[r, j, 0] - (ca * ra + cb * rb)
                    out[k, j, 1] = layer[r, j, 1] - (ca * rb + cb * ra + cb * rb)
                k += 1
    return out


IMPLEMENTATIONS = {
    "oa_counts": {"numpy": _oa_counts_numpy, "numba": _oa_counts_numba},
    "coverage": {"numpy": _coverage_numpy, "numba": _coverage_numba},
    "power_table": {"numpy": _power_table_numpy, "numba": _power_table_numba},
    "gf2_span": {"numpy": _gf2_span_numpy, "numba": _gf2_span_numba},
    "orbit_layer": {"numpy": _layer_numpy, "numba": _layer_numba},
}


def _dispatch(name):
    def call(*args):
        return IMPLEMENTATIONS[name][selected_backend()](*args)

    call.__name__ = name
    return call


oa_counts = _dispatch("oa_counts")
coverage = _dispatch("coverage")
power_table = _dispatch("power_table")
gf2_span = _dispatch("gf2_span")
orbit_layer = _dispatch("orbit_layer")
