"""Root data of the finite irreducible reflection groups and corner-vector orbits.

Orbits of corner vectors are enumerated in fundamental-weight coordinates.
Every Cartan entry of the supported groups lies in Z[phi] (phi the golden
ratio), so a coordinate is stored as an integer pair (a, b) meaning a + b*phi
and the breadth-first search runs on integer arrays.  Starting from a dominant
weight and only reflecting in walls where the coordinate is positive, each
layer holds the orbit elements of one fixed length, so deduplicating layer by
layer is enough.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .. import kernels
from ..exactnum import ONE, ZERO, FieldElement, as_field, solve_field

Vector = tuple[FieldElement, ...]

R2 = FieldElement.sqrt_of(2)
R3 = FieldElement.sqrt_of(3)
R5 = FieldElement.sqrt_of(5)
R10 = FieldElement.sqrt_of(10)

DEFAULT_ORBIT_CAP = 1_000_000


class UnsupportedGroup(KeyError):
    pass


class OrbitCapExceeded(RuntimeError):
    pass


def dot(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    out = ZERO
    for a, b in zip(u, v):
        if not a.is_zero() and not b.is_zero():
            out = out + a * b
    return out


def _vec(coeffs: Sequence, scale=1) -> Vector:
    s = as_field(scale)
    return tuple(as_field(c) * s for c in coeffs)


def _unit(n: int, i: int) -> list:
    v = [0] * n
    v[i] = 1
    return v


def _zphi(x: FieldElement) -> tuple[int, int]:
    """a + b*sqrt5 -> (a - b) + 2b*phi, integers required."""
    c = x.coeffs
    if any(c[i] for i in (1, 2, 4, 5, 6, 7)):
        raise ValueError(f"{x} is not in Q(sqrt5)")
    a, b = c[0] - c[3], 2 * c[3]
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError(f"{x} is not in Z[phi]")
    return int(a), int(b)


PHI = (1 + R5) / 2


@dataclass(frozen=True)
class ReflectionGroupData:
    label: str
    rank: int
    dim: int
    roots: tuple[Vector, ...]
    exponents: tuple[int, ...]
    order: int
    printed_corners: tuple[Vector, ...] | None = None
    printed_sizes: tuple[int, ...] | None = None
    # roots used for the weight-coordinate search when the printed lengths give
    # Cartan entries outside Z[phi]; reflections are unchanged by rescaling
    search_roots: tuple[Vector, ...] | None = None

    # -- derived data ----------------------------------------------------
    @cached_property
    def gram(self) -> list[list[FieldElement]]:
        return [[dot(a, b) for b in self.roots] for a in self.roots]

    def _weights_for(self, roots) -> list[Vector]:
        n = self.rank
        # K[i][k] = <alpha_k, alpha_i^vee>; omega_j = sum_k M[j][k] alpha_k with M K^T = I
        K = [[2 * dot(roots[k], roots[i]) / dot(roots[i], roots[i]) for k in range(n)] for i in range(n)]
        out = []
        for j in range(n):
            # row j of M solves K m = e_j
            m_row = solve_field(K, [ONE if i == j else ZERO for i in range(n)])
            w = [ZERO] * self.dim
            for k in range(n):
                if not m_row[k].is_zero():
                    w = [x + m_row[k] * y for x, y in zip(w, roots[k])]
            out.append(tuple(w))
        return out

    @cached_property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        return tuple(self._weights_for(self.roots))

    @cached_property
    def corner_vectors(self) -> tuple[Vector, ...]:
        """v_k orthogonal to every root but alpha_k, with (v_k, alpha_k) = 1."""
        out = []
        for k, w in enumerate(self.fundamental_weights):
            s = 1 / dot(w, self.roots[k])
            out.append(tuple(x * s for x in w))
        return tuple(out)

    def corner_norm_sq(self, k: int) -> FieldElement:
        v = self.corner_vectors[k - 1]
        return dot(v, v)

    def normalized_corner(self, k: int) -> Vector:
        """v_k / |v_k|; raises ValueError when the norm leaves the field."""
        n2 = self.corner_norm_sq(k)
        if not n2.is_rational():
            raise ValueError("corner vector norm is outside the field")
        r = n2.sqrt()
        return tuple(x / r for x in self.corner_vectors[k - 1])

    @cached_property
    def _search(self):
        roots = self.search_roots or self.roots
        weights = self._weights_for(roots)
        refl = np.zeros((self.rank, self.rank, 2), dtype=np.int64)
        for i in range(self.rank):
            for j in range(self.rank):
                refl[i, j] = _zphi(2 * dot(roots[i], roots[j]) / dot(roots[j], roots[j]))
        return refl, weights

    def reflect(self, x: Sequence[FieldElement], i: int) -> Vector:
        a = self.roots[i]
        c = 2 * dot(x, a) / dot(a, a)
        return tuple(xi - c * ai for xi, ai in zip(x, a))

    def contains_coordinate_permutations(self) -> bool:
        """True when alpha_1..alpha_{dim-1} are the simple transpositions e_i - e_{i+1} up to sign."""
        if self.rank < self.dim - 1:
            return False
        for i in range(self.dim - 1):
            target = _unit(self.dim, i)
            target[i + 1] = -1
            r = self.roots[i]
            if r != _vec(target) and r != _vec([-t for t in target]):
                return False
        return True


# ---------------------------------------------------------------------------
# group table
# ---------------------------------------------------------------------------

def _simple_chain(n: int, count: int) -> list[Vector]:
    out = []
    for i in range(count):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        out.append(_vec(v))
    return out


def _neg_chain(n: int, count: int) -> list[Vector]:
    return [tuple(-x for x in r) for r in _simple_chain(n, count)]


def _f4() -> ReflectionGroupData:
    e = lambda i: _unit(4, i)
    roots = [_vec([1, -1, 0, 0]), _vec([0, 1, -1, 0]), _vec(e(2)), _vec([-1, -1, -1, 1], Fraction(1, 2))]
    corners = [_vec([1, 0, 0, 1]), _vec([1, 1, 0, 2]), _vec([1, 1, 1, 3]), _vec([0, 0, 0, 2])]
    return ReflectionGroupData("F4", 4, 4, tuple(roots), (1, 5, 7, 11), 1152,
                               tuple(corners), (24, 96, 96, 24))


def _h3() -> ReflectionGroupData:
    a3 = tuple(x / 6 for x in (1 + R2 + R5 - R10, 1 + R2 + R5 - R10, -(2 - R2 + 2 * R5 + R10)))
    roots = _neg_chain(3, 2) + [a3]
    c = 3 * R2 + R10
    corners = [
        tuple(x / 12 for x in (-(c + 8), -(c - 4), -(c - 4))),
        tuple(x / 6 for x in (-(c + 2), -(c + 2), -(c - 4))),
        tuple(-(R2 + R10) / 4 for _ in range(3)),
    ]
    return ReflectionGroupData("H3", 3, 3, tuple(roots), (1, 5, 9), 120, tuple(corners), (12, 30, 20))


def _h4() -> ReflectionGroupData:
    # third root taken as -e3 - e4: the printed -e3 + e4 is acute to alpha_4 and
    # not orthogonal to the printed corner vectors
    roots = _neg_chain(4, 2) + [_vec([0, 0, -1, -1]), tuple(x / 2 for x in (ONE, ONE, ONE, R5))]
    corners = [
        tuple(x / 4 for x in (R5 - 1, R5 + 3, R5 + 3, -(R5 + 3))),
        tuple(x / 2 for x in (R5 + 1, R5 + 1, R5 + 3, -(R5 + 3))),
        tuple(x / 4 for x in (3 * R5 + 5, 3 * R5 + 5, 3 * R5 + 5, -3 * (R5 + 3))),
        tuple(x / 2 for x in (R5 + 3, R5 + 3, R5 + 3, -(R5 + 3))),
    ]
    return ReflectionGroupData("H4", 4, 4, tuple(roots), (1, 11, 19, 29), 14400,
                               tuple(corners), (120, 720, 1200, 600))


def _e6() -> ReflectionGroupData:
    a6 = tuple(x / 6 for x in [-3 + R3] * 3 + [3 + R3] * 3)
    roots = _simple_chain(6, 5) + [a6]
    p, m1 = R3 + 1, R3 - 1
    corners = [
        tuple(x / 6 for x in [R3 + 5] + [m1] * 5),
        tuple(x / 3 for x in [R3 + 2] * 2 + [m1] * 4),
        tuple(x / 2 for x in [p] * 3 + [m1] * 3),
        tuple(x / 3 for x in [p] * 4 + [R3 - 2] * 2),
        tuple(x / 6 for x in [p] * 5 + [R3 - 5]),
        tuple(R3 / 3 for _ in range(6)),
    ]
    return ReflectionGroupData("E6", 6, 6, tuple(roots), (1, 4, 5, 7, 8, 11), 51840,
                               tuple(corners), (27, 216, 720, 216, 27, 72))


def _e7() -> ReflectionGroupData:
    a7 = tuple(x / 7 for x in [-4 + R2] * 3 + [3 + R2] * 4)
    roots = _simple_chain(7, 6) + [a7]
    corners = [
        tuple(x / 7 for x in [6 + 2 * R2] + [-1 + 2 * R2] * 6),
        tuple(x / 7 for x in [5 + 4 * R2] * 2 + [-2 + 4 * R2] * 5),
        tuple(x / 7 for x in [4 + 6 * R2] * 3 + [-3 + 6 * R2] * 4),
        tuple(x / 14 for x in [6 + 9 * R2] * 4 + [-8 + 9 * R2] * 3),
        tuple(x / 7 for x in [2 + 3 * R2] * 5 + [-5 + 3 * R2] * 2),
        tuple(x / 14 for x in [-2 - 3 * R2] * 6 + [12 - 3 * R2]),
        tuple(ONE / R2 for _ in range(7)),
    ]
    return ReflectionGroupData("E7", 7, 7, tuple(roots), (1, 5, 7, 9, 11, 13, 17), 2903040,
                               tuple(corners), (126, 2016, 10080, 4032, 756, 56, 576))


def _e8() -> ReflectionGroupData:
    roots = _simple_chain(8, 7) + [_vec([-1, -1, -1, 1, 1, 1, 1, 1], Fraction(1, 2))]
    h = Fraction(1, 2)
    corners = [
        _vec([3, 1, 1, 1, 1, 1, 1, 1], h),
        _vec([2, 2, 1, 1, 1, 1, 1, 1]),
        _vec([5, 5, 5, 3, 3, 3, 3, 3], h),
        _vec([2, 2, 2, 2, 1, 1, 1, 1]),
        _vec([3, 3, 3, 3, 3, 1, 1, 1], h),
        _vec([-1, -1, -1, -1, -1, -1, 0, 0]),
        _vec([-1, -1, -1, -1, -1, -1, -1, 1], h),
        _vec([1] * 8),
    ]
    return ReflectionGroupData("E8", 8, 8, tuple(roots), (1, 7, 11, 13, 17, 19, 23, 29), 696729600,
                               tuple(corners), (2160, 69120, 483840, 241920, 60480, 6720, 240, 17280))


def _type_a(n: int) -> ReflectionGroupData:
    if n < 2:
        raise UnsupportedGroup("A(n) needs n >= 2 here")
    m = n + 1
    return ReflectionGroupData(f"A({n})", n, m, tuple(_simple_chain(m, n)), tuple(range(1, n + 1)),
                               math.factorial(m))


def _type_b(m: int) -> ReflectionGroupData:
    if m < 2:
        raise UnsupportedGroup("B(m) needs m >= 2")
    roots = _simple_chain(m, m - 1) + [_vec(_unit(m, m - 1), R2)]
    search = _simple_chain(m, m - 1) + [_vec(_unit(m, m - 1))]
    return ReflectionGroupData(f"B({m})", m, m, tuple(roots), tuple(range(1, 2 * m, 2)),
                               2 ** m * math.factorial(m), search_roots=tuple(search))


def _type_d(m: int) -> ReflectionGroupData:
    if m < 4:
        raise UnsupportedGroup("D(m) needs m >= 4")
    last = [0] * m
    last[m - 2], last[m - 1] = 1, 1
    roots = _simple_chain(m, m - 1) + [_vec(last)]
    exps = tuple(sorted(list(range(1, 2 * m - 2, 2)) + [m - 1]))
    return ReflectionGroupData(f"D({m})", m, m, tuple(roots), exps, 2 ** (m - 1) * math.factorial(m))


_FIXED = {"F4": _f4, "H3": _h3, "H4": _h4, "E6": _e6, "E7": _e7, "E8": _e8}
LABELS = tuple(_FIXED) + ("A(n)", "B(m)", "D(m)")


@lru_cache(maxsize=None)
def group_data(label: str) -> ReflectionGroupData:
    key = label.strip().upper().replace(" ", "")
    if key in _FIXED:
        return _FIXED[key]()
    if len(key) >= 2 and key[0] in "ABD":
        inner = key[1:].strip("()_")
        if inner.isdigit():
            return {"A": _type_a, "B": _type_b, "D": _type_d}[key[0]](int(inner))
    raise UnsupportedGroup(f"unsupported group {label!r}; choose from {', '.join(LABELS)}")


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CornerOrbit:
    """A corner-vector orbit in weight coordinates with an exact coordinate map."""

    group: ReflectionGroupData
    corner: int  # 1-based
    weight_coords: np.ndarray  # n x rank x 2, integer pairs over Z[phi]

    @property
    def size(self) -> int:
        return self.weight_coords.shape[0]

    @cached_property
    def _coordinate_map(self):
        """Integer numerators for x = sum_j (a_j + b_j phi) omega_j, scaled onto v_k."""
        _, weights = self.group._search
        k = self.corner - 1
        v = self.group.corner_vectors[k]
        i0 = next(i for i, x in enumerate(weights[k]) if not x.is_zero())
        s = v[i0] / weights[k][i0]
        cols = []
        for w in weights:
            cols.append([x * s for x in w])
            cols.append([x * s * PHI for x in w])
        den = math.lcm(*(c.denominator for col in cols for x in col for c in x.coeffs))
        W = np.array([[[int(c * den) for c in x.coeffs] for x in col] for col in cols], dtype=object)
        return W, den  # (2*rank) x dim x 8

    def coordinate_numerators(self, coords: Sequence[int] | None = None) -> tuple[np.ndarray, int]:
        """Numerators (n x len(coords) x 8, public basis order) and common denominator."""
        W, den = self._coordinate_map
        if coords is not None:
            W = W[:, list(coords), :]
        A = self.weight_coords.reshape(self.size, -1)
        peak_a = int(np.abs(A).max()) if A.size else 0
        peak_w = max((abs(int(x)) for x in W.flat), default=0)
        if peak_a * peak_w * A.shape[1] < 2 ** 62:
            Wi = W.astype(np.int64).reshape(W.shape[0], -1)
            out = A.astype(np.int64) @ Wi
        else:
            out = A.astype(object) @ W.reshape(W.shape[0], -1)
        return out.reshape(self.size, W.shape[1], 8), den

    def points(self, cap: int = DEFAULT_ORBIT_CAP) -> list[Vector]:
        if self.size > cap:
            raise OrbitCapExceeded(f"orbit has {self.size} points, cap {cap}")
        nums, den = self.coordinate_numerators()
        return [tuple(FieldElement([Fraction(int(c), den) for c in x]) for x in row) for row in nums]


def corner_orbit(g: ReflectionGroupData, k: int, cap: int = DEFAULT_ORBIT_CAP) -> CornerOrbit:
    if not 1 <= k <= g.rank:
        raise ValueError(f"corner index must be in 1..{g.rank}")
    cache = _orbit_cache.setdefault(g.label, {})
    if k not in cache:
        refl, _ = g._search
        start = np.zeros((1, g.rank, 2), dtype=np.int64)
        start[0, k - 1, 0] = 1
        layers = [start]
        total = 1
        layer = start
        while True:
            children = kernels.orbit_layer(np.ascontiguousarray(layer), refl)
            if children.shape[0] == 0:
                break
            flat = np.unique(children.reshape(children.shape[0], -1), axis=0)
            layer = flat.reshape(-1, g.rank, 2)
            total += layer.shape[0]
            if total > cap:
                raise OrbitCapExceeded(f"orbit exceeds cap {cap}")
            layers.append(layer)
        cache[k] = CornerOrbit(g, k, np.concatenate(layers))
    out = cache[k]
    if out.size > cap:
        raise OrbitCapExceeded(f"orbit has {out.size} points, cap {cap}")
    return out


_orbit_cache: dict[str, dict[int, CornerOrbit]] = {}


def orbit_sizes(g: ReflectionGroupData) -> tuple[int, ...]:
    return tuple(corner_orbit(g, k).size for k in range(1, g.rank + 1))


def orbit(g: ReflectionGroupData, x: Sequence, cap: int = DEFAULT_ORBIT_CAP) -> list[Vector]:
    """Exact orbit of x under the group generated by the simple reflections."""
    x = tuple(as_field(c) for c in x)
    if len(x) != g.dim:
        raise ValueError(f"point has {len(x)} coordinates, group acts on R^{g.dim}")
    if all(c.is_zero() for c in x):
        return [x]
    pair = [dot(x, a) for a in g.roots]
    support = [i for i, c in enumerate(pair) if not c.is_zero()]
    if len(support) == 1:
        k = support[0]
        scale = pair[k]  # x = scale * v_k because (v_k, alpha_k) = 1
        if (x == tuple(c * scale for c in g.corner_vectors[k])):
            pts = corner_orbit(g, k + 1, cap).points(cap)
            return [tuple(c * scale for c in p) for p in pts]
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(g.rank):
                q = g.reflect(p, i)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise OrbitCapExceeded(f"orbit exceeds cap {cap}")
        frontier = nxt
    return sorted(seen, key=lambda p: tuple(float(c) for c in p))
