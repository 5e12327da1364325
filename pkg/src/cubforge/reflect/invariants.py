"""Invariant harmonic polynomials: representation, evaluation, Laplacian, Molien.

Two representations cover every basis polynomial used here.

``SymCombination``  sum of coef * sym(x**pattern), sym being the sum over the
                    distinct coordinate permutations of a monomial
``ZonalGroupSum``   sum over the group of a base polynomial h(x^g); the base is
                    either zonal, h = sum coef * x1^a * x2^c * p^b with
                    p = x2^2 + ... + x_m^2, or itself a SymCombination

A group sum is evaluated through the orbit of the argument,
f(x) = (|G| / |x^G|) * sum_{y in x^G} h(y), never by enumerating the group.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from ..exactnum import ONE, ZERO, FieldElement, as_field
from .groups import (
    CornerOrbit,
    ReflectionGroupData,
    corner_orbit,
    dot,
    orbit,
)

Poly = dict  # exponent tuple -> FieldElement


@dataclass(frozen=True)
class SymCombination:
    dim: int
    terms: tuple[tuple[FieldElement, tuple[int, ...]], ...]

    @property
    def degree(self) -> int:
        return sum(self.terms[0][1])

    def expand(self) -> Poly:
        out: Poly = defaultdict(lambda: ZERO)
        for coef, pattern in self.terms:
            for beta in _distinct_permutations(pattern, self.dim):
                out[beta] = out[beta] + coef
        return {k: v for k, v in out.items() if not v.is_zero()}

    def evaluate(self, x: Sequence[FieldElement]) -> FieldElement:
        total = ZERO
        for coef, pattern in self.terms:
            s = ZERO
            for beta in _distinct_permutations(pattern, self.dim):
                s = s + _monomial(x, beta)
            total = total + coef * s
        return total


@dataclass(frozen=True)
class ZonalPolynomial:
    dim: int
    terms: tuple[tuple[FieldElement, int, int, int], ...]  # coef, a, c, b

    @property
    def degree(self) -> int:
        _, a, c, b = self.terms[0]
        return a + c + 2 * b

    def evaluate_stats(self, y1: FieldElement, y2: FieldElement, p: FieldElement) -> FieldElement:
        out = ZERO
        for coef, a, c, b in self.terms:
            term = coef
            if a:
                term = term * y1 ** a
            if c:
                term = term * y2 ** c
            if b:
                term = term * p ** b
            out = out + term
        return out

    def evaluate(self, x: Sequence[FieldElement]) -> FieldElement:
        p = sum((t * t for t in x[1:]), ZERO)
        return self.evaluate_stats(x[0], x[1] if len(x) > 1 else ZERO, p)

    def uses_second_coordinate(self) -> bool:
        return any(c for _, _, c, _ in self.terms)

    def expand(self) -> Poly:
        out: Poly = defaultdict(lambda: ZERO)
        n = self.dim
        for coef, a, c, b in self.terms:
            for combo, mult in _power_of_squares(n - 1, b):
                beta = [a, c] + [0] * (n - 2)
                for i, e in enumerate(combo):
                    beta[i + 1] += e
                key = tuple(beta)
                out[key] = out[key] + coef * mult
        return {k: v for k, v in out.items() if not v.is_zero()}


Base = Union[SymCombination, ZonalPolynomial]


@dataclass(frozen=True)
class ZonalGroupSum:
    base: Base

    @property
    def degree(self) -> int:
        return self.base.degree

    @property
    def dim(self) -> int:
        return self.base.dim


Form = Union[SymCombination, ZonalGroupSum]


@dataclass(frozen=True)
class InvariantSpec:
    group: str
    label: str
    form: Form

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def dim(self) -> int:
        return self.form.dim


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _distinct_permutations(pattern: tuple[int, ...], dim: int) -> tuple[tuple[int, ...], ...]:
    padded = tuple(pattern) + (0,) * (dim - len(pattern))
    return tuple(sorted(set(itertools.permutations(padded))))


def _monomial(x: Sequence[FieldElement], beta: Sequence[int]) -> FieldElement:
    out = ONE
    for xi, e in zip(x, beta):
        if e:
            out = out * xi ** e
    return out


@lru_cache(maxsize=None)
def _power_of_squares(n: int, b: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """(x_1^2 + ... + x_n^2)^b as (exponent tuple, multinomial) pairs."""
    out = []
    for parts in _compositions(b, n):
        mult = _multinomial(b, parts)
        out.append((tuple(2 * p for p in parts), mult))
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(n: int, parts) -> int:
    out, left = 1, n
    from math import comb
    for p in parts:
        out *= comb(left, p)
        left -= p
    return out


def laplacian(poly: Poly) -> Poly:
    out: Poly = defaultdict(lambda: ZERO)
    for beta, coef in poly.items():
        for i, e in enumerate(beta):
            if e >= 2:
                key = beta[:i] + (e - 2,) + beta[i + 1:]
                out[key] = out[key] + coef * (e * (e - 1))
    return {k: v for k, v in out.items() if not v.is_zero()}


def _zonal_laplacian(h: ZonalPolynomial) -> dict:
    """Laplacian of a zonal base kept in (a, c, b) form."""
    n = h.dim - 1  # variables inside p
    out: dict = defaultdict(lambda: ZERO)
    for coef, a, c, b in h.terms:
        if a >= 2:
            out[(a - 2, c, b)] = out[(a - 2, c, b)] + coef * (a * (a - 1))
        if b >= 1:
            k = 4 * b * c + 2 * b * (2 * b + n - 2)
            out[(a, c, b - 1)] = out[(a, c, b - 1)] + coef * k
    return {k: v for k, v in out.items() if not v.is_zero()}


def check_harmonic(obj) -> bool:
    """Laplacian identically zero.  Accepts a spec, a form, or an exponent->coef dict."""
    if isinstance(obj, InvariantSpec):
        obj = obj.form
    if isinstance(obj, ZonalGroupSum):
        obj = obj.base  # G acts orthogonally, so the sum is harmonic when the base is
    if isinstance(obj, ZonalPolynomial):
        if h_c := [t for t in obj.terms if t[2] > 1]:
            raise ValueError(f"zonal base allows x2 to the first power only, got {h_c[0]}")
        return not _zonal_laplacian(obj)
    if isinstance(obj, SymCombination):
        return not laplacian(obj.expand())
    poly = {tuple(k): as_field(v) for k, v in dict(obj).items()}
    return not laplacian(poly)


def molien_dims(g: ReflectionGroupData, up_to: int) -> list[int]:
    """dim Harm_i(R^m)^G for i = 0..up_to."""
    if not 0 <= up_to <= 64:
        raise ValueError("up_to must lie in 0..64")
    series = [0] * (up_to + 1)
    series[0] = 1
    for d in g.exponents[1:]:
        step = d + 1
        for i in range(step, up_to + 1):
            series[i] += series[i - step]
    return series


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _orbit_stat_zonal(orb: CornerOrbit, h: ZonalPolynomial, scale: FieldElement) -> FieldElement:
    coords = [0, 1] if h.uses_second_coordinate() else [0]
    nums, den = orb.coordinate_numerators(coords)
    flat = nums.reshape(nums.shape[0], -1)
    if flat.dtype == object:
        uniq, counts = _unique_object_rows(flat)
    else:
        uniq, counts = np.unique(flat, axis=0, return_counts=True)
    g = orb.group
    norm_sq = g.corner_norm_sq(orb.corner) * scale * scale
    total = ZERO
    for row, cnt in zip(uniq, counts):
        y1 = FieldElement([Fraction(int(c), den) for c in row[:8]]) * scale
        y2 = FieldElement([Fraction(int(c), den) for c in row[8:16]]) * scale if len(coords) > 1 else ZERO
        total = total + h.evaluate_stats(y1, y2, norm_sq - y1 * y1) * int(cnt)
    return total


def _unique_object_rows(flat):
    c = Counter(tuple(int(v) for v in row) for row in flat)
    keys = sorted(c)
    return keys, [c[k] for k in keys]


def _orbit_stat_sym(orb: CornerOrbit, h: SymCombination, scale: FieldElement) -> FieldElement:
    pts = orb.points()
    g = orb.group
    total = ZERO
    if g.contains_coordinate_permutations():
        # the orbit is permutation invariant, so each sym term is |S_m pattern| copies of one monomial
        for coef, pattern in h.terms:
            beta = tuple(pattern) + (0,) * (h.dim - len(pattern))
            n_perm = len(_distinct_permutations(pattern, h.dim))
            s = ZERO
            for p in pts:
                s = s + _monomial(p, beta)
            total = total + coef * n_perm * s
    else:
        for p in pts:
            total = total + h.evaluate(p)
    return total * scale ** h.degree


def eval_at_corner(spec: InvariantSpec, g: ReflectionGroupData, k: int,
                   normalized: bool = True) -> FieldElement:
    """f(v_k') (or f(v_k) with ``normalized=False``)."""
    form = spec.form
    d = spec.degree
    v = g.corner_vectors[k - 1]
    if isinstance(form, SymCombination):
        val = form.evaluate(v)
    else:
        orb = corner_orbit(g, k)
        if isinstance(form.base, ZonalPolynomial):
            s = _orbit_stat_zonal(orb, form.base, ONE)
        else:
            s = _orbit_stat_sym(orb, form.base, ONE)
        val = s * Fraction(g.order, orb.size)
    if not normalized:
        return val
    n2 = g.corner_norm_sq(k)
    if d % 2 == 0:
        return val / n2 ** (d // 2)
    return val / (n2.sqrt() ** d)


def eval_invariant(spec: InvariantSpec, g: ReflectionGroupData, x: Sequence, cap: int = 1_000_000) -> FieldElement:
    x = tuple(as_field(c) for c in x)
    if len(x) != g.dim or spec.dim != g.dim:
        raise ValueError("dimension mismatch between spec, group and point")
    form = spec.form
    if isinstance(form, SymCombination):
        return form.evaluate(x)
    if all(c.is_zero() for c in x):
        return ZERO
    pair = [dot(x, a) for a in g.roots]
    support = [i for i, c in enumerate(pair) if not c.is_zero()]
    if len(support) == 1 and x == tuple(c * pair[support[0]] for c in g.corner_vectors[support[0]]):
        k = support[0] + 1
        return eval_at_corner(spec, g, k, normalized=False) * pair[support[0]] ** spec.degree
    pts = orbit(g, x, cap)
    total = ZERO
    for y in pts:
        total = total + form.base.evaluate(y)
    return total * Fraction(g.order, len(pts))


def sym(dim: int, *terms) -> SymCombination:
    """sym(dim, (coef, pattern), ...) with coefficients in the field."""
    return SymCombination(dim, tuple((as_field(c), tuple(p)) for c, p in terms))


def zonal(dim: int, *terms) -> ZonalPolynomial:
    """zonal(dim, (coef, a, b), ...) or (coef, a, c, b) for a factor x2**c."""
    out = []
    for t in terms:
        if len(t) == 3:
            c0, a, b = t
            out.append((as_field(c0), a, 0, b))
        else:
            c0, a, c, b = t
            out.append((as_field(c0), a, c, b))
    return ZonalPolynomial(dim, tuple(out))
