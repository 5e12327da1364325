"""Cubature formulae with exact verification and domain transforms.

A formula is a list of orbits.  Each orbit carries a representative point and
a weight per point, plus a kind:

``point``  the representative alone
``L``      all placements of a two-valued pattern v_l(a, b) (a in l slots, b elsewhere)
``sign``   all sign changes of the nonzero coordinates of the representative
``B``      placements and sign changes combined

Moment sums over structured orbits are computed in closed form, so large
orbits are never materialized during verification.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import mpmath
import numpy as np

from . import kernels
from .exactnum import (
    DEFAULT_PRECISION,
    ONE,
    ZERO,
    FieldElement,
    as_field,
    field_to_float,
    parse,
    render,
)
from .moments import domain_moment, monomials, radial_factor

DOMAINS = ("sphere", "gaussian", "orthant")
KINDS = ("point", "L", "sign", "B")


def _int_root(n: int, k: int) -> int | None:
    if n < 0:
        return None
    r = round(n ** (1.0 / k)) if n < 1 << 1000 else int(mpmath.floor(mpmath.root(n, k)))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == n:
            return c
    return None


def _frac_root(x: Fraction, k: int) -> Fraction | None:
    a, b = _int_root(x.numerator, k), _int_root(x.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class RadialScale:
    """Radius r = s**(1/q), stored in lowest form."""

    s: Fraction
    q: int = 1

    def __post_init__(self):
        s, q = Fraction(self.s), int(self.q)
        if s <= 0 or q < 1:
            raise ValueError("radial scale needs s > 0 and q >= 1")
        changed = True
        while changed:
            changed = False
            for p in _prime_factors(q):
                root = _frac_root(s, p)
                if root is not None:
                    s, q = root, q // p
                    changed = True
                    break
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "q", q)

    def power(self, k: int) -> Fraction | None:
        """r**k when rational, else None."""
        if k % self.q == 0:
            return self.s ** (k // self.q)
        root = _frac_root(self.s ** k, self.q)
        return root

    def to_float(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
        with mpmath.workprec(prec):
            return mpmath.root(mpmath.mpf(self.s.numerator) / self.s.denominator, self.q)

    def __str__(self) -> str:
        return f"{self.s}^(1/{self.q})"


UNIT = RadialScale(Fraction(1), 1)


@dataclass(frozen=True)
class CubPoint:
    direction: tuple[FieldElement, ...]
    scale: RadialScale = UNIT

    def __post_init__(self):
        d = tuple(as_field(x) for x in self.direction)
        if all(x.is_zero() for x in d):
            raise ValueError("zero direction")
        object.__setattr__(self, "direction", d)

    @property
    def m(self) -> int:
        return len(self.direction)

    def weight_count(self) -> int:
        return sum(1 for x in self.direction if not x.is_zero())

    @cached_property
    def rational_direction(self) -> tuple[Fraction, ...] | None:
        if all(x.is_rational() for x in self.direction):
            return tuple(x.to_fraction() for x in self.direction)
        return None

    def norm_sq(self) -> FieldElement:
        return self._norm_sq

    @cached_property
    def _norm_sq(self) -> FieldElement:
        rd = self.rational_direction
        if rd is not None:
            return FieldElement(sum(x * x for x in rd))
        return sum((x * x for x in self.direction), ZERO)

    def negate(self) -> "CubPoint":
        return CubPoint(tuple(-x for x in self.direction), self.scale)

    def coordinates_float(self, prec: int = DEFAULT_PRECISION) -> list[mpmath.mpf]:
        r = self.scale.to_float(prec)
        with mpmath.workprec(prec):
            return [r * field_to_float(x, prec) for x in self.direction]


@dataclass(frozen=True)
class Orbit:
    kind: str
    rep: CubPoint
    weight: Fraction | FieldElement  # per point
    l: int | None = None  # pattern length for L and B

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown orbit kind {self.kind!r}")
        w = self.weight
        object.__setattr__(self, "weight", w if isinstance(w, FieldElement) else as_field(Fraction(w)))
        if self.kind in ("L", "B"):
            if self.l is None or not 1 <= self.l <= self.rep.m:
                raise ValueError("pattern orbit needs 1 <= l <= m")
            a, b = self.pattern
            if any(x != a for x in self.rep.direction[: self.l]) or any(
                x != b for x in self.rep.direction[self.l:]
            ):
                raise ValueError("representative is not a two-valued pattern v_l(a, b)")
            if self.l < self.rep.m and a == b:
                raise ValueError("pattern values must differ")

    @property
    def pattern(self) -> tuple[FieldElement, FieldElement]:
        d = self.rep.direction
        return d[0], (d[self.l] if self.l < len(d) else ZERO)

    def size(self) -> int:
        m = self.rep.m
        if self.kind == "point":
            return 1
        if self.kind == "sign":
            return 1 << self.rep.weight_count()
        n_place = math.comb(m, self.l)
        if self.kind == "L":
            return n_place
        return n_place * (1 << self.rep.weight_count())

    def total_weight(self) -> FieldElement:
        return self.weight * self.size()

    def points(self) -> list[CubPoint]:
        m = self.rep.m
        if self.kind == "point":
            return [self.rep]
        if self.kind in ("L", "B"):
            a, b = self.pattern
            placed = []
            for T in itertools.combinations(range(m), self.l):
                s = set(T)
                placed.append(tuple(a if i in s else b for i in range(m)))
        else:
            placed = [self.rep.direction]
        if self.kind == "L":
            return [CubPoint(d, self.rep.scale) for d in placed]
        out = []
        for d in placed:
            nz = [i for i, x in enumerate(d) if not x.is_zero()]
            for signs in itertools.product((1, -1), repeat=len(nz)):
                e = list(d)
                for i, sg in zip(nz, signs):
                    if sg < 0:
                        e[i] = -e[i]
                out.append(CubPoint(tuple(e), self.rep.scale))
        return out

    def monomial_sum(self, alpha: Sequence[int]) -> FieldElement:
        """Sum of direction**alpha over the orbit (scale excluded)."""
        d = self.rep.direction
        if self.kind == "point":
            return _mono(d, alpha)
        if self.kind == "sign":
            for i, e in enumerate(alpha):
                if e and (e % 2 or d[i].is_zero()):
                    return ZERO
            return _mono(d, alpha) * (1 << self.rep.weight_count())
        if self.kind == "B" and any(e % 2 for e in alpha):
            return ZERO
        total = _pattern_sum(self.rep.m, self.l, *self.pattern, alpha)
        if self.kind == "B":
            total = total * (1 << self.rep.weight_count())
        return total


def _mono(d: Sequence[FieldElement], alpha: Sequence[int]) -> FieldElement:
    out = ONE
    for x, e in zip(d, alpha):
        if e:
            if x.is_zero():
                return ZERO
            out = out * x ** e
    return out


def _pattern_sum(m: int, l: int, a: FieldElement, b: FieldElement, alpha) -> FieldElement:
    """Sum over the C(m, l) placements of v_l(a, b) of x**alpha."""
    supp = [e for e in alpha if e]
    s = len(supp)
    if b.is_zero():
        if s > l:
            return ZERO
        return a ** sum(supp) * math.comb(m - s, l - s)
    total = ZERO
    for mask in range(1 << s):
        k = bin(mask).count("1")
        cnt = math.comb(m - s, l - k) if 0 <= l - k <= m - s else 0
        if not cnt:
            continue
        ea = sum(supp[i] for i in range(s) if mask >> i & 1)
        total = total + (a ** ea) * (b ** (sum(supp) - ea)) * cnt
    return total


@dataclass(frozen=True)
class CubatureFormula:
    domain: str
    m: int
    orbits: tuple[Orbit, ...]
    mode: str | None = None  # "index" or "degree"
    order: int | None = None
    centrally_symmetric: bool = False
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        object.__setattr__(self, "orbits", tuple(self.orbits))
        for o in self.orbits:
            if o.rep.m != self.m:
                raise ValueError("orbit dimension differs from formula dimension")
            if o.weight.sign() <= 0:
                raise ValueError("weights must be positive")

    @property
    def size(self) -> int:
        return sum(o.size() for o in self.orbits)

    def total_weight(self) -> FieldElement:
        return sum((o.total_weight() for o in self.orbits), ZERO)

    def expanded(self, cap: int = 2_000_000) -> list[tuple[CubPoint, FieldElement]]:
        if self.size > cap:
            raise ValueError(f"formula has {self.size} points, above expansion cap {cap}")
        return [(p, o.weight) for o in self.orbits for p in o.points()]

    def with_steps(self, *steps: str, **changes) -> "CubatureFormula":
        return replace(self, provenance=self.provenance + steps, **changes)


@dataclass
class VerificationReport:
    mode: str
    order: int
    exact: bool
    failures: list[tuple[tuple[int, ...], object]] = field(default_factory=list)
    checked: int = 0

    @property
    def valid(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.valid


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _orbit_factor(F: CubatureFormula, o: Orbit, k: int):
    """Exact factor (FieldElement) or None, and a float fallback thunk."""
    if F.domain == "sphere":
        nsq = o.rep.norm_sq()
        if k % 2 == 0:
            return 1 / nsq ** (k // 2)
        try:
            return 1 / nsq.sqrt() ** k
        except ValueError:
            return None
    r = o.rep.scale.power(k)
    return None if r is None else as_field(r)


def _orbit_factor_float(F: CubatureFormula, o: Orbit, k: int, prec: int):
    with mpmath.workprec(prec):
        if F.domain == "sphere":
            return 1 / mpmath.sqrt(field_to_float(o.rep.norm_sq(), prec)) ** k
        return o.rep.scale.to_float(prec) ** k


def _rational_direction(o: Orbit):
    """Integer direction and common denominator, or None if irrational."""
    fr = o.rep.rational_direction
    if fr is None:
        return None
    den = math.lcm(*(f.denominator for f in fr))
    return [int(f * den) for f in fr], den


def moment_sums(F: CubatureFormula, exps: list[tuple[int, ...]], prec: int = DEFAULT_PRECISION):
    """Return (exact sums, float corrections or None, exact flag) per exponent."""
    exact_tot = [ZERO] * len(exps)
    float_tot: list | None = None
    exact = True
    by_degree: dict[int, list[int]] = defaultdict(list)
    for i, a in enumerate(exps):
        by_degree[sum(a)].append(i)

    # vectorizable point orbits grouped by (weight, factor source, denominator)
    groups: dict[tuple, list[list[int]]] = defaultdict(list)
    structured: list[Orbit] = []
    for o in F.orbits:
        rd = _rational_direction(o) if o.kind == "point" else None
        if rd is None:
            structured.append(o)
            continue
        key = (o.weight, o.rep.scale, o.rep.norm_sq() if F.domain == "sphere" else None, rd[1])
        groups[key].append(rd[0])

    for k, idx in by_degree.items():
        sub = [exps[i] for i in idx]
        for (w, scale, nsq, den), dirs in groups.items():
            factor = _group_factor(F, scale, nsq, k)
            D = np.array(dirs, dtype=np.int64)
            sums = _power_sums(D, sub)
            coef = w / den ** k
            for j, i in enumerate(idx):
                val = sums[j]
                if not val:
                    continue
                if factor is not None:
                    exact_tot[i] = exact_tot[i] + coef * factor * val
                else:
                    exact = False
                    float_tot = float_tot or [mpmath.mpf(0)] * len(exps)
                    ff = _float_group_factor(F, scale, nsq, k, prec)
                    with mpmath.workprec(prec):
                        float_tot[i] += field_to_float(coef * val, prec) * ff
        for o in structured:
            factor = _orbit_factor(F, o, k)
            for i in idx:
                s = o.monomial_sum(exps[i])
                if s.is_zero():
                    continue
                if factor is not None:
                    exact_tot[i] = exact_tot[i] + o.weight * s * factor
                else:
                    exact = False
                    float_tot = float_tot or [mpmath.mpf(0)] * len(exps)
                    with mpmath.workprec(prec):
                        float_tot[i] += field_to_float(o.weight * s, prec) * _orbit_factor_float(F, o, k, prec)
    return exact_tot, float_tot, exact


def _group_factor(F, scale, nsq, k):
    if F.domain == "sphere":
        if k % 2 == 0:
            return 1 / nsq ** (k // 2)
        try:
            return 1 / nsq.sqrt() ** k
        except ValueError:
            return None
    r = scale.power(k)
    return None if r is None else as_field(r)


def _float_group_factor(F, scale, nsq, k, prec):
    with mpmath.workprec(prec):
        if F.domain == "sphere":
            return 1 / mpmath.sqrt(field_to_float(nsq, prec)) ** k
        return scale.to_float(prec) ** k


_CHUNK_CELLS = 4_000_000


def _power_sums(D: np.ndarray, exps: list[tuple[int, ...]]) -> list[int]:
    """Column sums of the monomial table D**exps as Python ints (exact)."""
    if not exps:
        return []
    deg = max(sum(e) for e in exps)
    peak = int(np.abs(D).max()) if D.size else 0
    n = D.shape[0]
    safe = peak <= 1 or (deg * math.log2(max(peak, 2)) + math.log2(max(n, 2)) < 62)
    E = np.array(exps, dtype=np.int64)
    out: list[int] = []
    if not safe:
        for e in exps:
            out.append(sum(math.prod(int(x) ** int(p) for x, p in zip(row, e)) for row in D))
        return out
    step = max(1, _CHUNK_CELLS // max(n, 1))
    for start in range(0, len(exps), step):
        table = kernels.power_table(np.ascontiguousarray(D), np.ascontiguousarray(E[start:start + step]))
        out.extend(int(x) for x in table.sum(axis=0))
    return out


def _report(F: CubatureFormula, exps, mode: str, order: int, prec: int) -> VerificationReport:
    exact_tot, float_tot, exact = moment_sums(F, exps, prec)
    tol = mpmath.mpf(2) ** (-128)
    failures = []
    for i, a in enumerate(exps):
        target = domain_moment(F.domain, a)
        if float_tot is None:
            resid = exact_tot[i] - target
            if not resid.is_zero():
                failures.append((a, resid))
        else:
            with mpmath.workprec(prec):
                resid = field_to_float(exact_tot[i] - target, prec) + float_tot[i]
                if abs(resid) > tol:
                    failures.append((a, resid))
    return VerificationReport(mode, order, exact, failures, len(exps))


def _check_dims(F: CubatureFormula):
    if F.domain == "sphere" and F.m < 2:
        raise ValueError("sphere formulas need m >= 2")


def verify_index(F: CubatureFormula, q: int, prec: int = DEFAULT_PRECISION) -> VerificationReport:
    if q < 0:
        raise ValueError("index must be nonnegative")
    _check_dims(F)
    return _report(F, monomials(F.m, q), "index", q, prec)


def verify_degree(F: CubatureFormula, t: int, prec: int = DEFAULT_PRECISION) -> VerificationReport:
    if t < 0:
        raise ValueError("degree must be nonnegative")
    _check_dims(F)
    exps = []
    for k in range(t + 1):
        if k % 2 and F.centrally_symmetric:
            continue
        exps.extend(monomials(F.m, k))
    return _report(F, exps, "degree", t, prec)


# ---------------------------------------------------------------------------
# orbit constructors and catalog
# ---------------------------------------------------------------------------

def pattern_point(m: int, l: int, a=1, b=0, scale: RadialScale = UNIT) -> CubPoint:
    a, b = as_field(a), as_field(b)
    return CubPoint(tuple([a] * l + [b] * (m - l)), scale)


def pattern_orbit(m: int, l: int, a=1, b=0, group: str = "L",
                  scale: RadialScale = UNIT) -> list[CubPoint]:
    kind = {"L": "L", "sign": "sign", "Lsign": "sign", "B": "B"}[group]
    rep = pattern_point(m, l, a, b, scale)
    if kind == "sign":
        return Orbit("sign", rep, 1).points()
    return Orbit(kind, rep, 1, l).points()


def l_orbit(m: int, l: int, weight, scale: RadialScale, a=1, b=0) -> Orbit:
    return Orbit("L", pattern_point(m, l, a, b, scale), weight, l)


CATALOG_NAMES = ("lem42i", "lem42ii", "lem62i", "lem62ii", "ex45", "ex46")


def _orbit_counts(m: int, l: int, alpha_support: int) -> int:
    return math.comb(m - alpha_support, l - alpha_support) if l >= alpha_support else 0


def derive_cube_scales(m: int, layout: list[tuple[list[int], Fraction]], q: int = 3) -> list[Fraction]:
    """Solve the index-q orthant moment equations for the radii of a 0/1 pattern formula.

    ``layout`` lists, per unknown radius, the pattern lengths sharing that radius
    and the per-point weight.  Returns r**q for each entry.
    """
    # one equation per exponent class: a partition of q with at most m parts
    parts = [p for p in _partitions(q) if len(p) <= m]
    rows, rhs = [], []
    for p in parts:
        alpha = tuple(p) + (0,) * (m - len(p))
        row = []
        for ls, w in layout:
            row.append(w * sum(_orbit_counts(m, l, len(p)) for l in ls))
        rows.append(row)
        rhs.append(domain_moment("orthant", alpha))
    sol = _solve_consistent(rows, rhs)
    if sol is None:
        raise ValueError("moment equations are inconsistent for this layout")
    return sol


def _partitions(n: int, cap: int | None = None) -> list[tuple[int, ...]]:
    cap = n if cap is None else cap
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, cap), 0, -1):
        out.extend((first,) + rest for rest in _partitions(n - first, first))
    return out


def _solve_consistent(rows, rhs) -> list[Fraction] | None:
    n = len(rows[0])
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug):
        return None
    if len(piv_cols) < n:
        raise ValueError("radii are not determined by the moment equations")
    return [aug[i][n] for i in range(n)]


def catalog_formula(name: str, m: int, variant: str = "derived") -> CubatureFormula:
    """Orthant formulas with 0/1 pattern orbits.

    ``variant='printed'`` keeps the radii exactly as published; ``'derived'``
    re-solves the moment equations where the published radii fail them
    (only the index-3 families differ).
    """
    F = Fraction
    if name == "lem42i":
        if m < 3:
            raise ValueError("lem42i needs m >= 3")
        orbits = [l_orbit(m, 1, F(1, 2 * m), RadialScale(4 * m, 2)),
                  l_orbit(m, m, F(1, 2), RadialScale(2, 2))]
        q = 2
    elif name == "lem42ii":
        if m < 4 or m % 3 != 1:
            raise ValueError("lem42ii needs m = 1 mod 3, m >= 4")
        k = (m + 2) // 3
        orbits = [l_orbit(m, k, F(1, math.comb(m, k)), RadialScale(F(9 * m, m + 2), 2))]
        q = 2
    elif name == "lem62i":
        if m < 8 or m % 6 != 2:
            raise ValueError("lem62i needs m = 2 mod 6, m >= 8")
        k = (m + 10) // 6
        w = [F(1, 3), F(1, 3 * m), F(1, 3 * math.comb(m, k))]
        if variant == "printed":
            s = [F(12, 5), F(216 * m, m + 4), F(1296 * m * (m - 1), (m + 4) * (m + 10))]
        else:
            s = derive_cube_scales(m, [([m], w[0]), ([1], w[1]), ([k], w[2])])
        orbits = [l_orbit(m, m, w[0], RadialScale(s[0], 3)),
                  l_orbit(m, 1, w[1], RadialScale(s[1], 3)),
                  l_orbit(m, k, w[2], RadialScale(s[2], 3))]
        q = 3
    elif name == "lem62ii":
        if m < 7 or m % 6 != 1:
            raise ValueError("lem62ii needs m = 1 mod 6, m >= 7")
        k1, k2 = (m + 11) // 6, (m + 5) // 6
        w = [F(1, 3), F(1, 3 * m), F(1, 3 * math.comb(m + 1, k1))]
        if variant == "printed":
            joint = F(1296 * m * (m + 1), (m + 5) * (m + 11))
            s = [F(9, 5), F(1, 3 * m) ** 3, joint]
        else:
            s = derive_cube_scales(m, [([m], w[0]), ([1], w[1]), ([k1, k2], w[2])])
        orbits = [l_orbit(m, m, w[0], RadialScale(s[0], 3)),
                  l_orbit(m, 1, w[1], RadialScale(s[1], 3)),
                  l_orbit(m, k1, w[2], RadialScale(s[2], 3)),
                  l_orbit(m, k2, w[2], RadialScale(s[2], 3))]
        q = 3
    elif name == "ex45":
        if m != 7:
            raise ValueError("ex45 is 7-dimensional")
        orbits = [l_orbit(7, 4, F(1, 140), RadialScale(28, 3)),
                  l_orbit(7, 3, F(1, 140), RadialScale(28, 3)),
                  l_orbit(7, 1, F(1, 14), RadialScale(112, 3))]
        q = 3
    elif name == "ex46":
        if m != 9:
            raise ValueError("ex46 is 9-dimensional")
        orbits = [l_orbit(9, 9, F(1, 3), UNIT),
                  l_orbit(9, 4, F(1, 630), RadialScale(60, 3)),
                  l_orbit(9, 3, F(1, 630), RadialScale(60, 3)),
                  l_orbit(9, 1, F(1, 27), RadialScale(180, 3))]
        q = 3
    else:
        raise KeyError(f"unknown catalog formula {name!r}")
    step = f"catalog {name} m={m}" + (" (published radii)" if variant == "printed" else "")
    return CubatureFormula("orthant", m, tuple(orbits), "index", q, False, (step,))


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def _canonical_sphere_direction(d: tuple[FieldElement, ...]) -> tuple:
    if all(x.is_rational() for x in d):
        fr = [x.to_fraction() for x in d]
        lead = abs(next(x for x in fr if x))
        return tuple(x / lead for x in fr)
    lead = next(x for x in d if not x.is_zero())
    lead = abs(lead)
    return tuple(x / lead for x in d)


def _point_key(domain: str, p: CubPoint):
    if domain == "sphere":
        return _canonical_sphere_direction(p.direction)
    if p.rational_direction is not None:
        return (p.rational_direction, p.scale)
    return (p.direction, p.scale)


def dedup(F: CubatureFormula) -> CubatureFormula:
    """Merge repeated orbits and repeated explicit points, summing weights."""
    merged: dict = {}
    order = []
    for o in F.orbits:
        if o.kind == "point":
            key = ("point", _point_key(F.domain, o.rep))
        else:
            key = (o.kind, o.l, o.rep.direction, o.rep.scale if F.domain != "sphere" else None)
        if key in merged:
            prev = merged[key]
            merged[key] = replace(prev, weight=prev.weight + o.weight)
        else:
            merged[key] = o
            order.append(key)
    return replace(F, orbits=tuple(merged[k] for k in order))


def explicit(F: CubatureFormula, cap: int = 2_000_000) -> CubatureFormula:
    orbits = tuple(Orbit("point", p, w) for p, w in F.expanded(cap))
    return replace(F, orbits=orbits)


def to_sphere(F: CubatureFormula, q: int | None = None) -> CubatureFormula:
    if F.domain != "gaussian":
        raise ValueError("to_sphere expects a gaussian-domain formula")
    q = F.order if q is None else q
    if q is None:
        raise ValueError("index not stated")
    if F.mode == "degree" and not F.centrally_symmetric:
        raise ValueError("degree-mode formula without central symmetry: index transform refused")
    if q % 2:
        raise ValueError("to_sphere needs an even index")
    rf = radial_factor("gaussian", F.m, q)
    orbits = []
    for o in F.orbits:
        rq = o.rep.scale.power(q)
        if rq is None:
            raise ValueError(f"r^{q} is irrational for scale {o.rep.scale}")
        w = o.weight * rq * o.rep.norm_sq() ** (q // 2) / rf
        orbits.append(replace(o, rep=CubPoint(o.rep.direction, UNIT), weight=w))
    return CubatureFormula("sphere", F.m, tuple(orbits), "index", q, F.centrally_symmetric,
                           F.provenance + (f"to sphere at index {q}",))


def double_antipodal(F: CubatureFormula) -> CubatureFormula:
    orbits = []
    for o in F.orbits:
        if o.kind in ("sign", "B"):
            orbits.append(o)
            continue
        for p in o.points():
            orbits.append(Orbit("point", p, o.weight / 2))
            orbits.append(Orbit("point", p.negate(), o.weight / 2))
    return dedup(replace(F, orbits=tuple(orbits), centrally_symmetric=True,
                         provenance=F.provenance + ("antipodal doubling",)))


def halve_antipodal(F: CubatureFormula, cap: int = 2_000_000) -> CubatureFormula:
    pts: dict = {}
    order = []
    for p, w in F.expanded(cap):
        key = _point_key(F.domain, p)
        if key in pts:
            pts[key] = (pts[key][0], pts[key][1] + w)
        else:
            pts[key] = (p, w)
            order.append(key)
    kept = []
    seen = set()
    for key in order:
        if key in seen:
            continue
        p, w = pts[key]
        nkey = _point_key(F.domain, p.negate())
        if nkey not in pts or pts[nkey][1] != w:
            raise ValueError("point set is not antipodal with matching weights")
        seen.add(key)
        seen.add(nkey)
        lead = next(x for x in p.direction if not x.is_zero())
        rep = p if lead.sign() > 0 else pts[nkey][0]
        kept.append(Orbit("point", rep, 2 * w))
    return CubatureFormula(F.domain, F.m, tuple(kept), F.mode, F.order, False,
                           F.provenance + ("antipodal halving",))


def _sqrt_field(x: FieldElement) -> FieldElement:
    if x.sign() < 0:
        raise ValueError("negative coordinate under square root")
    return x.sqrt()


def _scale_sqrt(s: RadialScale) -> RadialScale:
    return RadialScale(s.s, 2 * s.q)


def _scale_square(s: RadialScale) -> RadialScale:
    return RadialScale(s.s ** 2, s.q)


def sqrt_points(F: CubatureFormula) -> CubatureFormula:
    """Orthant -> gaussian: each point z becomes the sign orbit of sqrt(z)."""
    if F.domain != "orthant":
        raise ValueError("sqrt_points expects an orthant-domain formula")
    orbits = []
    for o in F.orbits:
        d = tuple(_sqrt_field(x) for x in o.rep.direction)
        rep = CubPoint(d, _scale_sqrt(o.rep.scale))
        wt = rep.weight_count()
        if o.kind == "point":
            orbits.append(Orbit("sign", rep, o.weight / (1 << wt)))
        elif o.kind == "L":
            orbits.append(Orbit("B", rep, o.weight / (1 << wt), o.l))
        else:
            raise ValueError("orthant formula carries sign orbits")
    order = None if F.order is None else 2 * F.order
    return CubatureFormula("gaussian", F.m, tuple(orbits), F.mode, order, True,
                           F.provenance + ("square-root lift to the gaussian integral",))


def square_points(F: CubatureFormula) -> CubatureFormula:
    """Gaussian -> orthant for sign-invariant (orbit-annotated) formulas."""
    if F.domain != "gaussian":
        raise ValueError("square_points expects a gaussian-domain formula")
    orbits = []
    for o in F.orbits:
        if o.kind not in ("sign", "B"):
            raise ValueError("missing sign-orbit annotation")
        d = tuple(x * x for x in o.rep.direction)
        rep = CubPoint(d, _scale_square(o.rep.scale))
        w = o.weight * (1 << o.rep.weight_count())
        if o.kind == "sign":
            orbits.append(Orbit("point", rep, w))
        else:
            orbits.append(Orbit("L", rep, w, o.l))
    if F.order is not None and F.order % 2:
        raise ValueError("odd order cannot be halved")
    order = None if F.order is None else F.order // 2
    return CubatureFormula("orthant", F.m, tuple(orbits), F.mode, order, False,
                           F.provenance + ("squaring to the orthant integral",))


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def _fe(x: FieldElement) -> str:
    return render(x).replace(" ", "")


def _weight_text(w: FieldElement) -> str:
    return str(w.to_fraction()) if w.is_rational() else _fe(w)


def dumps(F: CubatureFormula) -> str:
    lines = [f"domain {F.domain}", f"m {F.m}"]
    if F.mode:
        lines.append(f"{F.mode} {F.order}")
    if F.centrally_symmetric:
        lines.append("symmetric yes")
    for step in F.provenance:
        lines.append(f"# {step}")
    for o in F.orbits:
        body = f"{o.rep.scale.s} {o.rep.scale.q} | {', '.join(_fe(x) for x in o.rep.direction)} | {_weight_text(o.weight)}"
        if o.kind == "point":
            lines.append(body)
        elif o.kind == "sign":
            lines.append(f"sign | {body}")
        else:
            lines.append(f"{o.kind} {o.l} | {body}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> CubatureFormula:
    domain, m, mode, order, sym = None, None, None, None, False
    prov: list[str] = []
    orbits = []
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln:
            continue
        if ln.startswith("#"):
            prov.append(ln[1:].strip())
            continue
        head = ln.split()[0]
        if "|" not in ln:
            key, val = ln.split(None, 1)
            if key == "domain":
                domain = val.strip()
            elif key == "m":
                m = int(val)
            elif key in ("index", "degree"):
                mode, order = key, int(val)
            elif key == "symmetric":
                sym = val.strip().lower() in ("yes", "true", "1")
            else:
                raise ValueError(f"unknown header line {ln!r}")
            continue
        fields = [f.strip() for f in ln.split("|")]
        kind, l = "point", None
        if head in ("sign", "L", "B"):
            tag = fields.pop(0).split()
            kind = tag[0]
            l = int(tag[1]) if len(tag) > 1 else None
        s_txt, q_txt = fields[0].split()
        direction = tuple(parse(x) for x in fields[1].split(","))
        weight = parse(fields[2])
        rep = CubPoint(direction, RadialScale(Fraction(s_txt), int(q_txt)))
        orbits.append(Orbit(kind, rep, weight, l))
    if domain is None or m is None:
        raise ValueError("missing domain or m header")
    return CubatureFormula(domain, m, tuple(orbits), mode, order, sym, tuple(prov))


def read_formula(path: str | Path) -> CubatureFormula:
    return loads(Path(path).read_text())


def write_formula(F: CubatureFormula, path: str | Path) -> None:
    Path(path).write_text(dumps(F))
