"""Designs built from corner-vector orbits of a reflection group.

A weighted union of orbits r_k * (v_k')^G is a Euclidean t-design exactly when
sum_k N_k w_k r_k^(2j+l) phi(v_k') = 0 for every G-invariant harmonic phi of degree
1 <= l <= t and 0 <= j <= (t - l) // 2.  Everything here reduces to the u-vectors
u_d[k] = f_d(v_k').
"""
from __future__ import annotations

import ast
import itertools
import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import mpmath

from ..cubature import (
    UNIT,
    CubatureFormula,
    CubPoint,
    Orbit,
    RadialScale,
    VerificationReport,
)
from ..datafiles import data_file
from ..exactnum import ONE, ZERO, FieldElement, as_field, row_reduce
from .basis import invariant_basis, printed_u
from .groups import ReflectionGroupData, group_data, orbit
from .invariants import InvariantSpec, eval_at_corner, molien_dims


class BasisUnavailable(LookupError):
    """No invariant harmonic basis is shipped for a degree the check needs."""


# ---------------------------------------------------------------------------
# u-vectors
# ---------------------------------------------------------------------------

def _group(g) -> ReflectionGroupData:
    return group_data(g) if isinstance(g, str) else g


@lru_cache(maxsize=None)
def _u_vectors(label: str) -> dict[str, tuple[FieldElement, ...]]:
    g = group_data(label)
    return {
        spec.label: tuple(eval_at_corner(spec, g, k) for k in range(1, g.rank + 1))
        for spec in invariant_basis(label)
    }


def u_vectors(g) -> dict[str, list[FieldElement]]:
    """Degree label -> [f(v_1'), ..., f(v_m')] for every shipped basis polynomial."""
    g = _group(g)
    try:
        table = _u_vectors(g.label)
    except KeyError as exc:
        raise BasisUnavailable(str(exc)) from None
    return {k: list(v) for k, v in table.items()}


def _degree_of(label: str) -> int:
    return int(label.split(",")[0])


def _specs_by_degree(g: ReflectionGroupData) -> dict[int, list[InvariantSpec]]:
    try:
        specs = invariant_basis(g.label)
    except KeyError:
        return {}
    out: dict[int, list[InvariantSpec]] = {}
    for s in specs:
        out.setdefault(s.degree, []).append(s)
    return out


def _require_basis(g: ReflectionGroupData, degrees) -> dict[int, list[InvariantSpec]]:
    degrees = list(degrees)
    dims = molien_dims(g, max(degrees, default=0))
    have = _specs_by_degree(g)
    for d in degrees:
        if dims[d] and len(have.get(d, [])) != dims[d]:
            raise BasisUnavailable(
                f"basis unavailable: {g.label} needs {dims[d]} invariant(s) of degree {d}, "
                f"{len(have.get(d, []))} shipped")
    return have


@dataclass(frozen=True)
class UTableComparison:
    label: str
    matches: bool
    scale: FieldElement | None  # computed / printed, when a single positive factor works
    mismatched: tuple[int, ...]  # 1-based corners disagreeing under that factor


def compare_with_printed(g) -> list[UTableComparison]:
    """Per degree: is the computed u-vector a single positive multiple of the printed one?"""
    g = _group(g)
    ours = u_vectors(g)
    out = []
    for label, ref in printed_u(g.label).items():
        mine = ours[label]
        anchor = next((i for i, x in enumerate(ref) if not x.is_zero()), None)
        scale = None if anchor is None else mine[anchor] / ref[anchor]
        if scale is None or scale.sign() <= 0:
            bad = tuple(range(1, len(ref) + 1))
            out.append(UTableComparison(label, False, None, bad))
            continue
        bad = tuple(k + 1 for k, (a, b) in enumerate(zip(mine, ref)) if a != scale * b)
        out.append(UTableComparison(label, not bad, scale, bad))
    return out


# ---------------------------------------------------------------------------
# exact positivity search
# ---------------------------------------------------------------------------

def _fm_eliminate(rows):
    """rows: list of (coeffs, rhs) meaning coeffs . a >= rhs.  Returns the elimination stack."""
    stack = []
    n = len(rows[0][0]) if rows else 0
    current = rows
    for k in reversed(range(n)):
        stack.append((k, current))
        pos = [r for r in current if r[0][k].sign() > 0]
        neg = [r for r in current if r[0][k].sign() < 0]
        nxt = [r for r in current if r[0][k].is_zero()]
        for (cp, bp), (cn, bn) in itertools.product(pos, neg):
            fp, fn = ONE / cp[k], ONE / (-cn[k])
            coeffs = tuple(x * fp + y * fn for x, y in zip(cp, cn))
            nxt.append((coeffs, bp * fp + bn * fn))
        current = _dedupe(nxt)
    return stack, current


def _dedupe(rows):
    seen, out = set(), []
    for coeffs, rhs in rows:
        lead = next((c for c in coeffs if not c.is_zero()), None)
        if lead is None:
            key = (coeffs, rhs)
        else:
            s = ONE / abs(lead)
            key = (tuple(c * s for c in coeffs), rhs * s)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def _simple_between(lo, hi) -> FieldElement:
    """A short number in [lo, hi] (either end may be None)."""
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return ZERO
    if lo is not None and lo > 0:
        cand = as_field(math.ceil(float(lo)))
        if cand < lo:
            cand = cand + 1
        if hi is None or cand <= hi:
            return cand
    if hi is not None and hi < 0:
        cand = as_field(math.floor(float(hi)))
        if cand > hi:
            cand = cand - 1
        if lo is None or cand >= lo:
            return cand
    if lo is None or hi is None:
        return lo if hi is None else hi
    for den in range(2, 4097):
        cand = as_field(Fraction(math.ceil(float(lo) * den), den))
        for c in (cand - Fraction(1, den), cand, cand + Fraction(1, den)):
            if lo <= c <= hi:
                return c
    return (lo + hi) / 2


def positive_combination(vectors: Sequence[Sequence[FieldElement]]):
    """Coefficients a with sum_i a_i v_i entrywise >= 1, or None when none exist."""
    vectors = [[as_field(x) for x in v] for v in vectors]
    if not vectors:
        return None
    width = len(vectors[0])
    rows = [(tuple(v[j] for v in vectors), ONE) for j in range(width)]
    stack, final = _fm_eliminate(rows)
    if any(rhs.sign() > 0 for _, rhs in final):
        return None
    values = [ZERO] * len(vectors)
    for k, system in reversed(stack):
        lo = hi = None
        for coeffs, rhs in system:
            c = coeffs[k]
            if c.is_zero():
                continue
            rest = rhs - sum((coeffs[i] * values[i] for i in range(k)), ZERO)
            bound = rest / c
            if c.sign() > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        values[k] = _simple_between(lo, hi)
    return values


@dataclass(frozen=True)
class PositivityCertificate:
    group: str
    degree: int
    coefficients: dict[str, FieldElement]
    vector: tuple[FieldElement, ...]

    @property
    def valid(self) -> bool:
        return all(x.sign() > 0 for x in self.vector)


@dataclass(frozen=True)
class NotFound:
    group: str
    degree: int
    reason: str

    def __bool__(self) -> bool:
        return False


def _combine(table: Mapping[str, Sequence[FieldElement]], coefficients: Mapping[str, object]):
    width = len(next(iter(table.values())))
    out = [ZERO] * width
    for label, c in coefficients.items():
        c = as_field(c)
        for j, x in enumerate(table[label]):
            out[j] = out[j] + c * x
    return tuple(out)


def certify_nonexistence(g, two_s: int, scales: Mapping[str, object] | None = None):
    """Search for a positive vector in the span of the even-degree u-vectors up to 2s.

    ``scales`` multiplies individual u-vectors by positive factors first; existence of
    a certificate does not depend on them.
    """
    g = _group(g)
    if two_s < 2 or two_s % 2:
        raise ValueError("degree must be a positive even integer")
    have = _require_basis(g, range(2, two_s + 1, 2))
    table = u_vectors(g) if have else {}
    labels = [s.label for d in sorted(have) if d % 2 == 0 and d <= two_s for s in have[d]]
    if not labels:
        return NotFound(g.label, two_s, "no invariant harmonic polynomial of even degree in range")
    scaled = {}
    for lab in labels:
        f = as_field((scales or {}).get(lab, 1))
        if f.sign() <= 0:
            raise ValueError("scales must be positive")
        scaled[lab] = [f * x for x in table[lab]]
    coeffs = positive_combination([scaled[lab] for lab in labels])
    if coeffs is None:
        return NotFound(g.label, two_s, "span of the u-vectors meets no positive vector")
    chosen = {lab: c for lab, c in zip(labels, coeffs) if not c.is_zero()}
    cert = PositivityCertificate(g.label, two_s, chosen, _combine(scaled, chosen))
    if not cert.valid:
        raise AssertionError("positivity search returned an invalid certificate")
    return cert


@dataclass(frozen=True)
class CertificateCheck:
    positive: bool
    literal: bool | None  # combination equals the given vector as is
    scales: dict[str, FieldElement] | None  # positive per-degree factors reproducing the vector

    @property
    def valid(self) -> bool:
        return self.positive and (self.literal is not False or self.scales is not None)


def validate_certificate(table: Mapping[str, Sequence], coefficients: Mapping[str, object],
                         vector: Sequence | None = None) -> CertificateCheck:
    """Check sum c_d u_d against ``vector``; fall back to positive per-degree rescaling."""
    combo = _combine(table, coefficients)
    if vector is None:
        return CertificateCheck(all(x.sign() > 0 for x in combo), None, None)
    vector = [as_field(x) for x in vector]
    positive = all(x.sign() > 0 for x in vector)
    if list(combo) == vector:
        return CertificateCheck(positive, True, {k: ONE for k in coefficients})
    labels = list(coefficients)
    cols = [[as_field(coefficients[lab]) * x for x in table[lab]] for lab in labels]
    rows = [[cols[i][j] for i in range(len(labels))] + [vector[j]] for j in range(len(vector))]
    rref, pivots = row_reduce(rows)
    n = len(labels)
    if n in pivots or len([p for p in pivots if p < n]) < n:
        return CertificateCheck(positive, False, None)
    sol = {labels[i]: rref[r][n] for r, i in enumerate(p for p in pivots if p < n)}
    if any(s.sign() <= 0 for s in sol.values()):
        return CertificateCheck(positive, False, None)
    return CertificateCheck(positive, False, sol)


# ---------------------------------------------------------------------------
# Euclidean design check
# ---------------------------------------------------------------------------

def _radius_power(r: RadialScale, e: int) -> FieldElement | None:
    p = r.power(e)
    if p is not None:
        return as_field(p)
    sq = r.power(2 * e)
    if sq is not None:
        try:
            return as_field(sq).sqrt()
        except ArithmeticError:
            return None
        except ValueError:
            return None
    return None


def euclidean_design_check(g, orbits: Sequence[tuple[int, RadialScale]], weights: Sequence,
                           t: int, prec: int = 256) -> VerificationReport:
    """Weights are per point; orbit k contributes N_k points of weight w_k at radius r_k."""
    g = _group(g)
    if len(orbits) != len(weights):
        raise ValueError("one weight per orbit")
    have = _require_basis(g, range(1, t + 1))
    table = u_vectors(g) if have else {}
    sizes = [orbit_size(g, k) for k, _ in orbits]
    weights = [as_field(w) for w in weights]
    report = VerificationReport("euclidean", t, True)
    for d in sorted(have):
        if d > t:
            continue
        for spec in have[d]:
            u = table[spec.label]
            for j in range((t - d) // 2 + 1):
                e = 2 * j + d
                total, exact = ZERO, True
                approx = mpmath.mpf(0)
                for (k, r), n, w in zip(orbits, sizes, weights):
                    rp = _radius_power(r, e)
                    term = w * n * u[k - 1]
                    if rp is None:
                        exact = False
                        with mpmath.workprec(prec):
                            approx += mpmath.mpf(float(term)) * r.to_float(prec) ** e
                    else:
                        total = total + term * rp
                report.checked += 1
                if exact:
                    if not total.is_zero():
                        report.failures.append(((spec.label, j), total))
                else:
                    report.exact = False
                    with mpmath.workprec(prec):
                        val = approx + mpmath.mpf(float(total))
                        if abs(val) > mpmath.mpf(2) ** (-40):
                            report.failures.append(((spec.label, j), val))
    return report


def orbit_size(g: ReflectionGroupData, k: int) -> int:
    from .groups import corner_orbit
    return corner_orbit(g, k).size


# ---------------------------------------------------------------------------
# weight classification
# ---------------------------------------------------------------------------

@dataclass
class WeightFamily:
    """w = base + sum_p params[p] * directions[p], restricted to w >= 0."""

    group: str
    t: int
    free: tuple[int, ...]  # 1-based indices of the free weights
    base: tuple[FieldElement, ...]
    directions: tuple[tuple[FieldElement, ...], ...]
    equations: tuple[tuple[FieldElement, ...], ...] = field(repr=False, default=())
    rhs: tuple[FieldElement, ...] = field(repr=False, default=())

    @property
    def empty(self) -> bool:
        return not self.vertices()

    def point(self, params: Sequence) -> tuple[FieldElement, ...]:
        params = [as_field(p) for p in params]
        out = list(self.base)
        for p, d in zip(params, self.directions):
            out = [a + p * b for a, b in zip(out, d)]
        return tuple(out)

    def residual(self, w: Sequence) -> tuple[FieldElement, ...]:
        w = [as_field(x) for x in w]
        return tuple(sum((a * x for a, x in zip(row, w)), ZERO) - b
                     for row, b in zip(self.equations, self.rhs))

    def contains(self, w: Sequence) -> bool:
        w = [as_field(x) for x in w]
        return all(r.is_zero() for r in self.residual(w)) and all(x.sign() >= 0 for x in w)

    def affine_in(self, free: Sequence[int]) -> dict[int, tuple[FieldElement, dict[int, FieldElement]]]:
        """Each weight as constant + linear combination of the chosen free weights (1-based)."""
        free = tuple(free)
        if len(free) != len(self.free):
            raise ValueError(f"family has {len(self.free)} free parameter(s)")
        m = len(self.base)
        dep = [i for i in range(1, m + 1) if i not in free]
        n = len(self.equations)
        rows = [[row[i - 1] for i in dep] + [-row[i - 1] for i in free] + [b]
                for row, b in zip(self.equations, self.rhs)]
        rref, pivots = row_reduce(rows)
        if [p for p in pivots if p < len(dep)] != list(range(len(dep))):
            raise ValueError("chosen free weights do not parametrize the family")
        out: dict[int, tuple[FieldElement, dict[int, FieldElement]]] = {}
        for r, i in enumerate(dep):
            row = rref[r]
            out[i] = (row[-1], {f: row[len(dep) + c] for c, f in enumerate(free)})
        for f in free:
            out[f] = (ZERO, {g: (ONE if g == f else ZERO) for g in free})
        del n
        return dict(sorted(out.items()))

    def parameter_interval(self):
        """[lo, hi] of the single free weight; only for one-parameter families."""
        if len(self.free) != 1:
            raise ValueError("interval form needs exactly one free parameter")
        lo = hi = None
        k = self.free[0] - 1
        for b, d in zip(self.base, self.directions[0]):
            # w = b + p*d >= 0, with p = w_k itself
            if d.is_zero():
                if b.sign() < 0:
                    return None
                continue
            bound = -b / d
            if d.sign() > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        del k
        if lo is not None and hi is not None and lo > hi:
            return None
        return lo, hi

    def vertices(self) -> list[tuple[FieldElement, ...]]:
        """Vertices of the polytope {w >= 0} within the affine family."""
        m, p = len(self.base), len(self.directions)
        if m == 0:
            return []  # the defining system is inconsistent
        if p == 0:
            w = self.base
            return [w] if all(x.sign() >= 0 for x in w) else []
        out = []
        for tight in itertools.combinations(range(m), p):
            mat = [[self.directions[c][i] for c in range(p)] + [-self.base[i]] for i in tight]
            rref, pivots = row_reduce(mat)
            if [q for q in pivots if q < p] != list(range(p)) or p in pivots:
                continue
            params = [rref[r][p] for r in range(p)]
            w = self.point(params)
            if all(x.sign() >= 0 for x in w) and w not in out:
                out.append(w)
        return out

    def samples(self, count: int = 3) -> list[tuple[FieldElement, ...]]:
        """Interior-ish members: the vertex centroid and pulls toward each vertex."""
        verts = self.vertices()
        if not verts:
            return []
        m = len(verts[0])
        centroid = tuple(sum((v[i] for v in verts), ZERO) / len(verts) for i in range(m))
        out = [centroid]
        for v in verts[: max(0, count - 1)]:
            out.append(tuple((2 * c + x) / 3 for c, x in zip(centroid, v)))
        return out


def classify_weights(g, t: int) -> WeightFamily:
    """Weights w_k >= 0 on the unit corner orbits making a spherical t-design."""
    g = _group(g)
    have = _require_basis(g, range(1, t + 1))
    table = u_vectors(g) if have else {}
    sizes = [orbit_size(g, k) for k in range(1, g.rank + 1)]
    eqs, rhs = [], []
    for d in sorted(have):
        if d > t:
            continue
        for spec in have[d]:
            eqs.append(tuple(n * x for n, x in zip(sizes, table[spec.label])))
            rhs.append(ZERO)
    eqs.append(tuple(as_field(n) for n in sizes))
    rhs.append(ONE)
    rows = [list(e) + [b] for e, b in zip(eqs, rhs)]
    rref, pivots = row_reduce(rows)
    m = g.rank
    if m in pivots:
        return WeightFamily(g.label, t, (), (), (), tuple(eqs), tuple(rhs))
    piv = [p for p in pivots if p < m]
    free = tuple(i for i in range(m) if i not in piv)
    base = [ZERO] * m
    for r, p in enumerate(piv):
        base[p] = rref[r][m]
    dirs = []
    for f in free:
        d = [ZERO] * m
        d[f] = ONE
        for r, p in enumerate(piv):
            d[p] = -rref[r][f]
        dirs.append(tuple(d))
    return WeightFamily(g.label, t, tuple(f + 1 for f in free), tuple(base), tuple(dirs),
                        tuple(eqs), tuple(rhs))


# ---------------------------------------------------------------------------
# reference families (data file)
# ---------------------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv}


def eval_expression(text: str, env: Mapping[str, Fraction]) -> Fraction:
    """Arithmetic over Fractions with names from ``env``; nothing else is allowed."""
    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise KeyError(f"unbound name {node.id!r} in {text!r}")
            return Fraction(env[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ValueError(f"unsupported syntax in {text!r}")
    return walk(ast.parse(text, mode="eval"))


@dataclass(frozen=True)
class ReferenceFamily:
    group: str
    degree: int
    ident: str
    weights: dict[str, str]
    constraints: tuple[tuple[str, dict], ...]

    @property
    def free(self) -> tuple[str, ...]:
        return tuple(v for v, c in self.constraints if "eq" not in c)

    def sample(self, fraction: Fraction = Fraction(1, 2)) -> tuple[Fraction, ...] | None:
        """Fill each bounded variable at ``fraction`` of its interval, in order.

        Returns None when an interval comes out empty (or degenerate while strict).
        """
        env: dict[str, Fraction] = {}
        for var, c in self.constraints:
            if "eq" in c:
                env[var] = eval_expression(c["eq"], env)
                continue
            lo = eval_expression(c["lo"], env)
            hi = eval_expression(c["hi"], env)
            if lo > hi or (lo == hi and (c["lo_strict"] or c["hi_strict"])):
                return None
            env[var] = lo + (hi - lo) * fraction
        for var, expr in self.weights.items():
            env[var] = eval_expression(expr, env)
        rank = max(int(v[1:]) for v in env)
        return tuple(env[f"w{i}"] for i in range(1, rank + 1))

    def affine(self) -> dict[str, tuple[Fraction, dict[str, Fraction]]]:
        """Dependent weights as constant + coefficients of the free variables."""
        free = self.free
        zero = {v: Fraction(0) for v in free}
        out = {}
        for var, expr in self.weights.items():
            const = eval_expression(expr, zero)
            coefs = {}
            for f in free:
                coefs[f] = eval_expression(expr, {**zero, f: Fraction(1)}) - const
            probe = {f: Fraction(i + 2, 7) for i, f in enumerate(free)}
            if eval_expression(expr, probe) != const + sum(coefs[f] * probe[f] for f in free):
                raise ValueError(f"{var} = {expr} is not affine")
            out[var] = (const, coefs)
        return out


def reference_families(label: str, data_dir=None) -> list[ReferenceFamily]:
    path = data_file("weight_families.json", data_dir)
    data = json.loads(path.read_text())
    key = label.upper()
    if key not in data:
        raise KeyError(f"no reference weight family for {label!r}")
    block = data[key]
    return [ReferenceFamily(key, block["degree"], f["id"], dict(f["weights"]),
                            tuple((v, c) for v, c in f["constraints"]))
            for f in block["families"]]


# ---------------------------------------------------------------------------
# spherical designs from a single orbit
# ---------------------------------------------------------------------------

def sphere_design_from_orbit(g, x: Sequence, cap: int = 1_000_000) -> CubatureFormula:
    """Equal weights on the normalized orbit of x."""
    g = _group(g)
    pts = orbit(g, x, cap)
    if len(pts) == 1 and all(c.is_zero() for c in pts[0]):
        raise ValueError("the orbit of 0 is not a spherical design")
    # sphere-domain points are read as directions, so no normalization is stored
    w = Fraction(1, len(pts))
    orbs = [Orbit("point", CubPoint(p, UNIT), w) for p in pts]
    return CubatureFormula("sphere", g.dim, orbs, mode="degree", order=g.exponents[1],
                           provenance=(f"orbit of {g.label}",))


@dataclass
class ReferenceComparison:
    """Solved family against the shipped reference families for one group."""

    group: str
    degree: int
    family: WeightFamily
    symbolic: bool | None  # every shipped weight formula equals the solved one (None: not applicable)
    mismatched: tuple[str, ...]  # weights whose formulas differ
    samples: int = 0
    failures: list = field(default_factory=list)  # (family id, fraction, inside, euclidean ok)
    empty: list = field(default_factory=list)  # (family id, fraction) with an empty interval

    @property
    def valid(self) -> bool:
        return self.symbolic is not False and not self.failures and self.samples > 0


def _symbolic_match(fam: WeightFamily, ref: ReferenceFamily) -> tuple[bool | None, tuple[str, ...]]:
    if any("eq" in c for _, c in ref.constraints):
        return None, ()
    free = [int(v[1:]) for v in ref.free]
    if not free:
        target = fam.point([]) if not fam.free else None
        if target is None:
            return False, tuple(ref.weights)
        got = ref.sample()
        bad = tuple(f"w{i + 1}" for i, (a, b) in enumerate(zip(target, got)) if a != as_field(b))
        return not bad, bad
    try:
        ours = fam.affine_in(free)
    except ValueError:
        return False, tuple(ref.weights)
    bad = []
    for var, (const, coefs) in ref.affine().items():
        c0, co = ours[int(var[1:])]
        if c0 != as_field(const) or any(co[int(f[1:])] != as_field(v) for f, v in coefs.items()):
            bad.append(var)
    return not bad, tuple(bad)


def compare_reference_families(g, fractions: Sequence[Fraction] = (Fraction(1, 3), Fraction(2, 3)),
                               data_dir=None) -> ReferenceComparison:
    """Symbolic comparison where the shipped family is a plain parametrization, and
    exact membership plus the Euclidean design check for sampled members of every region."""
    g = _group(g)
    refs = reference_families(g.label, data_dir)
    t = refs[0].degree
    fam = classify_weights(g, t)
    verdicts = [_symbolic_match(fam, r) for r in refs]
    known = [v for v in verdicts if v[0] is not None]
    symbolic = None if not known else all(v[0] for v in known)
    mismatched = tuple(sorted({w for v in known for w in v[1]}))
    out = ReferenceComparison(g.label, t, fam, symbolic, mismatched)
    corners = [(k, UNIT) for k in range(1, g.rank + 1)]
    for ref in refs:
        for fr in fractions:
            w = ref.sample(Fraction(fr))
            if w is None:
                out.empty.append((ref.ident, fr))
                continue
            out.samples += 1
            inside = fam.contains(w)
            ok = euclidean_design_check(g, corners, w, t).valid
            if not (inside and ok):
                out.failures.append((ref.ident, fr, inside, ok))
    return out
