"""Point elimination: replace symmetric orbits by design columns or OA rows.

An L-orbit (all placements of a pattern v_k(a, b)) can be traded for the
columns of a generalized incidence matrix of a design of sufficient strength.
A sign orbit (all sign changes of the nonzero coordinates) can be traded for
the rows of an orthogonal array.  Every operation here returns a new formula
and appends a line to its provenance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cubature import (
    CubatureFormula,
    CubPoint,
    Orbit,
    catalog_formula,
    halve_antipodal,
    sqrt_points,
    to_sphere,
    verify_index,
)
from .designs import (
    BlockDesign,
    OrthogonalArray,
    catalog_design,
    derive_design,
    generalized_incidence,
    nordstrom_robinson,
    verify_design,
    verify_oa,
)
from .exactnum import ZERO, FieldElement, as_field

PIPELINES = ("main2i_m16", "main2ii_m25", "ex45_s6_91", "ex46_s8_457")


class SubstitutionError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitSlot:
    """Position of an annotated orbit inside a host formula."""

    index: int
    kind: str
    l: int | None
    pattern: tuple[FieldElement, FieldElement] | None
    wt: int

    @classmethod
    def of(cls, F: CubatureFormula, index: int) -> "OrbitSlot":
        if not 0 <= index < len(F.orbits):
            raise SubstitutionError(f"formula has no orbit {index}")
        o = F.orbits[index]
        pattern = o.pattern if o.kind in ("L", "B") else None
        return cls(index, o.kind, o.l, pattern, o.rep.weight_count())

    def orbit(self, F: CubatureFormula) -> Orbit:
        if self.index >= len(F.orbits):
            raise SubstitutionError("slot does not occur in this formula")
        o = F.orbits[self.index]
        if o.kind != self.kind or o.l != self.l:
            raise SubstitutionError("slot does not occur in this formula")
        return o


def find_slots(F: CubatureFormula, kind: str | None = None, l: int | None = None,
               wt: int | None = None) -> list[OrbitSlot]:
    out = []
    for i, o in enumerate(F.orbits):
        if kind is not None and o.kind != kind:
            continue
        if l is not None and o.l != l:
            continue
        if wt is not None and o.rep.weight_count() != wt:
            continue
        out.append(OrbitSlot.of(F, i))
    return out


def slot(F: CubatureFormula, kind: str, l: int | None = None, wt: int | None = None) -> OrbitSlot:
    found = find_slots(F, kind, l, wt)
    if not found:
        raise SubstitutionError(f"no {kind} orbit with l={l} wt={wt}")
    if len(found) > 1:
        raise SubstitutionError(
            f"{len(found)} matching orbits (indices {[s.index for s in found]}); pick one with OrbitSlot.of")
    return found[0]


def _required_strength(F: CubatureFormula, kind: str) -> int:
    if F.order is None:
        raise SubstitutionError("host formula does not state its index or degree")
    # sign changes already kill odd exponents, so placements only see half the degree
    return F.order // 2 if kind == "B" else F.order


def _replace(F: CubatureFormula, drop: Sequence[int], new: list[Orbit], step: str,
             symmetric: bool | None = None) -> CubatureFormula:
    gone = set(drop)
    kept = [o for i, o in enumerate(F.orbits) if i not in gone]
    first = min(gone)
    orbits = kept[:first] + new + kept[first:]
    out = CubatureFormula(F.domain, F.m, tuple(orbits), F.mode, F.order, False,
                          F.provenance + (step,))
    if symmetric is None:
        symmetric = F.centrally_symmetric and is_antipodal(out)
    elif symmetric:
        # OA rows closed under negation keep every replaced orbit antipodal
        symmetric = all(o.kind in ("sign", "B") for i, o in enumerate(F.orbits) if i not in gone) \
            or is_antipodal(out)
    if symmetric:
        out = CubatureFormula(out.domain, out.m, out.orbits, out.mode, out.order, True, out.provenance)
    return out


def _column_orbits(columns, host: Orbit, weight) -> list[Orbit]:
    kind = "sign" if host.kind == "B" else "point"
    return [Orbit(kind, CubPoint(col, host.rep.scale), weight) for col in columns]


def substitute_design(F: CubatureFormula, s: OrbitSlot, d: BlockDesign,
                      alpha=None, beta=None) -> CubatureFormula:
    o = s.orbit(F)
    if o.kind not in ("L", "B"):
        raise SubstitutionError("design substitution needs an L or B orbit")
    sizes = d.block_sizes()
    if len(sizes) != 1:
        raise SubstitutionError("design has several block sizes; use substitute_regular")
    k = next(iter(sizes))
    if d.v != F.m or k != o.l:
        raise SubstitutionError(f"size mismatch: design {d.v} points / blocks of {k}, slot m={F.m} l={o.l}")
    need = _required_strength(F, o.kind)
    if not verify_design(d, min(need, k)).regular:
        raise SubstitutionError(f"design strength below {need}")
    a, b = o.pattern
    a = a if alpha is None else as_field(alpha)
    b = b if beta is None else as_field(beta)
    if (a, b) != o.pattern:
        raise SubstitutionError("incidence values differ from the slot pattern")
    cols = generalized_incidence(d, a, b).columns
    w = o.weight * math.comb(F.m, k) / d.b
    step = f"orbit v_{k} replaced by {d.b} columns of a {need}-design"
    return _replace(F, [s.index], _column_orbits(cols, o, w), step)


def substitute_regular(F: CubatureFormula, slots: Sequence[OrbitSlot], d: BlockDesign,
                       alpha=None, beta=None) -> CubatureFormula:
    orbits = [s.orbit(F) for s in slots]
    if not orbits:
        raise SubstitutionError("no slots given")
    kinds = {o.kind for o in orbits}
    if len(kinds) != 1 or kinds.pop() not in ("L", "B"):
        raise SubstitutionError("slots must all be L orbits or all B orbits")
    host = orbits[0]
    if any(o.pattern != host.pattern or o.rep.scale != host.rep.scale for o in orbits):
        raise SubstitutionError("slots must share the pattern values and radius")
    a, b = host.pattern
    if (alpha is not None and as_field(alpha) != a) or (beta is not None and as_field(beta) != b):
        raise SubstitutionError("incidence values differ from the slot pattern")
    if d.v != F.m:
        raise SubstitutionError(f"size mismatch: design on {d.v} points, formula dimension {F.m}")
    sizes = d.block_sizes()
    by_len = {o.l: o for o in orbits}
    if len(by_len) != len(orbits) or set(sizes) != set(by_len):
        raise SubstitutionError(f"block sizes {sorted(sizes)} do not match slot lengths {sorted(by_len)}")
    need = _required_strength(F, host.kind)
    report = verify_design(d, min(need, min(sizes)))
    if not report.regular:
        raise SubstitutionError(f"design is not regular of strength {need}: {report.failures}")
    mass = {k: by_len[k].weight * math.comb(F.m, k) for k in sizes}
    total = sum(mass.values(), ZERO)
    for k, nk in sizes.items():
        want = total * nk / d.b
        if mass[k] != want:
            raise SubstitutionError(
                f"weight proportion mismatch at block size {k}: orbit mass {mass[k]}, required {want}")
    cols = generalized_incidence(d, a, b).columns
    step = f"orbits v_{sorted(sizes)} replaced by {d.b} columns of a regular {need}-wise balanced design"
    return _replace(F, [s.index for s in slots], _column_orbits(cols, host, total / d.b), step)


def _signed_rows(direction: tuple[FieldElement, ...], rows: np.ndarray) -> list[tuple[FieldElement, ...]]:
    nz = [i for i, x in enumerate(direction) if not x.is_zero()]
    out = []
    for r in rows:
        e = list(direction)
        for i, sg in zip(nz, r):
            if sg < 0:
                e[i] = -e[i]
        out.append(tuple(e))
    return out


def substitute_oa(F: CubatureFormula, s: OrbitSlot | Sequence[OrbitSlot],
                  a: OrthogonalArray) -> CubatureFormula:
    """Replace one or more sign orbits of equal weight count by the rows of ``a``."""
    slots = [s] if isinstance(s, OrbitSlot) else list(s)
    if not slots:
        raise SubstitutionError("no slots given")
    if F.domain != "gaussian":
        raise SubstitutionError("OA substitution acts on gaussian-domain formulas")
    if F.order is None:
        raise SubstitutionError("host formula does not state its index or degree")
    orbits = [sl.orbit(F) for sl in slots]
    wts = {o.rep.weight_count() for o in orbits}
    if any(o.kind not in ("sign", "B") for o in orbits):
        raise SubstitutionError("OA substitution needs a sign orbit")
    if wts != {a.l}:
        raise SubstitutionError(f"constraint-count mismatch: OA has {a.l} columns, orbit weight {sorted(wts)}")
    wt = a.l
    need = min(F.order, wt)
    rep = verify_oa(a, need, probe=0)
    if not rep.passed:
        raise SubstitutionError(f"OA strength deficit: need {need}, fails on columns {rep.violation}")
    new = []
    for o in orbits:
        w = o.weight * (1 << wt) / a.N
        if o.kind == "sign":
            placements = [o.rep.direction]
        else:
            placements = [p.direction for p in Orbit("L", o.rep, o.weight, o.l).points()]
        new.extend(Orbit("point", CubPoint(d, o.rep.scale), w)
                   for base in placements for d in _signed_rows(base, a.rows))
    step = f"{len(orbits)} sign orbit(s) of weight {wt} replaced by {a.N} OA rows of strength {need}"
    return _replace(F, [sl.index for sl in slots], new, step, symmetric=rep.centrally_symmetric)


def is_antipodal(F: CubatureFormula, cap: int = 200_000) -> bool:
    """Every point has its negative with equal weight (sign and B orbits always do)."""
    pts: dict = {}
    for o in F.orbits:
        if o.kind in ("sign", "B"):
            continue
        if o.size() > cap:
            return False
        for p in o.points():
            key = (p.direction, p.scale)
            pts[key] = pts.get(key, ZERO) + o.weight
    return all(pts.get((tuple(-x for x in d), sc)) == w for (d, sc), w in pts.items())


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------

@dataclass
class PipelineResult:
    name: str
    formula: CubatureFormula
    points: int
    steps: tuple[str, ...]
    verified: bool


def _finish(name: str, G: CubatureFormula, q: int) -> PipelineResult:
    if not is_antipodal(G):
        raise SubstitutionError(f"{name}: gaussian formula is not antipodal, halving impossible")
    S = to_sphere(G, q)
    H = halve_antipodal(S)
    ok = verify_index(H, q).valid
    return PipelineResult(name, H, H.size, H.provenance, ok)


def _step(name: str, fn, *args):
    try:
        return fn(*args)
    except (ValueError, KeyError) as exc:
        raise SubstitutionError(f"{name} failed at {fn.__name__}: {exc}") from exc


def run_pipeline(name: str, data_dir=None) -> PipelineResult:
    if name == "ex45_s6_91":
        F = catalog_formula("ex45", 7)
        d = derive_design(catalog_design("sqs8", data_dir)[0], 7, 3)
        F = _step(name, substitute_regular, F, [slot(F, "L", 4), slot(F, "L", 3)], d)
        G = _step(name, sqrt_points, F)
        return _finish(name, G, 6)
    if name == "ex46_s8_457":
        F = catalog_formula("ex46", 9)
        d = derive_design(catalog_design("inversive10", data_dir)[0], 9, 3)
        F = _step(name, substitute_regular, F, [slot(F, "L", 4), slot(F, "L", 3)], d)
        G = _step(name, sqrt_points, F)
        return _finish(name, G, 6)
    if name == "main2i_m16":
        G = _step(name, sqrt_points, catalog_formula("lem42i", 16))
        G = _step(name, substitute_oa, G, slot(G, "B", 16), nordstrom_robinson())
        return _finish(name, G, 4)
    if name == "main2ii_m25":
        F = catalog_formula("lem42ii", 25)
        F = _step(name, substitute_design, F, slot(F, "L", 9), catalog_design("sym25", data_dir)[0])
        G = _step(name, sqrt_points, F)
        oa = nordstrom_robinson().columns(range(9))
        G = _step(name, substitute_oa, G, find_slots(G, "sign", wt=9), oa)
        return _finish(name, G, 4)
    raise KeyError(f"unknown pipeline {name!r}; choose from {', '.join(PIPELINES)}")
