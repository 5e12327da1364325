"""Hilbert identities: lhs * (x1^2 + ... + xm^2)^(q/2) = sum_i c_i * L_i(x)^q.

An index-q cubature on S^(m-1) with points x_i and weights w_i is the same thing as
such an identity with c_i = w_i / c_q and L_i = <x, x_i>, where c_q is the sphere
average of y1^q.  Identities are stored flat, one term per sign pattern.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .cubature import (
    CubatureFormula,
    CubPoint,
    Orbit,
    _canonical_sphere_direction,
    verify_index,
)
from .exactnum import BASIS, ONE, ZERO, FieldElement, as_field, field_degree, parse, render
from .moments import c_q, monomials


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[FieldElement, ...]

    def __post_init__(self):
        c = tuple(as_field(x) for x in self.coefficients)
        if all(x.is_zero() for x in c):
            raise ValueError("linear form is identically zero")
        object.__setattr__(self, "coefficients", c)

    @property
    def m(self) -> int:
        return len(self.coefficients)

    def norm_sq(self) -> FieldElement:
        return sum((x * x for x in self.coefficients), ZERO)

    def is_rational(self) -> bool:
        return all(x.is_rational() for x in self.coefficients)

    def render(self) -> str:
        parts = []
        for i, a in enumerate(self.coefficients, 1):
            if a.is_zero():
                continue
            neg = a.sign() < 0
            mag = -a if neg else a
            body = f"x{i}" if mag == ONE else f"{_paren(render(mag))}x{i}"
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return f"({out})"


def _paren(text: str) -> str:
    return f"({text})" if any(c in text for c in " +-*") else text


@dataclass(frozen=True)
class HilbertIdentity:
    m: int
    q: int
    lhs_multiplier: Fraction
    terms: tuple[tuple[FieldElement, LinearForm], ...]
    name: str = ""

    def __post_init__(self):
        if self.q < 2 or self.q % 2:
            raise ValueError("q must be a positive even integer")
        object.__setattr__(self, "lhs_multiplier", Fraction(self.lhs_multiplier))
        terms = tuple((as_field(c), f if isinstance(f, LinearForm) else LinearForm(f))
                      for c, f in self.terms)
        for c, f in terms:
            if f.m != self.m:
                raise ValueError("linear form length differs from m")
        object.__setattr__(self, "terms", terms)

    @property
    def n(self) -> int:
        return len(self.terms)

    def scaled(self, factor) -> "HilbertIdentity":
        f = Fraction(factor)
        return HilbertIdentity(self.m, self.q, self.lhs_multiplier * f,
                               tuple((c * f, L) for c, L in self.terms), self.name)

    def with_coefficient(self, index: int, value) -> "HilbertIdentity":
        terms = list(self.terms)
        terms[index] = (as_field(value), terms[index][1])
        return HilbertIdentity(self.m, self.q, self.lhs_multiplier, tuple(terms), self.name)


@dataclass
class IdentityReport:
    valid: bool
    failures: list = field(default_factory=list)  # (exponent, lhs coefficient, rhs coefficient)
    checked: int = 0

    def __bool__(self) -> bool:
        return self.valid


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------

def _multinomial(e: Sequence[int]) -> int:
    out, left = 1, sum(e)
    for k in e:
        out *= math.comb(left, k)
        left -= k
    return out


def lhs_coefficients(m: int, q: int, multiplier=1) -> dict[tuple[int, ...], Fraction]:
    half = q // 2
    out = {}
    for e in monomials(m, q):
        if any(k % 2 for k in e):
            continue
        out[e] = Fraction(multiplier) * _multinomial([k // 2 for k in e])
    return out


def _rational_forms(terms) -> np.ndarray | None:
    rows = []
    for _, L in terms:
        if not L.is_rational():
            return None
        fr = [x.to_fraction() for x in L.coefficients]
        if any(x.denominator != 1 for x in fr):
            return None
        rows.append([int(x) for x in fr])
    return np.array(rows, dtype=np.int64)


def rhs_coefficients(identity: HilbertIdentity) -> dict[tuple[int, ...], FieldElement]:
    exps = monomials(identity.m, identity.q)
    A = _rational_forms(identity.terms)
    out: dict = {}
    if A is not None and (not A.size or int(np.abs(A).max()) ** identity.q < 2 ** 40):
        E = np.array(exps, dtype=np.int64)
        powers = np.prod(A[:, None, :].astype(np.int64) ** E[None, :, :], axis=2)  # n x M
        groups: dict = defaultdict(list)
        for i, (c, _) in enumerate(identity.terms):
            groups[c].append(i)
        totals = [ZERO] * len(exps)
        for c, idx in groups.items():
            col = powers[idx].sum(axis=0)
            for j, v in enumerate(col):
                if v:
                    totals[j] = totals[j] + c * int(v)
        for e, v in zip(exps, totals):
            if not v.is_zero():
                out[e] = v * _multinomial(e)
        return out
    for c, L in identity.terms:
        a = L.coefficients
        for e in exps:
            t = c * _multinomial(e)
            for ai, k in zip(a, e):
                if k:
                    t = t * ai ** k
                    if t.is_zero():
                        break
            if not t.is_zero():
                out[e] = out.get(e, ZERO) + t
    return {k: v for k, v in out.items() if not v.is_zero()}


def verify_identity(identity: HilbertIdentity) -> IdentityReport:
    """Exact comparison of every degree-q monomial coefficient on both sides."""
    lhs = lhs_coefficients(identity.m, identity.q, identity.lhs_multiplier)
    rhs = rhs_coefficients(identity)
    report = IdentityReport(True)
    for e in monomials(identity.m, identity.q):
        a = as_field(lhs.get(e, Fraction(0)))
        b = rhs.get(e, ZERO)
        report.checked += 1
        if a != b:
            report.failures.append((e, a, b))
    report.valid = not report.failures
    return report


def monomial_name(e: Sequence[int]) -> str:
    return "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e, 1) if k) or "1"


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _signed(m: int, entries: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """All forms sum a_j x_j with the first entry positive and the others of either sign."""
    out = []
    for signs in itertools.product((1, -1), repeat=len(entries) - 1):
        v = [0] * m
        v[entries[0][0]] = entries[0][1]
        for (j, a), s in zip(entries[1:], signs):
            v[j] = s * a
        out.append(tuple(v))
    return out


def _terms(coef, forms) -> list:
    c = as_field(coef)
    return [(c, LinearForm(f)) for f in forms]


def _cyclic_seven(quads: Sequence[int], triples: Sequence[int], name: str) -> HilbertIdentity:
    m, terms = 7, []
    for i in range(m):
        terms += _terms(1, _signed(m, [((i + d) % m, 1) for d in quads]))
        terms += _terms(2, _signed(m, [((i + d) % m, 1) for d in triples]))
        terms += _terms(1, _signed(m, [(i, 2)]))
    return HilbertIdentity(m, 6, 120, tuple(terms), name)


def sawa91() -> HilbertIdentity:
    """91 sixth powers on seven variables.

    The triples {i, i+1, i+3} are the complements of the quadruples {i, i+2, i+3, i+4};
    together they form a 3-wise balanced design, which is what makes this an identity.
    """
    return _cyclic_seven((0, 2, 3, 4), (0, 1, 3), "sawa91")


def sawa91_as_printed() -> HilbertIdentity:
    """Triples {i, i+2, i+3} as usually quoted; these come from the other Fano plane."""
    return _cyclic_seven((0, 2, 3, 4), (0, 2, 3), "sawa91_as_printed")


def reznick() -> HilbertIdentity:
    m, terms = 7, []
    for i in range(m):
        terms += _terms(2, _signed(m, [(i, 2)]))
    for i, j in itertools.combinations(range(m), 2):
        terms += _terms(1, _signed(m, [(i, 2), (j, 2)]))
    terms += _terms(1, _signed(m, [(i, 1) for i in range(m)]))
    return HilbertIdentity(m, 6, 960, tuple(terms), "reznick")


def kurschak(k: int) -> HilbertIdentity:
    if k < 1:
        raise ValueError("k must be at least 1")
    m, terms = 3 * k + 1, []
    for sub in itertools.combinations(range(m), k + 1):
        terms += _terms(1, _signed(m, [(i, 1) for i in sub]))
    return HilbertIdentity(m, 4, 2 ** k * math.comb(3 * k, k), tuple(terms), f"kurschak{k}")


def _f4_shapes(coefs: dict[str, object]) -> list:
    """The six F4 form families on four variables, each with its coefficient."""
    m, terms = 4, []
    if "axis" in coefs:
        terms += _terms(coefs["axis"], [f for i in range(m) for f in _signed(m, [(i, 2)])])
    if "ones" in coefs:
        terms += _terms(coefs["ones"], _signed(m, [(i, 1) for i in range(m)]))
    if "three" in coefs:
        forms = []
        for i in range(m):
            rest = [j for j in range(m) if j != i]
            forms += _signed(m, [(i, 3)] + [(j, 1) for j in rest])
        terms += _terms(coefs["three"], forms)
    if "twos" in coefs:
        forms = [f for sub in itertools.combinations(range(m), 3)
                 for f in _signed(m, [(j, 2) for j in sub])]
        terms += _terms(coefs["twos"], forms)
    if "two_one_one" in coefs:
        forms = []
        for i in range(m):
            rest = [j for j in range(m) if j != i]
            for j, k in itertools.combinations(rest, 2):
                forms += _signed(m, [(i, 2), (j, 1), (k, 1)])
        terms += _terms(coefs["two_one_one"], forms)
    if "pairs" in coefs:
        forms = [f for i, j in itertools.combinations(range(m), 2)
                 for f in _signed(m, [(i, 1), (j, 1)])]
        terms += _terms(coefs["pairs"], forms)
    return terms


NS_RANGE = (Fraction(1, 192), Fraction(1, 120))


def _check_a(a) -> Fraction:
    a = Fraction(a)
    if not NS_RANGE[0] <= a <= NS_RANGE[1]:
        raise ValueError(f"parameter a={a} outside [1/192, 1/120]")
    return a


def ns_family(a) -> HilbertIdentity:
    """The F4 one-parameter index-10 identity on four variables (coefficients re-derived)."""
    a = _check_a(a)
    coefs = {"axis": a / 21, "ones": a / 21,
             "three": (1 - 120 * a) / 272160, "twos": (1 - 120 * a) / 272160,
             "two_one_one": (192 * a - 1) / 13608, "pairs": (13 - 960 * a) / 630}
    terms = [(c, f) for c, f in _f4_shapes(coefs) if not c.is_zero()]
    return HilbertIdentity(4, 10, 1, tuple(terms), f"ns_family({a})")


def ns_family_as_printed(a) -> HilbertIdentity:
    """Same family with the coefficients exactly as they are usually quoted; not an identity."""
    a = _check_a(a)
    coefs = {"axis": Fraction(1, 2520), "ones": Fraction(1, 2520),
             "three": (1 - 120 * a) / 272160, "twos": (1 - 120 * a) / 272160,
             "two_one_one": (192 * a - 1) / 68040, "pairs": (12 - 960 * a) / 630}
    terms = [(c, f) for c, f in _f4_shapes(coefs) if not c.is_zero()]
    return HilbertIdentity(4, 10, 1, tuple(terms), f"ns_family_as_printed({a})")


def schur() -> HilbertIdentity:
    terms = _f4_shapes({"axis": 9, "ones": 9, "two_one_one": 1, "pairs": 180})
    return HilbertIdentity(4, 10, 22680, tuple(terms), "schur")


def hurwitz() -> HilbertIdentity:
    terms = _f4_shapes({"axis": 6, "ones": 6, "two_one_one": 1, "pairs": 60})
    return HilbertIdentity(4, 8, 5040, tuple(terms), "hurwitz")


CATALOG = ("sawa91", "sawa91_as_printed", "reznick", "kurschak", "ns_family", "ns_family_as_printed", "schur",
           "hurwitz")


def catalog_identity(name: str, k: int | None = None, a=None) -> HilbertIdentity:
    if name == "sawa91":
        return sawa91()
    if name == "sawa91_as_printed":
        return sawa91_as_printed()
    if name == "reznick":
        return reznick()
    if name == "kurschak":
        return kurschak(1 if k is None else k)
    if name == "ns_family":
        return ns_family(Fraction(1, 120) if a is None else a)
    if name == "ns_family_as_printed":
        return ns_family_as_printed(Fraction(1, 120) if a is None else a)
    if name == "schur":
        return schur()
    if name == "hurwitz":
        return hurwitz()
    raise KeyError(f"unknown identity {name!r}; known: {', '.join(CATALOG)}")


# ---------------------------------------------------------------------------
# cubature <-> identity
# ---------------------------------------------------------------------------

def _primitive(d: Sequence[FieldElement]) -> tuple[tuple[FieldElement, ...], FieldElement]:
    """(form, lam) with d = lam * form; rational d becomes a primitive integer vector."""
    if all(x.is_rational() for x in d):
        fr = [x.to_fraction() for x in d]
        den = math.lcm(*(x.denominator for x in fr))
        ints = [int(x * den) for x in fr]
        g = math.gcd(*ints)
        ints = [x // g for x in ints]
        if next(x for x in ints if x) < 0:
            ints = [-x for x in ints]
        lam = Fraction(g, den) * (1 if fr[[i for i, x in enumerate(ints) if x][0]] > 0 else -1)
        return tuple(as_field(x) for x in ints), as_field(lam)
    lead = next(x for x in d if not x.is_zero())
    return tuple(x / lead for x in d), lead


def cubature_to_identity(F: CubatureFormula, q: int, check: bool = True) -> HilbertIdentity:
    if F.domain != "sphere":
        raise ValueError("only sphere formulas correspond to Hilbert identities")
    if check and not verify_index(F, q).valid:
        raise ValueError(f"formula does not verify at index {q}")
    cq = c_q(F.m, q)
    merged: dict = {}
    order = []
    for p, w in F.expanded():
        # sphere points are d / |d|, so w * <x, d/|d|>^q = (w / |d|^q) * <x, d>^q
        form, lam = _primitive(p.direction)
        coef = w * lam ** q / p.norm_sq() ** (q // 2) / cq
        if form in merged:
            merged[form] = merged[form] + coef
        else:
            merged[form] = coef
            order.append(form)
    terms = tuple((merged[f], LinearForm(f)) for f in order)
    ident = HilbertIdentity(F.m, q, 1, terms, "from cubature")
    return clear_denominators(ident)


def clear_denominators(identity: HilbertIdentity) -> HilbertIdentity:
    """Scale so every coefficient is an integer when all are rational."""
    if not all(c.is_rational() for c, _ in identity.terms):
        return identity
    fr = [c.to_fraction() for c, _ in identity.terms] + [identity.lhs_multiplier]
    den = math.lcm(*(x.denominator for x in fr))
    num = math.gcd(*(int(x * den) for x in fr))
    return identity.scaled(Fraction(den, num))


def identity_to_cubature(identity: HilbertIdentity, check: bool = True) -> CubatureFormula:
    if check and not verify_identity(identity).valid:
        raise ValueError("identity does not verify")
    cq = c_q(identity.m, identity.q)
    orbits = []
    for c, L in identity.terms:
        nsq = L.norm_sq()
        weight = c * nsq ** (identity.q // 2) * cq / identity.lhs_multiplier
        orbits.append(Orbit("point", CubPoint(L.coefficients), weight))
    return CubatureFormula("sphere", identity.m, orbits, mode="index", order=identity.q,
                           provenance=(f"identity {identity.name}".strip(),))


def normalized_points(F: CubatureFormula) -> list[tuple[tuple, FieldElement]]:
    """Sorted (projective direction key, weight / total) pairs, for comparing formulas."""
    total = F.total_weight()
    merged: dict = defaultdict(lambda: ZERO)
    for p, w in F.expanded():
        key = _canonical_sphere_direction(p.direction)
        if next(x for x in key if x) < 0:
            key = tuple(-x for x in key)  # antipodes give the same power L^q
        merged[key] += w / total
    return sorted(merged.items(), key=lambda kv: [float(x) for x in kv[0]])


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalityReport:
    all_rational: bool
    degree: int
    radicands: tuple[int, ...]  # square roots occurring in the coefficients


def rationality_report(identity: HilbertIdentity) -> RationalityReport:
    values = [c for c, _ in identity.terms]
    values += [x for _, L in identity.terms for x in L.coefficients]
    values.append(as_field(identity.lhs_multiplier))
    present = set()
    for v in values:
        for d, c in zip(BASIS, v.coeffs):
            if c and d != 1:
                present.add(d)
    deg = field_degree(values)
    return RationalityReport(deg == 1, deg, tuple(sorted(present)))


def lower_bound(m: int, q: int) -> int:
    """dim of homogeneous polynomials of degree q/2 in m variables; any identity needs this many terms."""
    return math.comb(m + q // 2 - 1, m - 1)


def shape_summary(identity: HilbertIdentity) -> list[tuple[FieldElement, tuple, int]]:
    """(coefficient, sorted absolute form entries, count), the compact sum-over-signs view."""
    c = Counter()
    for coef, L in identity.terms:
        shape = tuple(sorted((abs(x) for x in L.coefficients if not x.is_zero()),
                             key=float, reverse=True))
        c[(coef, shape)] += 1
    return [(coef, shape, n) for (coef, shape), n in c.items()]


def render_identity(identity: HilbertIdentity, compact: bool = True) -> str:
    squares = " + ".join(f"x{i}^2" for i in range(1, identity.m + 1))
    head = f"{identity.lhs_multiplier} ({squares})^{identity.q // 2}"
    if compact:
        parts = []
        for coef, shape, n in shape_summary(identity):
            entries = ", ".join(render(x) for x in shape)
            parts.append(f"{render(coef)} * sum_{n} <{entries}>^{identity.q}")
        return f"{head} = " + " + ".join(parts)
    parts = [f"{_paren(render(c))} {L.render()}^{identity.q}" for c, L in identity.terms]
    return f"{head} =\n  " + "\n  + ".join(parts)


# ---------------------------------------------------------------------------
# forms with entries 0, +1, -1
# ---------------------------------------------------------------------------

def pm1_forms(m: int, weight: int | None = None, cap: int = 100_000) -> list[tuple[int, ...]]:
    """Forms with entries in {0, 1, -1}, first nonzero entry +1, optionally of fixed support size."""
    total = (3 ** m - 1) // 2
    if total > cap:
        raise ValueError(f"{total} forms exceed the enumeration cap {cap}")
    out = []
    for v in itertools.product((0, 1, -1), repeat=m):
        nz = [x for x in v if x]
        if not nz or nz[0] < 0:
            continue
        if weight is not None and len(nz) != weight:
            continue
        out.append(v)
    return out


def _rref_fraction(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots, r = [], 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _system(m: int, q: int, forms):
    exps = monomials(m, q)
    target = lhs_coefficients(m, q)
    cols = []
    for f in forms:
        col = []
        for e in exps:
            v = _multinomial(e)
            for a, k in zip(f, e):
                if k:
                    v *= a ** k
            col.append(Fraction(v))
        cols.append(col)
    A = [[cols[j][i] for j in range(len(forms))] for i in range(len(exps))]
    b = [target.get(e, Fraction(0)) for e in exps]
    return exps, A, b


@dataclass
class PM1Report:
    m: int
    q: int
    forms: int
    feasible: bool
    rank: int
    augmented_rank: int
    witness: dict | None = None  # monomial -> multiplier annihilating every form but not the target
    witness_checked: bool = False
    target_ratio: tuple[int, int] | None = None
    form_ratio: tuple[int, int] | None = None
    solution: list | None = None  # (coefficient, form) when feasible
    notes: list = field(default_factory=list)


def _ratio(a: int, b: int) -> tuple[int, int]:
    g = math.gcd(a, b)
    return a // g, b // g


def no_pm1_representation(m: int, q: int = 8, cap: int = 100_000) -> PM1Report:
    """Decide whether (sum x_i^2)^(q/2) is a real combination of q-th powers of {0,+-1} forms."""
    if m < 2:
        raise ValueError("m must be at least 2")
    forms = pm1_forms(m, cap=cap)
    exps, A, b = _system(m, q, forms)
    _, piv = _rref_fraction(A)
    aug, piv_aug = _rref_fraction([row + [rhs] for row, rhs in zip(A, b)])
    feasible = len(piv) == len(piv_aug)
    report = PM1Report(m, q, len(forms), feasible, len(piv), len(piv_aug))
    if q >= 6:  # both monomials then need x1 and x2, so only the +-1 pair (a1, a2) matters
        hi = (q - 2,) + (2,) + (0,) * (m - 2)
        mid = (q - 4,) + (4,) + (0,) * (m - 2)
        tgt = lhs_coefficients(m, q)
        report.target_ratio = _ratio(int(tgt[hi]), int(tgt[mid]))
        report.form_ratio = _ratio(_multinomial(hi), _multinomial(mid))
        if report.target_ratio != report.form_ratio:
            # y = f_mid * e[hi] - f_hi * e[mid] kills every form and not the target
            y = {hi: report.form_ratio[1], mid: -report.form_ratio[0]}
            index = {e: i for i, e in enumerate(exps)}
            kills = all(sum(A[index[e]][j] * c for e, c in y.items()) == 0 for j in range(len(forms)))
            hits = sum(b[index[e]] * c for e, c in y.items()) != 0
            report.witness = y
            report.witness_checked = kills and hits
    if feasible:
        report.solution = pm1_solution(m, q, cap=cap)
    return report


def pm1_solution(m: int, q: int, cap: int = 100_000):
    """A representation using forms of one support size, smallest size first, else all forms."""
    classes = [pm1_forms(m, w, cap) for w in range(1, m + 1)] + [pm1_forms(m, cap=cap)]
    for forms in classes:
        _, A, b = _system(m, q, forms)
        rows, piv = _rref_fraction([row + [rhs] for row, rhs in zip(A, b)])
        n = len(forms)
        if n in piv:
            continue
        coef = [Fraction(0)] * n
        for r, p in enumerate(piv):
            coef[p] = rows[r][n]
        return [(c, f) for c, f in zip(coef, forms) if c]
    return None


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def dumps_identity(identity: HilbertIdentity) -> str:
    lines = [f"{identity.m} {identity.q} {identity.lhs_multiplier}"]
    for c, L in identity.terms:
        lines.append(f"{render(c)} | " + " ".join(render(x) for x in L.coefficients))
    return "\n".join(lines) + "\n"


def loads_identity(text: str, name: str = "") -> HilbertIdentity:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty identity file")
    head = rows[0].split()
    if len(head) != 3:
        raise ValueError("header must be 'm q lhs'")
    m, q, lhs = int(head[0]), int(head[1]), Fraction(head[2])
    terms = []
    for ln in rows[1:]:
        if "|" not in ln:
            raise ValueError(f"bad term line {ln!r}")
        c, rest = ln.split("|", 1)
        coeffs = [parse(tok) for tok in rest.split()]
        if len(coeffs) != m:
            raise ValueError(f"term has {len(coeffs)} entries, expected {m}")
        terms.append((parse(c.strip()), LinearForm(tuple(coeffs))))
    return HilbertIdentity(m, q, lhs, tuple(terms), name)


def read_identity(path: str | Path) -> HilbertIdentity:
    p = Path(path)
    return loads_identity(p.read_text(), p.stem)


def write_identity(identity: HilbertIdentity, path: str | Path) -> None:
    Path(path).write_text(dumps_identity(identity))
