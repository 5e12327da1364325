"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are collected in the
"acceptance criteria" section of the terminal summary) or ``python
tests/test_acceptance.py``.  Tolerances: every check is exact (zero tolerance);
runtime bounds are the wall-clock limits listed next to each criterion.
"""
import random
import sys
import time
from collections import Counter
from fractions import Fraction

import pytest

from cubforge.cubature import (
    CubatureFormula,
    CubPoint,
    Orbit,
    catalog_formula,
    double_antipodal,
    halve_antipodal,
    sqrt_points,
    verify_index,
)
from cubforge.exactnum import FieldElement
from cubforge.hilbert import (
    hurwitz,
    identity_to_cubature,
    kurschak,
    no_pm1_representation,
    normalized_points,
    ns_family,
    ns_family_as_printed,
    reznick,
    sawa91,
    sawa91_as_printed,
    schur,
    verify_identity,
)
from cubforge.moments import gaussian_moment, monomials, orthant_moment, radial_factor, sphere_moment
from cubforge.reflect import (
    certify_nonexistence,
    classify_weights,
    compare_reference_families,
    compare_with_printed,
    corner_orbit,
    group_data,
    printed_certificate,
    reference_families,
    u_vectors,
    validate_certificate,
)
from cubforge.designs import trivial_oa
from cubforge.victoir import find_slots, run_pipeline, substitute_oa

F = Fraction

# runtime limits in seconds
MOMENTS_LIMIT = 1.0
CATALOG_LIMIT = 10.0
PIPELINE_LIMIT = 30.0
ORBITS_LIMIT = 60.0
E8_ORBITS_LIMIT = 600.0
IDENTITIES_LIMIT = 60.0
PM1_LIMIT = 60.0


def _fields(*xs):
    return [FieldElement(F(x)) for x in xs]


# -- 1 ----------------------------------------------------------------------

def test_01_moment_consistency(acceptance):
    start = time.perf_counter()
    checked, bad = 0, []
    for m in range(2, 10):
        for q in range(0, 11, 2):
            rf = radial_factor("gaussian", m, q)
            assert rf.denominator == 1
            rf = rf.numerator
            for a in monomials(m, q):
                s, g = sphere_moment(m, a), gaussian_moment(a)
                # gaussian = E|x|^q * sphere, cross-multiplied to stay in integers
                if g.denominator != 1 or g.numerator * s.denominator != rf * s.numerator:
                    bad.append(a)
                checked += 1
            for b in monomials(m, q // 2):
                if orthant_moment(b) != gaussian_moment(tuple(2 * x for x in b)):
                    bad.append(b)
                checked += 1
    elapsed = time.perf_counter() - start
    acceptance(1, "moment consistency, m <= 9, even degrees <= 10", not bad and elapsed < MOMENTS_LIMIT,
               f"{checked} identities, {len(bad)} failures, {elapsed:.2f}s < {MOMENTS_LIMIT}s")


# -- 2 ----------------------------------------------------------------------

CATALOG_CASES = ([("lem42i", m) for m in range(3, 11)] + [("lem42ii", m) for m in (4, 7, 10, 13, 25)]
                 + [("lem62i", m) for m in (8, 14, 20)] + [("lem62ii", m) for m in (7, 13, 19)])


def test_02_catalog_formulas(acceptance):
    start = time.perf_counter()
    failed = []
    for name, m in CATALOG_CASES:
        F_ = catalog_formula(name, m)
        rep = verify_index(F_, F_.order)
        if not (rep.valid and rep.exact):
            failed.append(f"{name} m={m}")
    elapsed = time.perf_counter() - start
    acceptance(2, f"catalog formulas verify exactly ({len(CATALOG_CASES)} cases)",
               not failed and elapsed < CATALOG_LIMIT,
               f"failed: {failed or 'none'}, {elapsed:.2f}s < {CATALOG_LIMIT}s")


# -- 3, 4 ---------------------------------------------------------------------

PIPELINE_CASES = [(3, "ex45_s6_91", 7, 6, 91), (3, "ex46_s8_457", 9, 6, 457), (4, "main2i_m16", 16, 4, 144)]


@pytest.mark.parametrize("criterion,name,m,q,points", PIPELINE_CASES)
def test_03_04_pipelines(acceptance, criterion, name, m, q, points):
    start = time.perf_counter()
    res = run_pipeline(name)
    F_ = res.formula
    rep = verify_index(F_, q)
    elapsed = time.perf_counter() - start
    ok = (F_.domain, F_.m, F_.size) == ("sphere", m, points) and rep.valid and rep.exact \
        and elapsed < PIPELINE_LIMIT
    acceptance(criterion, f"{name}: {points} points on S^{m - 1}, index {q}", ok,
               f"{F_.size} points, exact={rep.exact}, {len(rep.failures)} failures, {elapsed:.1f}s")


# -- 5 ----------------------------------------------------------------------

ORBIT_SIZES = {
    "F4": (24, 96, 96, 24),
    "H3": (12, 30, 20),
    "H4": (120, 720, 1200, 600),
    "E6": (27, 216, 720, 216, 27, 72),
    "E7": (126, 2016, 10080, 4032, 756, 56, 576),
    "E8": (2160, 69120, 483840, 241920, 60480, 6720, 240, 17280),
}


def test_05_orbit_sizes(acceptance):
    start = time.perf_counter()
    small = {g: tuple(corner_orbit(group_data(g), k).size for k in range(1, len(n) + 1))
             for g, n in ORBIT_SIZES.items() if g != "E8"}
    mid = time.perf_counter()
    e8 = tuple(corner_orbit(group_data("E8"), k).size for k in range(1, 9))
    end = time.perf_counter()
    got = {**small, "E8": e8}
    bad = [g for g in ORBIT_SIZES if got[g] != ORBIT_SIZES[g]]
    count = sum(len(n) for n in ORBIT_SIZES.values())
    ok = not bad and mid - start < ORBITS_LIMIT and end - mid < E8_ORBITS_LIMIT
    acceptance(5, f"all {count} corner-orbit sizes", ok,
               f"mismatched groups: {bad or 'none'}, non-E8 {mid - start:.1f}s, E8 {end - mid:.1f}s")


# -- 6 ----------------------------------------------------------------------

U_EXAMPLES = {
    ("F4", "6"): _fields(-1, F(-1, 9), F(1, 9), 1),
    ("F4", "8"): _fields(1, F(-13, 27), F(-13, 27), 1),
    ("E6", "6"): _fields(F(81, 56), F(-81, 700), F(-9, 28), F(-81, 700), F(81, 56), F(-27, 28)),
    ("E6", "8"): _fields(800, F(-6784, 25), F(-640, 9), F(-6784, 25), 800, F(3200, 3)),
    ("H4", "12"): _fields(-4500, 540, F(32500, 27), F(5625, 4)),
}


@pytest.mark.parametrize("label", ["F4", "H3", "H4", "E6", "E7", "E8"])
def test_06_u_vectors(acceptance, label):
    rows = compare_with_printed(label)
    bad = [f"u{r.label} corners {list(r.mismatched)}" for r in rows if not r.matches]
    table = u_vectors(label)
    examples = [(g, d) for (g, d) in U_EXAMPLES if g == label]
    wrong = [d for g, d in examples if table[d] != U_EXAMPLES[(g, d)]]
    acceptance(6, f"{label} u-vectors match every printed table up to a positive scale",
               not bad and not wrong,
               f"{len(rows)} degrees; mismatches: {bad or 'none'}; quoted examples wrong: {wrong or 'none'}")


# -- 7 ----------------------------------------------------------------------

@pytest.mark.parametrize("label,two_s", [("F4", 12), ("H3", 12), ("H4", 24), ("E6", 10), ("E7", 12), ("E8", 16)])
def test_07_certificates(acceptance, label, two_s):
    cert = certify_nonexistence(label, two_s)
    recheck = bool(cert) and validate_certificate(u_vectors(label), cert.coefficients).positive
    acceptance(7, f"certify_nonexistence({label}, {two_s})", bool(cert) and cert.valid and recheck,
               f"coefficients {dict((k, str(v)) for k, v in cert.coefficients.items())}" if cert else cert.reason)


@pytest.mark.parametrize("label", ["F4", "H4", "E6", "E7", "E8"])
def test_07_printed_certificates(acceptance, label):
    coefs, vec = printed_certificate(label)
    check = validate_certificate(u_vectors(label), coefs, vec)
    if vec is None:
        how = "combination positive (only decimals printed)"
    elif check.literal:
        how = "literal combination, entrywise positive"
    elif check.scales:
        how = "equal after positive per-degree scales " + ", ".join(f"u{k}*{v}" for k, v in check.scales.items())
    else:
        how = "printed vector is not a positive rescaled combination of the exact u-vectors"
    acceptance(7, f"{label} printed certificate {coefs} validates", check.valid, how)


# -- 8 ----------------------------------------------------------------------

NS2_SYMBOLIC = [("i", "F4"), ("ii", "H3"), ("iii", "H4"), ("iv", "E6")]


@pytest.mark.parametrize("item,label", NS2_SYMBOLIC)
def test_08_symbolic_classification(acceptance, item, label):
    rep = compare_reference_families(label)
    acceptance(8, f"({item}) {label} degree {rep.degree} family reproduced symbolically",
               bool(rep.symbolic) and rep.valid,
               f"free weights {rep.family.free}; differing weights: {list(rep.mismatched) or 'none'}; "
               f"{rep.samples} samples, {len(rep.failures)} failing")


@pytest.mark.parametrize("item,label,regions", [("v", "E7", None), ("vi", "E8", 27)])
def test_08_sampled_classification(acceptance, item, label, regions):
    listed = {r.ident for r in reference_families(label)}
    regions = regions or len(listed)
    rep = compare_reference_families(label)
    per_region = Counter(ident for ident, _, _, _ in rep.failures)
    ok = (len(listed) == regions and rep.samples >= 2 * regions and not rep.empty
          and not rep.failures)
    acceptance(8, f"({item}) {label}: every printed region sampled twice lies in the solved family "
                  f"and passes the Euclidean design check", ok,
               f"{rep.samples} samples over {regions} regions, {len(rep.failures)} failing "
               f"({dict(per_region) or 'none'}), empty intervals {rep.empty or 'none'}")


def test_08_classify_e8_is_nonempty(acceptance):
    fam = classify_weights("E8", 15)
    acceptance(8, "E8 degree 15 family is a nonempty polytope", not fam.empty,
               f"{len(fam.free)} free weights {fam.free}")


# -- 9 ----------------------------------------------------------------------

IDENTITIES = [
    ("Sawa 91-term degree-6 identity (index-corrected)", sawa91),
    ("Reznick 113-term identity", reznick),
    ("Kurschak k=1", lambda: kurschak(1)),
    ("Kurschak k=2", lambda: kurschak(2)),
    ("Kurschak k=3", lambda: kurschak(3)),
    ("NS family a=1/192", lambda: ns_family(F(1, 192))),
    ("NS family a=1/150", lambda: ns_family(F(1, 150))),
    ("NS family a=1/120", lambda: ns_family(F(1, 120))),
    ("Schur", schur),
    ("Hurwitz", hurwitz),
    ("Sawa identity with the triples as printed", sawa91_as_printed),
    ("NS family with the coefficients as printed, a=1/192", lambda: ns_family_as_printed(F(1, 192))),
    ("NS family with the coefficients as printed, a=1/150", lambda: ns_family_as_printed(F(1, 150))),
    ("NS family with the coefficients as printed, a=1/120", lambda: ns_family_as_printed(F(1, 120))),
]

_IDENTITY_TIME = [0.0]


@pytest.mark.parametrize("label,build", IDENTITIES, ids=[x[0] for x in IDENTITIES])
def test_09_identities(acceptance, label, build):
    start = time.perf_counter()
    ident = build()
    rep = verify_identity(ident)
    _IDENTITY_TIME[0] += time.perf_counter() - start
    acceptance(9, f"{label}: m={ident.m}, q={ident.q}, {ident.n} terms", rep.valid,
               f"{rep.checked} monomials, {len(rep.failures)} differ")


def test_09_schur_hurwitz_same_cubature(acceptance):
    start = time.perf_counter()
    S, H = identity_to_cubature(schur()), identity_to_cubature(hurwitz())
    same = normalized_points(S) == normalized_points(H)
    _IDENTITY_TIME[0] += time.perf_counter() - start
    acceptance(9, "Schur and Hurwitz give the same normalized point/weight multiset",
               same and S.size == H.size == 72 and _IDENTITY_TIME[0] < IDENTITIES_LIMIT,
               f"{S.size} and {H.size} points, identity checks {_IDENTITY_TIME[0]:.1f}s total")


# -- 10 ---------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 4])
def test_10_no_pm1(acceptance, m):
    start = time.perf_counter()
    rep = no_pm1_representation(m, 8)
    elapsed = time.perf_counter() - start
    ok = (not rep.feasible and rep.witness_checked and rep.target_ratio == (2, 3)
          and rep.form_ratio == (2, 5) and elapsed < PM1_LIMIT)
    acceptance(10, f"m={m}, q=8: no representation by 0/+-1 forms", ok,
               f"rank {rep.rank} < augmented {rep.augmented_rank}; witness checked={rep.witness_checked}; "
               f"ratio {rep.target_ratio[0]}:{rep.target_ratio[1]} vs {rep.form_ratio[0]}:{rep.form_ratio[1]}; "
               f"{elapsed:.2f}s")


def test_10_control(acceptance):
    rep = no_pm1_representation(4, 4)
    ok = rep.feasible and rep.solution is not None and len(rep.solution) == 12 \
        and {c for c, _ in rep.solution} == {F(1, 6)}
    acceptance(10, "m=4, q=4 control recovers Kurschak", ok,
               f"{len(rep.solution or [])} forms, coefficients {sorted({str(c) for c, _ in rep.solution or []})}")


# -- 11 ---------------------------------------------------------------------

def test_11_substitution_matrix(acceptance):
    from test_victoir import MATRIX
    failed = []
    for case, build in sorted(MATRIX.items()):
        host, out = build()
        rep = verify_index(out, out.order)
        if not (rep.valid and rep.exact and out.total_weight() == host.total_weight()):
            failed.append(case)
    acceptance(11, f"substitution preserves validity over {len(MATRIX)} design/OA x host combinations",
               len(MATRIX) >= 20 and not failed, f"failed: {failed or 'none'}")


def test_11_trivial_oa_identity(acceptance):
    hosts = [("lem42i", m) for m in range(3, 11)] + [("lem62i", 8), ("lem62ii", 7)]
    failed = []
    for host in hosts:
        G = sqrt_points(catalog_formula(*host))
        for s in find_slots(G, "B"):
            wt = G.orbits[s.index].rep.weight_count()
            H = substitute_oa(G, s, trivial_oa(wt))
            before = Counter((p.direction, p.scale, w) for p, w in G.expanded())
            after = Counter((p.direction, p.scale, w) for p, w in H.expanded())
            if before != after:
                failed.append((host, s.index))
    acceptance(11, f"trivial OA leaves the point set unchanged ({len(hosts)} hosts, every sign orbit)",
               not failed, f"failed: {failed or 'none'}")


def test_11_antipodal_round_trip(acceptance):
    rng = random.Random(11)
    failed = 0
    for trial in range(40):
        m = rng.randint(2, 5)
        seen, orbits = set(), []
        for _ in range(rng.randint(1, 8)):
            d = [rng.randint(-3, 3) for _ in range(m)]
            if not any(d):
                continue
            lead = next(x for x in d if x)
            d = [x if lead > 0 else -x for x in d]
            key = tuple(F(x, abs(lead)) for x in d)
            if key in seen:
                continue
            seen.add(key)
            orbits.append(Orbit("point", CubPoint(tuple(d)), F(rng.randint(1, 9), 7)))
        Fm = CubatureFormula("sphere", m, tuple(orbits))
        back = halve_antipodal(double_antipodal(Fm))
        if Counter(map(repr, back.orbits)) != Counter(map(repr, Fm.orbits)):
            failed += 1
    pipeline = run_pipeline("ex45_s6_91").formula
    again = halve_antipodal(double_antipodal(pipeline))
    same = normalized_points(again) == normalized_points(pipeline)
    acceptance(11, "antipodal double then halve returns the original formula", not failed and same,
               f"40 random formulas, {failed} failed; 91-point formula round trip {'ok' if same else 'differs'}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
