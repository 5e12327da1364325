import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from cubforge.cubature import catalog_formula, sqrt_points, verify_index
from cubforge.designs import (
    BlockDesign,
    OrthogonalArray,
    catalog_design,
    complete_design,
    derive_design,
    dual_bch_oa,
    nordstrom_robinson,
    oa_from_linear_code,
    trivial_oa,
)
from cubforge.moments import monomials
from cubforge.victoir import (
    PIPELINES,
    OrbitSlot,
    SubstitutionError,
    find_slots,
    is_antipodal,
    run_pipeline,
    slot,
    substitute_design,
    substitute_oa,
    substitute_regular,
)
from oracles import close, explicit_points, formula_moment, gaussian_moment_gamma, orthant_moment_gamma

HAMMING8 = [[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 0, 0],
            [0, 0, 0, 0, 1, 1, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1]]


def _union(v, *ks):
    return BlockDesign(v, tuple(b for k in ks for b in complete_design(v, k).blocks))


def _design(host, m, ls, d):
    def build():
        F = catalog_formula(host, m)
        if len(ls) == 1:
            return F, substitute_design(F, slot(F, "L", ls[0]), d)
        return F, substitute_regular(F, [slot(F, "L", l) for l in ls], d)
    return build


def _oa(host, m, kind, l, oa, design=None):
    def build():
        F = catalog_formula(host, m)
        if design is not None:
            F = substitute_design(F, slot(F, "L", design[0]), design[1])
        G = sqrt_points(F)
        slots = find_slots(G, "sign", wt=oa.l) if kind == "sign" else slot(G, kind, l)
        return G, substitute_oa(G, slots, oa)
    return build


NR = nordstrom_robinson()

MATRIX = {
    "lem42ii-4 complete(4,2)": _design("lem42ii", 4, [2], complete_design(4, 2)),
    "lem42ii-7 fano": _design("lem42ii", 7, [3], catalog_design("fano")[0]),
    "lem42ii-7 complete(7,3)": _design("lem42ii", 7, [3], complete_design(7, 3)),
    "lem42ii-10 inversive": _design("lem42ii", 10, [4], catalog_design("inversive10")[0]),
    "lem42ii-13 complete(13,5)": _design("lem42ii", 13, [5], complete_design(13, 5)),
    "lem42ii-16 biplane": _design("lem42ii", 16, [6], catalog_design("biplane16")[0]),
    "lem42ii-25 sym25": _design("lem42ii", 25, [9], catalog_design("sym25")[0]),
    "lem62i-8 complete(8,3)": _design("lem62i", 8, [3], complete_design(8, 3)),
    "lem62i-14 sqs14": _design("lem62i", 14, [4], catalog_design("sqs14")[0]),
    "lem62ii-7 complete 3+2": _design("lem62ii", 7, [3, 2], _union(7, 3, 2)),
    "ex45 derived sqs8": _design("ex45", 7, [4, 3], derive_design(catalog_design("sqs8")[0], 7, 3)),
    "ex45 complete 4+3": _design("ex45", 7, [4, 3], _union(7, 4, 3)),
    "ex46 derived inversive": _design("ex46", 9, [4, 3], derive_design(catalog_design("inversive10")[0], 9, 3)),
    "lem42i-5 trivial": _oa("lem42i", 5, "B", 5, trivial_oa(5)),
    "lem42i-9 NR 9 columns": _oa("lem42i", 9, "B", 9, NR.columns(range(9))),
    "lem42i-12 NR 12 columns": _oa("lem42i", 12, "B", 12, NR.columns(range(12))),
    "lem42i-16 NR": _oa("lem42i", 16, "B", 16, NR),
    "lem42i-31 dual BCH": _oa("lem42i", 31, "B", 31, dual_bch_oa()),
    "lem42i-31 dual BCH + ones": _oa("lem42i", 31, "B", 31, dual_bch_oa(augment=True)),
    "lem62i-8 NR 8 columns": _oa("lem62i", 8, "B", 8, NR.columns(range(8))),
    "lem62i-8 design then OA(8,3)": _oa("lem62i", 8, "sign", None, trivial_oa(3), (3, complete_design(8, 3))),
    "lem62i-14 sqs14 then NR 4 columns": _oa("lem62i", 14, "sign", None, NR.columns(range(4)),
                                              (4, catalog_design("sqs14")[0])),
}

REJECTED = {
    "mixed block sizes": lambda: substitute_design(
        *_host("lem42ii", 7, 3), derive_design(catalog_design("sqs8")[0], 0)),
    "size mismatch": lambda: substitute_design(*_host("lem42ii", 10, 4), catalog_design("fano")[0]),
    "design strength deficit": lambda: substitute_design(
        *_host("lem62i", 8, 3), derive_design(catalog_design("sqs8")[0], 0)),
    "not a design": lambda: substitute_design(
        *_host("lem42ii", 7, 3), BlockDesign(7, ((0, 1, 2), (0, 1, 3), (4, 5, 6), (2, 3, 4)))),
    "OA strength deficit": lambda: substitute_oa(*_gauss_host("lem62i", 8, 8), oa_from_linear_code(HAMMING8)),
    "OA column mismatch": lambda: substitute_oa(*_gauss_host("lem42i", 9, 9), NR),
    "weight proportions": lambda: _regular_host("ex45", 7, (4, 3), BlockDesign(
        7, complete_design(7, 4).blocks[:7] + complete_design(7, 3).blocks)),
}


def _host(name, m, l):
    F = catalog_formula(name, m)
    return F, slot(F, "L", l)


def _regular_host(name, m, ls, d):
    F = catalog_formula(name, m)
    return substitute_regular(F, [slot(F, "L", l) for l in ls], d)


def _gauss_host(name, m, l):
    G = sqrt_points(catalog_formula(name, m))
    return G, slot(G, "B", l)


def test_matrix_is_large_enough():
    assert len(MATRIX) >= 20


@pytest.mark.parametrize("case", sorted(MATRIX))
def test_substitution_matrix(case):
    F, G = MATRIX[case]()
    assert G.total_weight() == F.total_weight()
    rep = verify_index(G, G.order)
    assert rep.valid and rep.exact, rep.failures[:3]
    if G.size <= 400 and G.m <= 9:
        target = orthant_moment_gamma if G.domain == "orthant" else gaussian_moment_gamma
        pts = explicit_points(G)
        for alpha in random.Random(case).sample(monomials(G.m, G.order), min(12, len(monomials(G.m, G.order)))):
            assert close(formula_moment(pts, G.domain, alpha), target(alpha)), alpha


@pytest.mark.parametrize("case", sorted(REJECTED))
def test_rejected_substitutions(case):
    with pytest.raises(SubstitutionError):
        REJECTED[case]()


def test_slot_lookup_errors():
    G = sqrt_points(catalog_formula("lem62i", 8))
    with pytest.raises(SubstitutionError):
        slot(G, "L", 3)
    with pytest.raises(SubstitutionError):
        OrbitSlot.of(G, 7)
    F = catalog_formula("lem62ii", 7)
    s = slot(F, "L", 3)
    with pytest.raises(SubstitutionError):
        s.orbit(catalog_formula("lem62ii", 13))


def _multiset(F):
    return Counter((p.direction, p.scale, w) for p, w in F.expanded())


@settings(max_examples=15)
@given(st.sampled_from([("lem42i", m) for m in range(3, 9)] + [("lem62i", 8), ("lem62ii", 7)]), st.data())
def test_trivial_oa_leaves_the_point_set_unchanged(host, data):
    G = sqrt_points(catalog_formula(*host))
    s = data.draw(st.sampled_from(find_slots(G, "B")))
    wt = G.orbits[s.index].rep.weight_count()
    H = substitute_oa(G, s, trivial_oa(wt))
    assert _multiset(H) == _multiset(G)
    assert H.centrally_symmetric


EXPECTED_POINTS = {"main2i_m16": (144, 4, 16), "main2ii_m25": (3200, 4, 25),
                   "ex45_s6_91": (91, 6, 7), "ex46_s8_457": (457, 6, 9)}


@pytest.mark.parametrize("name", PIPELINES)
def test_pipelines(name):
    res = run_pipeline(name)
    n, q, m = EXPECTED_POINTS[name]
    assert res.points == n and res.verified
    F = res.formula
    assert (F.domain, F.order, F.m) == ("sphere", q, m)
    assert F.total_weight() == 1
    assert len(res.steps) >= 3


def test_pipeline_sphere_formula_against_oracle():
    from oracles import sphere_moment_gamma
    F = run_pipeline("ex45_s6_91").formula
    pts = explicit_points(F)
    for alpha in monomials(7, 6)[::7]:
        assert close(formula_moment(pts, "sphere", alpha), sphere_moment_gamma(alpha)), alpha


def test_unknown_pipeline():
    with pytest.raises(KeyError):
        run_pipeline("nope")


def test_antipodality_detection():
    G = sqrt_points(catalog_formula("lem42i", 4))
    assert is_antipodal(G)
    assert is_antipodal(substitute_oa(G, slot(G, "B", 4), trivial_oa(4)))
    half = OrthogonalArray(trivial_oa(4).rows[trivial_oa(4).rows[:, 0] > 0])
    F = catalog_formula("lem42i", 4)
    assert not is_antipodal(F.with_steps())
    with pytest.raises(SubstitutionError):
        substitute_oa(G, slot(G, "B", 4), half)
