from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cubforge.cubature import (
    CATALOG_NAMES,
    CubatureFormula,
    CubPoint,
    Orbit,
    RadialScale,
    catalog_formula,
    double_antipodal,
    dumps,
    halve_antipodal,
    loads,
    moment_sums,
    read_formula,
    sqrt_points,
    square_points,
    to_sphere,
    verify_degree,
    verify_index,
    write_formula,
)
from cubforge.exactnum import FieldElement
from cubforge.moments import monomials
from oracles import close, explicit_points, formula_moment, orthant_moment_gamma, sphere_moment_gamma

SMALL_CASES = [("lem42i", 3), ("lem42i", 5), ("lem42ii", 4), ("lem42ii", 7),
               ("lem62i", 8), ("lem62ii", 7), ("ex45", 7)]


@pytest.mark.parametrize("name,m", SMALL_CASES)
def test_catalog_formulas_against_float_oracle(name, m):
    F = catalog_formula(name, m)
    pts = explicit_points(F)
    for alpha in monomials(m, F.order):
        assert close(formula_moment(pts, "orthant", alpha), orthant_moment_gamma(alpha)), alpha
    assert verify_index(F, F.order).valid


def test_catalog_total_weight_is_one():
    for name, m in SMALL_CASES + [("ex46", 9)]:
        assert catalog_formula(name, m).total_weight() == 1


@pytest.mark.parametrize("name,m", [("lem62i", 8), ("lem62i", 14), ("lem62ii", 7), ("lem62ii", 13)])
def test_published_index3_radii_fail(name, m):
    rep = verify_index(catalog_formula(name, m, variant="printed"), 3)
    assert not rep.valid and rep.exact


def test_index2_published_equals_derived():
    for m in (4, 7):
        assert catalog_formula("lem42ii", m, "printed").orbits == catalog_formula("lem42ii", m).orbits


def test_catalog_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        catalog_formula("lem42ii", 5)
    with pytest.raises(ValueError):
        catalog_formula("lem62i", 9)
    with pytest.raises(KeyError):
        catalog_formula("nope", 3)
    assert set(CATALOG_NAMES) >= {"lem42i", "lem42ii", "lem62i", "lem62ii"}


def test_sqrt_lift_and_back():
    F = catalog_formula("lem42i", 4)
    G = sqrt_points(F)
    assert G.domain == "gaussian" and G.order == 4 and G.centrally_symmetric
    assert verify_index(G, 4).valid
    assert not verify_index(G, 2).valid  # an index formula, not a degree formula
    assert square_points(G).orbits == F.orbits


def test_to_sphere_matches_gamma_moments():
    G = sqrt_points(catalog_formula("lem42i", 3))
    S = to_sphere(G)
    assert S.total_weight() == 1 and verify_index(S, 4).valid
    pts = explicit_points(S)
    for alpha in monomials(3, 4):
        assert close(formula_moment(pts, "sphere", alpha), sphere_moment_gamma(alpha))


def test_to_sphere_refusals():
    F = catalog_formula("lem42i", 3)
    with pytest.raises(ValueError):
        to_sphere(F)
    G = sqrt_points(catalog_formula("lem62i", 8))
    with pytest.raises(ValueError):
        to_sphere(G, 3)


def test_positive_weights_enforced():
    p = CubPoint((1, 0))
    with pytest.raises(ValueError):
        CubatureFormula("sphere", 2, (Orbit("point", p, Fraction(-1)),))


def test_radial_scale_reduces():
    assert RadialScale(Fraction(16), 4) == RadialScale(Fraction(2), 1)
    assert RadialScale(Fraction(8), 6).power(2) == 2
    assert RadialScale(Fraction(2), 3).power(2) is None


directions = st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(any)


def _projective(v):
    g = next(x for x in v if x)
    return tuple(Fraction(x, abs(g)) for x in v), tuple(Fraction(-x, abs(g)) for x in v)


@given(st.lists(st.tuples(directions, st.integers(1, 9)), min_size=1, max_size=8))
def test_antipodal_round_trip(items):
    seen, orbits = set(), []
    for d, w in items:
        key, neg = _projective(d)
        if key in seen or neg in seen:
            continue
        seen.add(key)
        lead = next(x for x in d if x)
        d = tuple(x if lead > 0 else -x for x in d)
        orbits.append(Orbit("point", CubPoint(d), Fraction(w)))
    F = CubatureFormula("sphere", 3, tuple(orbits))
    D = double_antipodal(F)
    assert D.centrally_symmetric and D.size == 2 * F.size
    H = halve_antipodal(D)
    assert sorted(map(repr, H.orbits)) == sorted(map(repr, F.orbits))
    exps = monomials(3, 2) + monomials(3, 4)
    assert moment_sums(D, exps)[0] == moment_sums(F, exps)[0]
    assert all(x.is_zero() for x in moment_sums(D, monomials(3, 3))[0])


def test_halving_rejects_unbalanced():
    F = CubatureFormula("sphere", 2, (Orbit("point", CubPoint((1, 0)), Fraction(1)),
                                      Orbit("point", CubPoint((-1, 0)), Fraction(2))))
    with pytest.raises(ValueError):
        halve_antipodal(F)


def test_irrational_points_round_trip_text(tmp_path):
    r2 = FieldElement.sqrt_of(2)
    F = CubatureFormula("sphere", 2, (Orbit("point", CubPoint((r2, 1)), Fraction(1, 3)),
                                      Orbit("sign", CubPoint((1, 1)), r2 / 4)))
    assert loads(dumps(F)) == F
    G = sqrt_points(catalog_formula("lem62ii", 7))
    write_formula(G, tmp_path / "g.txt")
    assert read_formula(tmp_path / "g.txt") == G


def test_irrational_sphere_formula_verifies():
    r3 = FieldElement.sqrt_of(3)
    F = CubatureFormula("sphere", 2, (Orbit("sign", CubPoint((r3, 1)), Fraction(1, 8)),
                                      Orbit("sign", CubPoint((1, r3)), Fraction(1, 8))), centrally_symmetric=True)
    assert verify_degree(F, 3).valid
