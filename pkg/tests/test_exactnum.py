from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from cubforge.exactnum import (
    BASIS,
    ONE,
    ZERO,
    FieldElement,
    field_degree,
    field_inv,
    parse,
    render,
    row_reduce,
    solve_field,
)
from oracles import close, to_mp

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
elements = st.lists(small, min_size=8, max_size=8).map(FieldElement)
nonzero = elements.filter(lambda x: not x.is_zero())


@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO and a * ONE == a


@given(nonzero)
def test_inverse_is_exact(a):
    assert a * field_inv(a) == ONE
    assert a / a == ONE


@given(small, small, small, small)
def test_rational_reduction_round_trip(a, b, c, d):
    x = FieldElement(a) + FieldElement(b) * FieldElement(c) - FieldElement(d)
    assert x.is_rational() and x.to_fraction() == a + b * c - d


@given(elements)
def test_render_parse_round_trip(a):
    assert parse(render(a)) == a


@given(elements)
def test_sign_and_float_agree_with_independent_evaluation(a):
    value = to_mp(a)
    if a.is_zero():
        assert a.sign() == 0
    else:
        assert a.sign() == (1 if value > 0 else -1)
        assert close(float(a), value, tol=mpmath.mpf(2) ** -50)


def test_products_of_roots():
    r2, r3, r5 = (FieldElement.sqrt_of(d) for d in (2, 3, 5))
    assert r2 * r3 == FieldElement.sqrt_of(6)
    assert r2 * r3 * r5 == FieldElement.sqrt_of(30)
    assert r2 * r2 == 2
    assert FieldElement.sqrt_of(12) == 2 * r3
    with pytest.raises(ValueError):
        FieldElement.sqrt_of(7)


def test_public_basis_order():
    x = parse("1 + 2*r2 + 3*r3 + 5*r5 + 6*r6 + 10*r10 + 15*r15 + 30*r30")
    assert x.coeffs == tuple(Fraction(d) for d in BASIS)


def test_sqrt_of_rationals():
    assert FieldElement(Fraction(9, 4)).sqrt() == Fraction(3, 2)
    assert FieldElement(Fraction(1, 2)).sqrt() == FieldElement.sqrt_of(2) / 2
    with pytest.raises(ValueError):
        FieldElement(-1).sqrt()


def test_field_degree_counts_generated_subfield():
    assert field_degree([Fraction(1, 3), 7]) == 1
    assert field_degree([FieldElement.sqrt_of(2)]) == 2
    assert field_degree([FieldElement.sqrt_of(6)]) == 2
    assert field_degree([FieldElement.sqrt_of(2), FieldElement.sqrt_of(3)]) == 4
    assert field_degree([parse("r2 + r3 + r5")]) == 8


def test_linear_solve_over_the_field():
    r2 = FieldElement.sqrt_of(2)
    mat = [[ONE, r2], [r2, FieldElement(3)]]
    sol = solve_field(mat, [ONE, ZERO])
    assert sol[0] + r2 * sol[1] == ONE and r2 * sol[0] + 3 * sol[1] == ZERO
    rref, piv = row_reduce([[ONE, r2, ONE], [2 * ONE, 2 * r2, 2 * ONE]])
    assert piv == [0]
