import math
from fractions import Fraction

import pytest

from cubforge.moments import (
    c_q,
    double_factorial,
    domain_moment,
    gaussian_moment,
    monomials,
    orthant_moment,
    radial_factor,
    sphere_moment,
)
from oracles import close, double_factorial_loop, gaussian_moment_gamma, orthant_moment_gamma, sphere_moment_gamma


def test_double_factorial_matches_loop():
    for n in range(-1, 25):
        assert double_factorial(n) == double_factorial_loop(n)


@pytest.mark.parametrize("m", range(2, 10))
def test_moments_against_gamma_functions(m):
    for q in range(0, 9):
        for alpha in monomials(m, q):
            assert close(sphere_moment(m, alpha), sphere_moment_gamma(alpha))
            assert close(gaussian_moment(alpha), gaussian_moment_gamma(alpha))
        if q <= 4:
            for alpha in monomials(m, q):
                assert close(orthant_moment(alpha), orthant_moment_gamma(alpha))


def test_monomial_count_and_order():
    for m in range(1, 6):
        for q in range(0, 7):
            ex = monomials(m, q)
            assert len(ex) == math.comb(m + q - 1, m - 1) == len(set(ex))
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]


def test_c_q_and_unit_mass():
    assert c_q(3, 2) == Fraction(1, 3)
    assert c_q(4, 4) == Fraction(1, 8)
    for m in range(2, 10):
        assert sum(sphere_moment(m, tuple(2 if i == j else 0 for i in range(m))) for j in range(m)) == 1
        assert radial_factor("gaussian", m, 2) == m


def test_domain_dispatch_and_errors():
    assert domain_moment("orthant", (1, 2)) == orthant_moment((1, 2)) == 3
    with pytest.raises(ValueError):
        domain_moment("cube", (1,))
    with pytest.raises(ValueError):
        sphere_moment(2, (1, -1))
    with pytest.raises(ValueError):
        c_q(3, 3)
