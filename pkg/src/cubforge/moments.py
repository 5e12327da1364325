"""Exact monomial moments of the normalized sphere, Gaussian and orthant measures.

The orthant measure is the image of the Gaussian under x -> x**2 restricted to
the first orthant, so its moments are Gaussian moments of doubled exponents.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Exponent = Sequence[int]


@lru_cache(maxsize=None)
def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _check(alpha: Exponent) -> tuple[int, ...]:
    alpha = tuple(map(int, alpha))
    if alpha and min(alpha) < 0:
        raise ValueError("negative exponent")
    return alpha


def sphere_moment(m: int, alpha: Exponent) -> Fraction:
    alpha = _check(alpha)
    if len(alpha) != m:
        raise ValueError("exponent length differs from dimension")
    if m < 2:
        raise ValueError("sphere needs m >= 2")
    return _sphere_core(m, _shape(alpha))


def _shape(alpha: tuple[int, ...]) -> tuple[int, ...]:
    # every moment here is symmetric in the coordinates and blind to zero exponents
    return tuple(sorted(filter(None, alpha)))


@lru_cache(maxsize=65536)
def _sphere_core(m: int, shape: tuple[int, ...]) -> Fraction:
    if any(a % 2 for a in shape):
        return Fraction(0)
    num = double_factorial(m - 2)
    for a in shape:
        num *= double_factorial(a - 1)
    return Fraction(num, double_factorial(m + sum(shape) - 2))


def c_q(m: int, q: int) -> Fraction:
    if q % 2:
        raise ValueError("c_q needs an even power")
    return sphere_moment(m, (q,) + (0,) * (m - 1))


def gaussian_moment(alpha: Exponent) -> Fraction:
    return _gaussian_core(_shape(_check(alpha)))


@lru_cache(maxsize=65536)
def _gaussian_core(shape: tuple[int, ...]) -> Fraction:
    if any(a % 2 for a in shape):
        return Fraction(0)
    out = 1
    for a in shape:
        out *= double_factorial(a - 1)
    return Fraction(out)


def orthant_moment(alpha: Exponent) -> Fraction:
    return _gaussian_core(tuple(2 * a for a in _shape(_check(alpha))))


def radial_factor(weight: str, m: int, q: int) -> Fraction:
    """E||x||^q for the standard Gaussian in R^m (q even)."""
    if weight != "gaussian":
        raise ValueError(f"unsupported radial weight {weight!r}")
    if q % 2:
        raise ValueError("radial factor implemented for even q only")
    out = 1
    for i in range(q // 2):
        out *= m + 2 * i
    return Fraction(out)


def domain_moment(domain: str, alpha: Exponent) -> Fraction:
    if domain == "sphere":
        return sphere_moment(len(alpha), alpha)
    if domain == "gaussian":
        return gaussian_moment(alpha)
    if domain == "orthant":
        return orthant_moment(alpha)
    raise ValueError(f"unknown domain {domain!r}")


def monomials(m: int, q: int) -> list[tuple[int, ...]]:
    """All exponents of total degree q in m variables, graded-lex descending."""
    return list(_monomials(m, q))


@lru_cache(maxsize=1024)
def _monomials(m: int, q: int) -> tuple[tuple[int, ...], ...]:
    if m == 0:
        return ((),) if q == 0 else ()
    if m == 1:
        return ((q,),)
    return tuple((a,) + rest for a in range(q, -1, -1) for rest in _monomials(m - 1, q - a))
