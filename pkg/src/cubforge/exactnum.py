"""Exact arithmetic in Q(sqrt2, sqrt3, sqrt5) and high-precision evaluation.

Elements are stored as eight integer numerators over one positive common
denominator.  Internally the basis is indexed by a 3-bit mask over the primes
(2, 3, 5), so that sqrt(a)*sqrt(b) lands on mask ``a ^ b`` times the product of
the primes in ``a & b``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

Rational = Fraction
BigFloat = mpmath.mpf

DEFAULT_PRECISION = 256
COMPARISON_TOLERANCE_BITS = 128

_PRIMES = (2, 3, 5)
# radicand for each mask
_RADICAND = tuple(
    math.prod(p for bit, p in enumerate(_PRIMES) if mask >> bit & 1) for mask in range(8)
)
# public basis order: 1, r2, r3, r5, r6, r10, r15, r30
BASIS = (1, 2, 3, 5, 6, 10, 15, 30)
_MASK_OF = {d: _RADICAND.index(d) for d in BASIS}
_PUBLIC_TO_MASK = tuple(_MASK_OF[d] for d in BASIS)
_FACTOR = tuple(_RADICAND[m] for m in range(8))  # factor for mask (i & j)

Number = Union[int, Fraction, "FieldElement"]


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s*s*d and d squarefree."""
    s, d = 1, 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            s *= k
        if n % k == 0:
            n //= k
            d *= k
        k += 1
    return s, d * n


class FieldElement:
    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, value: Number | Sequence[Number] = 0):
        if isinstance(value, FieldElement):
            self._n, self._d = value._n, value._d
        elif isinstance(value, (int, Fraction)):
            f = Fraction(value)
            self._n = (f.numerator, 0, 0, 0, 0, 0, 0, 0)
            self._d = f.denominator
        else:
            coeffs = [Fraction(c) for c in value]
            if len(coeffs) != 8:
                raise ValueError("need 8 coefficients")
            den = math.lcm(*(c.denominator for c in coeffs))
            nums = [0] * 8
            for pub, c in enumerate(coeffs):
                nums[_PUBLIC_TO_MASK[pub]] = c.numerator * (den // c.denominator)
            self._n, self._d = _reduce(nums, den)
        self._hash = None

    @classmethod
    def _raw(cls, nums, den) -> "FieldElement":
        obj = cls.__new__(cls)
        obj._n, obj._d = _reduce(nums, den)
        obj._hash = None
        return obj

    @classmethod
    def sqrt_of(cls, d: int) -> "FieldElement":
        """sqrt(d) for a positive integer whose squarefree part divides 30."""
        if d < 0:
            raise ValueError("negative radicand")
        s, core = _squarefree_split(d)
        if core not in _MASK_OF:
            raise ValueError(f"sqrt({d}) is outside the field")
        nums = [0] * 8
        nums[_MASK_OF[core]] = s
        return cls._raw(nums, 1)

    # -- accessors -------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(self._n[m], self._d) for m in _PUBLIC_TO_MASK)

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_rational(self) -> bool:
        return not any(self._n[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._n[0], self._d)

    def support(self) -> tuple[int, ...]:
        """Radicands with nonzero coefficient."""
        return tuple(_RADICAND[m] for m in range(8) if self._n[m])

    def integer_parts(self) -> tuple[tuple[int, ...], int]:
        """Numerators in public basis order and the common denominator."""
        return tuple(self._n[m] for m in _PUBLIC_TO_MASK), self._d

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: Number) -> "FieldElement":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._d, o._d
        if d1 == d2:
            return FieldElement._raw([a + b for a, b in zip(self._n, o._n)], d1)
        return FieldElement._raw([a * d2 + b * d1 for a, b in zip(self._n, o._n)], d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        obj = FieldElement.__new__(FieldElement)
        obj._n = tuple(-a for a in self._n)
        obj._d = self._d
        obj._hash = None
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other: Number) -> "FieldElement":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other: Number) -> "FieldElement":
        return _coerce(other) - self

    def __mul__(self, other: Number) -> "FieldElement":
        if isinstance(other, int):
            return FieldElement._raw([a * other for a in self._n], self._d)
        if isinstance(other, Fraction):
            return FieldElement._raw(
                [a * other.numerator for a in self._n], self._d * other.denominator
            )
        if not isinstance(other, FieldElement):
            return NotImplemented
        a, b = self._n, other._n
        ia = [i for i in range(8) if a[i]]
        ib = [j for j in range(8) if b[j]]
        out = [0] * 8
        for i in ia:
            ai = a[i]
            for j in ib:
                out[i ^ j] += ai * b[j] * _FACTOR[i & j]
        return FieldElement._raw(out, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return field_inv(self)

    def __truediv__(self, other: Number) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in field")
            f = Fraction(other)
            return FieldElement._raw(
                [a * f.denominator for a in self._n], self._d * f.numerator
            )
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            return self / o.to_fraction()
        return self * field_inv(o)

    def __rtruediv__(self, other: Number) -> "FieldElement":
        return _coerce(other) * field_inv(self)

    def __pow__(self, k: int) -> "FieldElement":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return field_inv(self) ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._n[0], self._d))
            else:
                self._hash = hash((self._n, self._d))
        return self._hash

    def sign(self) -> int:
        """Exact sign, decided by evaluation at increasing precision."""
        if self.is_rational():
            return (self._n[0] > 0) - (self._n[0] < 0)
        bits = 128
        scale = sum(abs(a) for a in self._n)
        while bits <= 1 << 16:
            with mpmath.workprec(bits + 20):
                val = _eval_mp(self._n)
                bound = mpmath.mpf(scale) * mpmath.mpf(2) ** (-bits)
                if abs(val) > bound:
                    return 1 if val > 0 else -1
            bits *= 2
        raise ArithmeticError("sign undecided; element is numerically zero but nonzero")

    def __lt__(self, other) -> bool:
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - _coerce(other)).sign() >= 0

    def __abs__(self) -> "FieldElement":
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        return float(field_to_float(self, 64))

    # -- conjugation / roots ----------------------------------------------
    def conjugate(self, flips: int) -> "FieldElement":
        """Apply the field automorphism negating sqrt(p) for primes in the mask ``flips``."""
        out = [(-a if bin(m & flips).count("1") % 2 else a) for m, a in enumerate(self._n)]
        return FieldElement._raw(out, self._d)

    def sqrt(self) -> "FieldElement":
        """Square root when it lies in the field (rational radicands only)."""
        if self.sign() < 0:
            raise ValueError("square root of a negative element")
        if not self.is_rational():
            raise ValueError("square root of an irrational element is not supported")
        f = self.to_fraction()
        if f == 0:
            return FieldElement(0)
        s, core = _squarefree_split(f.numerator * f.denominator)
        if core not in _MASK_OF:
            raise ValueError(f"sqrt({f}) is outside the field")
        return FieldElement.sqrt_of(core) * Fraction(s, f.denominator)

    # -- text --------------------------------------------------------------
    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"FieldElement({render(self)!r})"


def _reduce(nums, den) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        nums = [-a for a in nums]
        den = -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums = [a // g for a in nums]
        den //= g
    return tuple(nums), den


def _coerce(x) -> FieldElement:
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement(x)
    return NotImplemented


def _eval_mp(nums) -> mpmath.mpf:
    total = mpmath.mpf(0)
    for m, a in enumerate(nums):
        if a:
            total += a * (mpmath.sqrt(_RADICAND[m]) if m else 1)
    return total


ZERO = FieldElement(0)
ONE = FieldElement(1)
SQRT2 = FieldElement.sqrt_of(2)
SQRT3 = FieldElement.sqrt_of(3)
SQRT5 = FieldElement.sqrt_of(5)
GOLDEN = (1 + SQRT5) / 2


def as_field(x: Number) -> FieldElement:
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, str):
        return parse(x)
    return FieldElement(x)


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return as_field(a) * as_field(b)


def multiplication_matrix(a: FieldElement) -> list[list[Fraction]]:
    """Matrix of x -> a*x on the public basis (columns are images of basis vectors)."""
    cols = []
    for pub in range(8):
        e = [0] * 8
        e[pub] = 1
        cols.append((a * FieldElement(e)).coeffs)
    return [[cols[j][i] for j in range(8)] for i in range(8)]


def solve_rational(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan solve of a square nonsingular rational system."""
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def row_reduce(rows) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form over the field; returns (rows, pivot columns)."""
    mat = [[as_field(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    n_cols = len(mat[0]) if mat else 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(mat)) if not mat[i][c].is_zero()), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = field_inv(mat[r][c])
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def solve_field(mat, rhs) -> list[FieldElement]:
    """Solve a square nonsingular system over the field."""
    n = len(mat)
    red, piv = row_reduce([list(row) + [b] for row, b in zip(mat, rhs)])
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def field_inv(a: FieldElement) -> FieldElement:
    a = as_field(a)
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero")
    if a.is_rational():
        return FieldElement(1 / a.to_fraction())
    sol = solve_rational(multiplication_matrix(a), [Fraction(1)] + [Fraction(0)] * 7)
    return FieldElement(sol)


def field_to_float(a: Number, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    if precision_bits < 53:
        raise ValueError("precision below 53 bits")
    a = as_field(a)
    with mpmath.workprec(precision_bits + 16):
        val = _eval_mp(a._n) / a._d
    with mpmath.workprec(precision_bits):
        return +val


def field_degree(elements: Iterable[Number]) -> int:
    """Degree over Q of the subfield generated by ``elements``.

    The subfield is the fixed field of the automorphisms fixing every element;
    an automorphism (sign flips on a set of primes) fixes an element iff each
    radicand in its support meets the flipped primes an even number of times.
    """
    masks = set()
    for e in elements:
        e = as_field(e)
        masks.update(m for m in range(8) if e._n[m])
    fixing = sum(
        1 for flips in range(8) if all(bin(m & flips).count("1") % 2 == 0 for m in masks)
    )
    return 8 // fixing


_NAMES = {1: "", 2: "r2", 3: "r3", 5: "r5", 6: "r6", 10: "r10", 15: "r15", 30: "r30"}
_NAME_TO_RADICAND = {v: k for k, v in _NAMES.items() if v}


def render(a: FieldElement) -> str:
    parts = []
    for d, c in zip(BASIS, a.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        body = str(mag) if d == 1 else (_NAMES[d] if mag == 1 else f"{mag}*{_NAMES[d]}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*(r\d+))?|(r\d+))$")


def parse(text: str) -> FieldElement:
    """Inverse of :func:`render`; accepts e.g. ``-1/2 + 3*r5 - r30``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty field element")
    if s[0] not in "+-":
        s = "+" + s
    tokens = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + body for sign, body in tokens) != s:
        raise ValueError(f"cannot parse field element {text!r}")
    coeffs = {d: Fraction(0) for d in BASIS}
    for sign, body in tokens:
        m = _TERM.match(body)
        if not m:
            raise ValueError(f"bad term {body!r} in {text!r}")
        num, name, bare = m.groups()
        if bare:
            val, name = Fraction(1), bare
        else:
            val = Fraction(num)
        if name and name not in _NAME_TO_RADICAND:
            raise ValueError(f"unknown radical {name!r}")
        d = _NAME_TO_RADICAND[name] if name else 1
        coeffs[d] += -val if sign == "-" else val
    return FieldElement([coeffs[d] for d in BASIS])
