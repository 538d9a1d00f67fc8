#!/usr/bin/env python3
"""
Exact Arithmetic
Integer / rational 2-vectors and 2x2 matrices plus the small number theory the
engine needs: normalized Bezout pairs, 3-adic valuation, inverses mod 3,
expansiveness and lattice coset representatives.

Everything here is exact (int / fractions.Fraction); floats never enter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from sympy import Matrix, factorint, multiplicity
from sympy.core.intfunc import igcdex

from app.errors import DegenerateInputError, SingularMatrixError, SingularMod3Error

INFINITE = math.inf

Rational = Union[int, Fraction]


# ---------------------------------------- Vectors -------------------------------------------

@dataclass(frozen=True, order=True)
class IVec2:
    x: int
    y: int

    def __add__(self, other: IVec2) -> IVec2:
        return IVec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: IVec2) -> IVec2:
        return IVec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> IVec2:
        return IVec2(-self.x, -self.y)

    def __iter__(self) -> Iterator[int]:
        yield self.x
        yield self.y

    def scale(self, k: int) -> IVec2:
        return IVec2(k * self.x, k * self.y)

    def dot(self, other: IVec2) -> int:
        return self.x * other.x + self.y * other.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def to_q(self) -> QVec2:
        return QVec2(Fraction(self.x), Fraction(self.y))

    def as_list(self) -> list[int]:
        return [self.x, self.y]


@dataclass(frozen=True, order=True)
class QVec2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __add__(self, other: QVec2 | IVec2) -> QVec2:
        return QVec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: QVec2 | IVec2) -> QVec2:
        return QVec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> QVec2:
        return QVec2(-self.x, -self.y)

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y

    def scale(self, k: Rational) -> QVec2:
        return QVec2(k * self.x, k * self.y)

    def dot(self, other: QVec2 | IVec2) -> Fraction:
        return self.x * other.x + self.y * other.y

    def mod1(self) -> QVec2:
        """Representative in [0,1)^2."""
        return QVec2(self.x % 1, self.y % 1)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def to_ivec(self) -> IVec2:
        if not self.is_integral():
            raise ValueError(f"{self} is not integral")
        return IVec2(int(self.x), int(self.y))

    def as_strings(self) -> list[str]:
        return [str(self.x), str(self.y)]


# ---------------------------------------- Matrices ------------------------------------------

@dataclass(frozen=True)
class IMat2:
    a11: int
    a12: int
    a21: int
    a22: int

    @classmethod
    def from_rows(cls, rows) -> IMat2:
        (a11, a12), (a21, a22) = rows
        return cls(int(a11), int(a12), int(a21), int(a22))

    @classmethod
    def from_columns(cls, c1: IVec2, c2: IVec2) -> IMat2:
        return cls(c1.x, c2.x, c1.y, c2.y)

    @classmethod
    def identity(cls) -> IMat2:
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, a: int, b: int) -> IMat2:
        return cls(a, 0, 0, b)

    @property
    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def trace(self) -> int:
        return self.a11 + self.a22

    @property
    def T(self) -> IMat2:
        return IMat2(self.a11, self.a21, self.a12, self.a22)

    def adjugate(self) -> IMat2:
        return IMat2(self.a22, -self.a12, -self.a21, self.a11)

    def __matmul__(self, other):
        if isinstance(other, IMat2):
            return IMat2(
                self.a11 * other.a11 + self.a12 * other.a21,
                self.a11 * other.a12 + self.a12 * other.a22,
                self.a21 * other.a11 + self.a22 * other.a21,
                self.a21 * other.a12 + self.a22 * other.a22,
            )
        if isinstance(other, IVec2):
            return IVec2(self.a11 * other.x + self.a12 * other.y, self.a21 * other.x + self.a22 * other.y)
        if isinstance(other, (QMat2, QVec2)):
            return self.to_q() @ other
        return NotImplemented

    def __add__(self, other: IMat2) -> IMat2:
        return IMat2(self.a11 + other.a11, self.a12 + other.a12, self.a21 + other.a21, self.a22 + other.a22)

    def __sub__(self, other: IMat2) -> IMat2:
        return self + other * -1

    def __mul__(self, k: int) -> IMat2:
        return IMat2(k * self.a11, k * self.a12, k * self.a21, k * self.a22)

    __rmul__ = __mul__

    def power(self, n: int) -> IMat2:
        result, base = IMat2.identity(), self
        while n > 0:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def mod(self, n: int) -> IMat2:
        return IMat2(self.a11 % n, self.a12 % n, self.a21 % n, self.a22 % n)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a11, self.a12, self.a21, self.a22)

    def rows(self) -> list[list[int]]:
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def to_q(self) -> QMat2:
        return QMat2(*self.entries())

    def inverse(self) -> QMat2:
        return self.to_q().inverse()


@dataclass(frozen=True)
class QMat2:
    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows) -> QMat2:
        (a11, a12), (a21, a22) = rows
        return cls(Fraction(a11), Fraction(a12), Fraction(a21), Fraction(a22))

    @classmethod
    def identity(cls) -> QMat2:
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, a: Rational, b: Rational) -> QMat2:
        return cls(a, 0, 0, b)

    @property
    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def T(self) -> QMat2:
        return QMat2(self.a11, self.a21, self.a12, self.a22)

    def inverse(self) -> QMat2:
        det = self.det
        if det == 0:
            raise SingularMatrixError(f"singular matrix {self.rows_str()}")
        return QMat2(self.a22 / det, -self.a12 / det, -self.a21 / det, self.a11 / det)

    def __matmul__(self, other):
        if isinstance(other, IMat2):
            other = other.to_q()
        if isinstance(other, IVec2):
            other = other.to_q()
        if isinstance(other, QMat2):
            return QMat2(
                self.a11 * other.a11 + self.a12 * other.a21,
                self.a11 * other.a12 + self.a12 * other.a22,
                self.a21 * other.a11 + self.a22 * other.a21,
                self.a21 * other.a12 + self.a22 * other.a22,
            )
        if isinstance(other, QVec2):
            return QVec2(self.a11 * other.x + self.a12 * other.y, self.a21 * other.x + self.a22 * other.y)
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, IMat2):
            return other.to_q() @ self
        return NotImplemented

    def __mul__(self, k: Rational) -> QMat2:
        return QMat2(k * self.a11, k * self.a12, k * self.a21, k * self.a22)

    __rmul__ = __mul__

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a11, self.a12, self.a21, self.a22)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries())

    def to_imat(self) -> IMat2:
        if not self.is_integral():
            raise ValueError(f"{self.rows_str()} is not integral")
        return IMat2(*(int(e) for e in self.entries()))

    def rows_str(self) -> list[list[str]]:
        return [[str(self.a11), str(self.a12)], [str(self.a21), str(self.a22)]]


# --------------------------------------- Number theory --------------------------------------

@dataclass(frozen=True)
class Val3:
    """n = 3^s * c with 3 not dividing c; s is INFINITE (and c = 0) for n = 0."""
    s: int | float
    c: int

    @property
    def infinite(self) -> bool:
        return self.s == INFINITE

    def at_least(self, n: int) -> bool:
        return self.s >= n

    def label(self) -> str:
        return "INFINITE" if self.infinite else str(self.s)


def gcd(*values: int) -> int:
    return math.gcd(*values)


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """
    Returns (g, p, q) with g = gcd(a, b) >= 0 and p*a + q*b = g.

    The pair is normalized so that q lies in (-|a/g|, 0] when a != 0, and is
    (0, sign b) when a = 0. Raises DegenerateInputError for (0, 0).
    """
    if a == 0 and b == 0:
        raise DegenerateInputError("bezout(0, 0) is undefined")

    if a == 0:
        return abs(b), 0, (1 if b > 0 else -1)

    p, q, g = (int(v) for v in igcdex(a, b))
    if g < 0:
        p, q, g = -p, -q, -g

    a_g, b_g = a // g, b // g
    j = (-q) // abs(a_g)
    sign = 1 if a_g > 0 else -1
    q = q + j * abs(a_g)
    p = p - j * sign * b_g

    assert p * a + q * b == g
    return g, p, q


def val3(n: int) -> Val3:
    if n == 0:
        return Val3(INFINITE, 0)
    s = int(multiplicity(3, abs(n)))
    return Val3(s, n // 3**s)


def mod3_inverse(B: IMat2) -> IMat2:
    """Integer representative (entries in {0,1,2}) of B^-1 over Z/3."""
    if B.det % 3 == 0:
        raise SingularMod3Error(f"det {B.det} is divisible by 3")
    inv = Matrix(B.rows()).inv_mod(3)
    return IMat2.from_rows([[int(inv[0, 0]) % 3, int(inv[0, 1]) % 3], [int(inv[1, 0]) % 3, int(inv[1, 1]) % 3]])


def is_expanding(M: IMat2) -> bool:
    """All eigenvalues of M have modulus > 1 (integer-only test)."""
    t, d = M.trace, M.det
    if t * t < 4 * d:
        return d > 1
    return abs(d) > 1 and (d - t + 1) * d > 0 and (d + t + 1) * d > 0


def kernel_stabilization_bound(n: int) -> int:
    """Length of the Z-module (Z/n)^2, i.e. 2 * (prime factors of n with multiplicity)."""
    if n <= 1:
        return 0
    return 2 * sum(factorint(n).values())


def hermite_lattice_reps(T: IMat2) -> list[IVec2]:
    """Coset representatives of Z^2 / T Z^2 (lattice spanned by the columns of T)."""
    if T.det == 0:
        raise SingularMatrixError("lattice basis is singular")

    a, b = T.a11, T.a12
    g, _, _ = bezout(a, b)
    h22 = abs((b // g) * T.a21 - (a // g) * T.a22)
    return [IVec2(i, j) for i in range(g) for j in range(h22)]
