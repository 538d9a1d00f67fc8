#!/usr/bin/env python3
"""
Mask Zero Sets
Exact description of the zeros of the mask polynomial of a three-element digit
set D = {0, d1, d2}:

    m_D(x) = (1 + e^{2 pi i <d1,x>} + e^{2 pi i <d2,x>}) / 3

vanishes exactly when {<d1,x>, <d2,x>} = {1/3, 2/3} (mod 1). Also provides the
point families used by the structure arguments and the J-sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from app.errors import CollinearDigitsError, DuplicateDigitsError, InputError
from app.logger import get_logger
from app.modules.exactalg import IMat2, IVec2, QVec2, QMat2, gcd, hermite_lattice_reps

log = get_logger("maskzero")

THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)
ZERO_RESIDUES = ((THIRD, TWO_THIRDS), (TWO_THIRDS, THIRD))


@dataclass(frozen=True)
class Digits3:
    """Normalized digit set {0, d1, d2}: d1, d2 nonzero and distinct, coordinates coprime."""
    d1: IVec2
    d2: IVec2

    @property
    def points(self) -> tuple[IVec2, IVec2, IVec2]:
        return (IVec2(0, 0), self.d1, self.d2)

    @property
    def B(self) -> IMat2:
        """Matrix with columns d1, d2."""
        return IMat2.from_columns(self.d1, self.d2)

    def is_collinear(self) -> bool:
        return self.B.det == 0

    def transformed(self, A: IMat2) -> Digits3:
        return Digits3(A @ self.d1, A @ self.d2)

    def as_lists(self) -> list[list[int]]:
        return [p.as_list() for p in self.points]


@dataclass(frozen=True)
class Normalization:
    """D_raw = translation + scale * D."""
    digits: Digits3
    translation: IVec2
    scale: int


class PointFamily(str, Enum):
    H = "H"
    G = "G"
    G1 = "G1"
    G2 = "G2"


def normalize_digits(raw: Iterable) -> Normalization:
    """Translate the first digit to the origin and divide out the common gcd."""
    points = [p if isinstance(p, IVec2) else IVec2(int(p[0]), int(p[1])) for p in raw]
    if len(points) != 3:
        raise InputError(f"expected 3 digits, got {len(points)}")
    if len(set(points)) != 3:
        raise DuplicateDigitsError(f"digits are not distinct: {[p.as_list() for p in points]}")

    translation = points[0]
    d1, d2 = points[1] - translation, points[2] - translation
    scale = gcd(d1.x, d1.y, d2.x, d2.y)

    digits = Digits3(IVec2(d1.x // scale, d1.y // scale), IVec2(d2.x // scale, d2.y // scale))
    log.debug(f"[Normalize] translation={translation.as_list()} scale={scale} digits={digits.as_lists()}")
    return Normalization(digits=digits, translation=translation, scale=scale)


def mask_is_zero_exact(D: Digits3, x: QVec2) -> bool:
    e1 = x.dot(D.d1) % 1
    e2 = x.dot(D.d2) % 1
    return (e1, e2) in ZERO_RESIDUES


def zero_set_fundamental(D: Digits3) -> list[QVec2]:
    """
    All zeros of m_D in [0,1)^2, sorted. Solves B^t x = u (mod Z^2) for the two
    residue pairs u over the |det B| coset representatives of Z^2 / B^t Z^2.
    """
    Bt = D.B.T
    if Bt.det == 0:
        raise CollinearDigitsError("zero set of a collinear digit set is not finite")

    Bt_inv = Bt.inverse()
    zeros = set()
    for k in hermite_lattice_reps(Bt):
        for u1, u2 in ZERO_RESIDUES:
            x = (Bt_inv @ QVec2(u1 + k.x, u2 + k.y)).mod1()
            assert mask_is_zero_exact(D, x)
            zeros.add(x)

    assert len(zeros) == 2 * abs(Bt.det)
    return sorted(zeros)


def zero_set_scan(D: Digits3) -> list[QVec2]:
    """Reference scan over the grid (1/N)Z^2 in [0,1)^2, N = 3|det B|."""
    n = 3 * abs(D.B.det)
    if n == 0:
        raise CollinearDigitsError("zero set of a collinear digit set is not finite")
    return [
        QVec2(Fraction(a, n), Fraction(b, n))
        for a in range(n)
        for b in range(n)
        if mask_is_zero_exact(D, QVec2(Fraction(a, n), Fraction(b, n)))
    ]


def classify_zero_point(x: QVec2, gamma: int, eta: int) -> frozenset[PointFamily]:
    """Families containing x; the empty set means NONE."""
    families = set()

    def integer_off_three(value: Fraction) -> bool:
        return value.denominator == 1 and value.numerator % 3 != 0

    l1 = x.x * 3 * gamma
    if integer_off_three(l1):
        if (x.y * 3**eta * gamma).denominator == 1:
            families.add(PointFamily.H)
        if integer_off_three(x.y * 3 ** (eta + 1) * gamma):
            families.add(PointFamily.G)

    k1, k2 = 3 * x.x, 3 ** (eta + 1) * x.y
    if integer_off_three(k1) and integer_off_three(k2):
        if (k1.numerator - k2.numerator) % 3 == 0:
            families.add(PointFamily.G1)
        else:
            families.add(PointFamily.G2)

    return frozenset(families)


def family_label(families: frozenset[PointFamily]) -> str:
    if not families:
        return "NONE"
    return "+".join(f.value for f in sorted(families, key=lambda f: f.value))


J_SETS = {
    0: (QVec2(0, 0), QVec2(THIRD, 0), QVec2(TWO_THIRDS, 0)),
    1: (QVec2(0, 0), QVec2(THIRD, TWO_THIRDS), QVec2(TWO_THIRDS, THIRD)),
    2: (QVec2(0, 0), QVec2(THIRD, THIRD), QVec2(TWO_THIRDS, TWO_THIRDS)),
}


def j_set(i: int) -> tuple[QVec2, QVec2, QVec2]:
    if i not in J_SETS:
        raise InputError(f"J-set index must be 0, 1 or 2, got {i}")
    return J_SETS[i]


def differences_in_zero_set(D: Digits3, points) -> bool:
    """(points - points) minus {0} lies in the zero set of m_D."""
    return all(
        mask_is_zero_exact(D, a - b)
        for i, a in enumerate(points)
        for j, b in enumerate(points)
        if i != j
    )


def j_sets_in_zero_set(D: Digits3) -> list[int]:
    return [i for i in J_SETS if differences_in_zero_set(D, J_SETS[i])]


@dataclass(frozen=True)
class CollinearProfile:
    """D = {0, a*v, b*v} with v primitive."""
    direction: IVec2
    a: int
    b: int

    @property
    def zero_set_nonempty(self) -> bool:
        return {self.a % 3, self.b % 3} == {1, 2}


def collinear_profile(D: Digits3) -> CollinearProfile:
    if not D.is_collinear():
        raise InputError("digit set is not collinear")

    a = gcd(D.d1.x, D.d1.y)
    v = IVec2(D.d1.x // a, D.d1.y // a)
    b = D.d2.x // v.x if v.x != 0 else D.d2.y // v.y
    return CollinearProfile(direction=v, a=a, b=b)


def transform_points(A: QMat2, points) -> list[QVec2]:
    return [A @ p for p in points]
