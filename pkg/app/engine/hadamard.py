#!/usr/bin/env python3
"""
Hadamard Triples
Exact Hadamard-triple test and the three ways a witness S = {0, s1, s2} is
produced: the J-set construction, a bounded lexicographic search, and the
zero-set construction. Also expands truncated spectra.

For a three-point digit set, (M, D, S) is Hadamard exactly when every
M^{*-1}(s - s') with s != s' is a zero of the mask polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from app.errors import CertificateError, InputError
from app.logger import get_logger
from app.modules.exactalg import IMat2, IVec2
from app.modules.maskzero import (
    Digits3,
    differences_in_zero_set,
    j_set,
    mask_is_zero_exact,
    zero_set_fundamental,
)

log = get_logger("hadamard")

Witness = tuple[IVec2, IVec2, IVec2]


@dataclass(frozen=True)
class SpectrumLevel:
    k: int
    points: tuple[IVec2, ...]


def _require_origin(points: tuple[IVec2, ...]) -> None:
    if IVec2(0, 0) not in points:
        raise InputError(f"witness set must contain 0: {[p.as_list() for p in points]}")


def is_hadamard(M: IMat2, D: Digits3, S: Iterable[IVec2]) -> bool:
    points = tuple(S)
    _require_origin(points)
    if len(set(points)) != len(points):
        raise InputError(f"witness set has duplicates: {[p.as_list() for p in points]}")

    M_star_inv = M.T.inverse()
    return all(
        mask_is_zero_exact(D, M_star_inv @ (s - t))
        for i, s in enumerate(points)
        for j, t in enumerate(points)
        if i != j
    )


def j_witness(M_tilde: IMat2, D_tilde: Digits3) -> Optional[tuple[int, Witness]]:
    """(i, M~^* J_i) for the smallest J-set that works, else None."""
    M_star = M_tilde.T
    for i in range(3):
        J = j_set(i)
        if not differences_in_zero_set(D_tilde, J):
            continue
        images = [M_star @ z for z in J]
        if all(v.is_integral() for v in images):
            return i, tuple(v.to_ivec() for v in images)
    return None


class _ZeroTest:
    """Integer-only test of 'M^{*-1} s is a zero of m_D'."""

    def __init__(self, M: IMat2, D: Digits3):
        delta = M.det
        adj = M.T.adjugate()
        sign = 1 if delta > 0 else -1
        self.delta = abs(delta)
        # n_i(s) = <adj(M^*) s, d_i> = <s, adj(M^*)^t d_i>
        self.r1 = adj.T @ D.d1.scale(sign)
        self.r2 = adj.T @ D.d2.scale(sign)
        self.modulus = 3 * self.delta
        self.targets = ((self.delta, 2 * self.delta), (2 * self.delta, self.delta))

    def __call__(self, s: IVec2) -> bool:
        a = (3 * self.r1.dot(s)) % self.modulus
        b = (3 * self.r2.dot(s)) % self.modulus
        return (a, b) in self.targets


def search_hadamard_S(M: IMat2, D: Digits3, bound: int) -> Optional[Witness]:
    """Lexicographically smallest {0, s1, s2} (s1 < s2) in the box [-bound, bound]^2."""
    if bound < 1:
        return None

    is_zero_image = _ZeroTest(M, D)
    box = range(-bound, bound + 1)
    valid = [IVec2(x, y) for x in box for y in box if (x, y) != (0, 0) and is_zero_image(IVec2(x, y))]

    for i, s1 in enumerate(valid):
        for s2 in valid[i + 1:]:
            if is_zero_image(s2 - s1):
                return IVec2(0, 0), s1, s2
    return None


def zero_set_witness(M: IMat2, D: Digits3) -> Optional[Witness]:
    """
    {0, s, 2s} with s = M^* z for the first zero z of m_D in [0,1)^2 whose
    image is integral. None means (M, D) admits no Hadamard triple at all.
    """
    M_star = M.T
    for z in zero_set_fundamental(D):
        image = M_star @ z
        if image.is_integral():
            s = image.to_ivec()
            return IVec2(0, 0), s, s.scale(2)
    return None


def default_search_bound(sigma: int, omega: int, eta: int, theta: int, factor: int = 3) -> int:
    return max(1, factor * max(abs(sigma), abs(omega), 3**eta * abs(theta)))


def find_witness(M: IMat2, D: Digits3, bound: int) -> Optional[tuple[str, Witness]]:
    """J-sets first, then the bounded search, then the zero-set construction."""
    found = j_witness(M, D)
    if found is not None:
        return f"j_set:{found[0]}", found[1]

    S = search_hadamard_S(M, D, bound)
    if S is not None:
        return "search", S

    S = zero_set_witness(M, D)
    if S is not None:
        return "zero_set", S

    log.debug(f"[Hadamard] no witness for M={M.rows()} D={D.as_lists()}")
    return None


def spectrum_truncated(M: IMat2, S: Iterable[IVec2], k: int, digits: Optional[Digits3] = None) -> SpectrumLevel:
    """All sums sum_{j<k} M^{*j} s_j. k = 0 gives {0}."""
    if k < 0:
        raise InputError(f"depth must be nonnegative, got {k}")

    S = tuple(S)
    _require_origin(S)
    M_star = M.T
    points = {IVec2(0, 0)}
    for _ in range(k):
        points = {s + M_star @ p for s in S for p in points}

    if digits is not None and is_hadamard(M, digits, S) and len(points) != 3**k:
        raise CertificateError(f"truncated spectrum has {len(points)} points, expected {3**k}")
    return SpectrumLevel(k=k, points=tuple(sorted(points)))
