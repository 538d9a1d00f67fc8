#!/usr/bin/env python3
"""
Canonical Pair
Moves (M, D) by a unimodular P to the canonical shape

    D~ = P D = {0, (sigma, 0), (omega, 3^eta * theta)},    M~ = P M P^-1

and provides the scaling conjugations Q_n = diag(1, 3^-n) together with the
similarity transport of spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from app.errors import CollinearDigitsError, InputError, NonIntegralConjugateError, NotExpandingError
from app.logger import get_logger
from app.modules.exactalg import IMat2, IVec2, QMat2, QVec2, bezout, gcd, is_expanding, val3
from app.modules.maskzero import Digits3

log = get_logger("canonical")


class CaseTag(str, Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class CanonicalForm:
    P: IMat2
    M_tilde: IMat2
    D_tilde: Digits3
    sigma: int
    omega: int
    eta: int
    theta: int
    gamma: int
    t1: int
    t2: int
    p: int
    q: int
    swapped: bool

    @property
    def P_inverse(self) -> IMat2:
        return IMat2(self.t1, -self.q, self.t2, self.p)

    @property
    def case(self) -> CaseTag:
        return case_of(self)


def canonicalize(M: IMat2, D: Digits3, bezout_shift: int = 0) -> CanonicalForm:
    """
    Builds the canonical form of a normalized, non-collinear pair.

    Args:
        M: expanding integer matrix
        D: normalized digit set
        bezout_shift: k replaces the Bezout pair (p, q) by (p + k*t2, q - k*t1)

    Returns:
        CanonicalForm
    """
    if D.is_collinear():
        raise CollinearDigitsError("canonical form needs non-collinear digits")
    if not is_expanding(M):
        raise NotExpandingError()
    if gcd(D.d1.x, D.d1.y, D.d2.x, D.d2.y) != 1:
        raise InputError("digit set is not normalized (common factor left)")

    alpha, beta = D.d1, D.d2
    swapped = gcd(alpha.x, alpha.y) % 3 == 0
    if swapped:
        alpha, beta = beta, alpha

    sigma = gcd(alpha.x, alpha.y)
    t1, t2 = alpha.x // sigma, alpha.y // sigma
    _, p, q = bezout(t1, t2)
    p, q = p + bezout_shift * t2, q - bezout_shift * t1

    P = IMat2(p, q, -t2, t1)
    P_inv = IMat2(t1, -q, t2, p)

    D_tilde = Digits3(P @ alpha, P @ beta)
    omega = D_tilde.d2.x
    v = val3(D_tilde.d2.y)
    eta, theta = int(v.s), v.c

    cf = CanonicalForm(
        P=P,
        M_tilde=P @ M @ P_inv,
        D_tilde=D_tilde,
        sigma=sigma,
        omega=omega,
        eta=eta,
        theta=theta,
        gamma=sigma * theta,
        t1=t1,
        t2=t2,
        p=p,
        q=q,
        swapped=swapped,
    )
    log.debug(f"[Canonical] P={P.rows()} M~={cf.M_tilde.rows()} sigma={sigma} omega={omega} eta={eta} theta={theta}")
    return cf


def case_of(cf: CanonicalForm) -> CaseTag:
    return CaseTag.I if (2 * cf.sigma - cf.omega) % 3 == 0 else CaseTag.II


def case_from_digits(D: Digits3) -> CaseTag:
    """Same case, read off the original digits: 2*d1 - d2 in 3Z^2."""
    w = D.d1.scale(2) - D.d2
    return CaseTag.I if w.x % 3 == 0 and w.y % 3 == 0 else CaseTag.II


def q_n(n: int) -> QMat2:
    return QMat2.diag(1, Fraction(1, 3**n))


def transport_spectrum(points: Iterable[QVec2 | IVec2], A: QMat2 | IMat2) -> tuple[QVec2, ...]:
    """Applies A^{*-1} to every point (spectra of (M, D) map to spectra of (AMA^-1, AD))."""
    if isinstance(A, IMat2):
        A = A.to_q()
    A_star_inv = A.T.inverse()
    return tuple(A_star_inv @ p for p in points)


def integer_conjugate(M: IMat2, Q: QMat2) -> IMat2:
    conj = Q @ M @ Q.inverse()
    if not conj.is_integral():
        raise NonIntegralConjugateError(f"Q M Q^-1 = {conj.rows_str()} is not integral")
    return conj.to_imat()


def conjugate_pair(M: IMat2, D: Digits3, Q: QMat2) -> tuple[IMat2, Digits3]:
    """(Q M Q^-1, Q D), both required to stay integral."""
    M_bar = integer_conjugate(M, Q)
    images = [Q @ d for d in (D.d1, D.d2)]
    if not all(v.is_integral() for v in images):
        raise NonIntegralConjugateError(f"Q D = {[v.as_strings() for v in images]} is not integral")
    return M_bar, Digits3(images[0].to_ivec(), images[1].to_ivec())


def frame_matrix(cf: CanonicalForm, Q: QMat2) -> QMat2:
    """F = Q P: D_bar = F D and M_bar = F M F^-1."""
    return Q @ cf.P


def input_frame_transform(cf: CanonicalForm, Q: QMat2, scale: int) -> QMat2:
    """T with Lambda_input = T Lambda_bar, undoing the frame change and the digit scale."""
    return frame_matrix(cf, Q).T * Fraction(1, scale)
