#!/usr/bin/env python3
"""
Spectrality Criteria
Both criteria reduce to one congruence: with A an inverse of B mod 3,

    v = (A M B)^* (1, -1)^t   must lie in 3Z^2.

The first form applies when det B is prime to 3. The second applies to a
canonical pair in Case II with s >= eta, after conjugating by Q_eta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from app.errors import WrongBranchError
from app.logger import get_logger
from app.modules.canonical import CanonicalForm, CaseTag, integer_conjugate, q_n
from app.modules.classify import ClassDecomposition, RegionTag, region
from app.modules.exactalg import IMat2, IVec2, mod3_inverse
from app.modules.maskzero import Digits3

log = get_logger("criteria")

ONE_MINUS_ONE = IVec2(1, -1)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    A: IMat2
    B: IMat2
    v: IVec2
    passed: bool
    M_used: Optional[IMat2] = None


def criterion_vector(A: IMat2, M: IMat2, B: IMat2) -> IVec2:
    return (A @ M @ B).T @ ONE_MINUS_ONE


def _in_3z2(v: IVec2) -> bool:
    return v.x % 3 == 0 and v.y % 3 == 0


def coprime_criterion(M: IMat2, D: Digits3) -> CriterionResult:
    B = D.B
    if B.det % 3 == 0:
        raise WrongBranchError(f"det B = {B.det} is divisible by 3")

    A = mod3_inverse(B.mod(3))
    v = criterion_vector(A, M, B)
    log.debug(f"[Criteria] coprime A={A.rows()} v={v.as_list()}")
    return CriterionResult(name="coprime", A=A, B=B, v=v, passed=_in_3z2(v), M_used=M)


def canonical_criterion(cf: CanonicalForm, dec: ClassDecomposition) -> CriterionResult:
    if cf.case != CaseTag.II or cf.eta < 1:
        raise WrongBranchError("criterion needs Case II with eta >= 1")
    if region(dec, cf.eta, CaseTag.II) != RegionTag.R3:
        raise WrongBranchError("criterion needs region R3")

    sigma, omega, theta = cf.sigma, cf.omega, cf.theta
    B = IMat2(sigma, omega, 0, theta)
    A = IMat2(theta, -omega, 0, sigma) * (sigma * theta)
    M_bar = integer_conjugate(cf.M_tilde, q_n(cf.eta))
    v = criterion_vector(A, M_bar, B)
    log.debug(f"[Criteria] canonical M_bar={M_bar.rows()} v={v.as_list()}")
    return CriterionResult(name="canonical", A=A, B=B, v=v, passed=_in_3z2(v), M_used=M_bar)
