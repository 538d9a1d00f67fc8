#!/usr/bin/env python3
"""
Residue Classification
Writes a canonical matrix as

    M~ = 3 [[a, b], [3^(s-1) c, d]] + M_k

with M_k one of the ten residue patterns mod 3 allowed by det M~ in 3Z, and
assigns the region that fixes the verdict for each case. Also builds the
conjugations that carry one residue class into another.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from app.errors import WrongBranchError
from app.logger import get_logger
from app.modules.canonical import CaseTag, conjugate_pair, q_n
from app.modules.exactalg import INFINITE, IMat2, QMat2, val3
from app.modules.maskzero import Digits3

log = get_logger("classify")

# Nonzero-residue pattern (a11, a12, a21, a22) -> class index
RESIDUE_PATTERNS = {
    (False, False, False, False): 1,
    (True, False, False, False): 2,
    (False, True, False, False): 3,
    (False, False, True, False): 4,
    (False, False, False, True): 5,
    (True, False, True, False): 6,
    (True, True, False, False): 7,
    (False, False, True, True): 8,
    (False, True, False, True): 9,
    (True, True, True, True): 10,
}

LOWER_LEFT_NONZERO = frozenset({4, 6, 8, 10})


class RegionTag(str, Enum):
    B = "B"
    B1 = "B1"
    B2 = "B2"
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"


@dataclass(frozen=True)
class ClassDecomposition:
    k: int
    residues: IMat2
    s: int | float
    c: int
    a: int
    b: int
    d: int
    s_relevant: bool = True
    p1: Optional[int] = None
    p2: Optional[int] = None
    p3: Optional[int] = None
    p4: Optional[int] = None

    def s_at_least(self, n: int) -> bool:
        return self.s >= n

    def s_label(self) -> str:
        return "INFINITE" if self.s == INFINITE else str(self.s)

    def reconstruct(self) -> IMat2:
        lower = 0 if self.s == INFINITE else 3 ** (int(self.s) - 1) * self.c
        return IMat2(3 * self.a, 3 * self.b, 3 * lower, 3 * self.d) + self.residues


def decompose(M_tilde: IMat2) -> ClassDecomposition:
    if M_tilde.det % 3 != 0:
        raise WrongBranchError(f"det {M_tilde.det} is not divisible by 3")

    r = M_tilde.mod(3)
    pattern = tuple(e != 0 for e in r.entries())
    k = RESIDUE_PATTERNS.get(pattern)
    if k is None:
        raise WrongBranchError(f"residue pattern {r.rows()} has det not divisible by 3")

    v = val3(M_tilde.a21 - r.a21)
    p1, p2, p3, p4 = (e if e else None for e in r.entries())

    dec = ClassDecomposition(
        k=k,
        residues=r,
        s=v.s,
        c=v.c,
        a=(M_tilde.a11 - r.a11) // 3,
        b=(M_tilde.a12 - r.a12) // 3,
        d=(M_tilde.a22 - r.a22) // 3,
        s_relevant=k not in LOWER_LEFT_NONZERO,
        p1=p1,
        p2=p2,
        p3=p3,
        p4=p4,
    )
    log.debug(f"[Classify] k={k} s={dec.s_label()} c={dec.c}")
    return dec


def region(dec: ClassDecomposition, eta: int, case: CaseTag) -> RegionTag:
    if case == CaseTag.I:
        if dec.k in (2, 7):
            return RegionTag.B if dec.s_at_least(eta) else RegionTag.B2
        return RegionTag.B1

    if dec.k in LOWER_LEFT_NONZERO:
        return RegionTag.R1
    return RegionTag.R3 if dec.s_at_least(eta) else RegionTag.R2


# ------------------------------------ Class reductions --------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    label: str
    Q: QMat2
    M_bar: IMat2
    D_bar: Digits3
    k: int


@dataclass
class ReductionChain:
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def final_class(self) -> Optional[int]:
        return self.steps[-1].k if self.steps else None


def _shear(tau: int) -> QMat2:
    return QMat2(1, tau, 0, 1)


def reduce_class(M_tilde: IMat2, D_tilde: Digits3, dec: ClassDecomposition, eta: int, case: CaseTag) -> ReductionChain:
    """
    Conjugations that move M~ into the class its verdict rule is stated for:
    class 7 in region B goes to class 2 (shear with p2 - tau*p1 in 3Z), classes 8
    and 10 in Case II go to class 4 or 6 (shear with tau*p3 + p4 in 3Z), and
    region R2 goes to R1 through Q_s. Classes already in final form give an
    empty chain.
    """
    chain = ReductionChain()
    tag = region(dec, eta, case) if eta >= 1 else None

    def push(label: str, Q: QMat2, M: IMat2, D: Digits3) -> ClassDecomposition:
        M_bar, D_bar = conjugate_pair(M, D, Q)
        reduced = decompose(M_bar)
        chain.steps.append(ReductionStep(label=label, Q=Q, M_bar=M_bar, D_bar=D_bar, k=reduced.k))
        return reduced

    if case == CaseTag.I and tag == RegionTag.B and dec.k == 7:
        tau = next(t for t in (1, 2) if (dec.p2 - t * dec.p1) % 3 == 0)
        push(f"shear tau={tau}", _shear(tau), M_tilde, D_tilde)

    elif case == CaseTag.II and dec.k in (8, 10):
        tau = next(t for t in (1, 2) if (t * dec.p3 + dec.p4) % 3 == 0)
        push(f"shear tau=-{tau}", _shear(-tau), M_tilde, D_tilde)

    elif case == CaseTag.II and tag == RegionTag.R2:
        s = int(dec.s)
        reduced = push(f"Q_{s}", q_n(s), M_tilde, D_tilde)
        if reduced.k in (8, 10):
            step = chain.steps[-1]
            tau = next(t for t in (1, 2) if (t * reduced.p3 + reduced.p4) % 3 == 0)
            push(f"shear tau=-{tau}", _shear(-tau), step.M_bar, step.D_bar)

    return chain


def transpose_power_shape(M_tilde: IMat2, dec: ClassDecomposition, ell: int) -> bool:
    """Shape of (M~^*)^ell predicted for classes 2 and 6."""
    T = M_tilde.T.power(ell)
    if dec.k == 2:
        s = int(dec.s) if dec.s != INFINITE else None
        top_right_ok = T.a12 == 0 if s is None else T.a12 % 3**s == 0
        return (
            (T.a11 - dec.p1**ell) % 3 == 0
            and top_right_ok
            and T.a21 % 3 == 0
            and T.a22 % 3 == 0
        )
    if dec.k == 6:
        return (
            (T.a11 - dec.p1**ell) % 3 == 0
            and (T.a12 - dec.p1 ** (ell - 1) * dec.p3) % 3 == 0
            and T.a21 % 3 == 0
            and T.a22 % 3 == 0
        )
    raise WrongBranchError(f"no power-shape statement for class {dec.k}")
