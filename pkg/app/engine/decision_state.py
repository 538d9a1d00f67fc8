"""
Decision state and verdict types.
The decision graph threads a DecisionState dict through its nodes; the final
node packs the result into a Verdict.
"""

import operator
from dataclasses import dataclass, field
from enum import Enum
from typing import Annotated, Any, Optional, TypedDict

from app.engine.criteria import CriterionResult
from app.engine.orbit import OrbitEvidence
from app.modules.canonical import CanonicalForm, CaseTag
from app.modules.classify import ClassDecomposition, ReductionChain, RegionTag
from app.modules.exactalg import IMat2, IVec2, QMat2, QVec2
from app.modules.maskzero import CollinearProfile, Digits3, Normalization


class Status(str, Enum):
    SPECTRAL = "SPECTRAL"
    NOT_SPECTRAL = "NOT_SPECTRAL"
    OPEN_COLLINEAR_SPECTRAL_SUFFICIENT = "OPEN_COLLINEAR_SPECTRAL_SUFFICIENT"
    OPEN_COLLINEAR_UNKNOWN = "OPEN_COLLINEAR_UNKNOWN"


class Branch(str, Enum):
    DET_B_NOT_3Z = "DET_B_NOT_3Z"
    DET_M_NOT_3Z = "DET_M_NOT_3Z"
    CASE_I = "CASE_I"
    CASE_II = "CASE_II"
    COLLINEAR = "COLLINEAR"


class ReasonKind(str, Enum):
    CRITERION_VECTOR = "CRITERION_VECTOR"
    FINITE_ORTHOGONALS = "FINITE_ORTHOGONALS"
    REGION = "REGION"
    EMPTY_ZERO_SET = "EMPTY_ZERO_SET"


@dataclass(frozen=True)
class Certificate:
    Q: QMat2
    M_bar: IMat2
    D_bar: Digits3
    S: tuple[IVec2, IVec2, IVec2]
    witness_source: str
    transform: QMat2                    # Lambda_input = transform @ Lambda_bar
    input_seed: tuple[QVec2, ...]


@dataclass(frozen=True)
class Reason:
    kind: ReasonKind
    criterion_vector: Optional[IVec2] = None
    orbit: Optional[OrbitEvidence] = None
    region: Optional[RegionTag] = None
    note: str = ""


@dataclass
class Verdict:
    status: Status
    branch: Branch
    matrix: IMat2
    normalization: Normalization
    certificate: Optional[Certificate] = None
    reason: Optional[Reason] = None
    canonical: Optional[CanonicalForm] = None
    decomposition: Optional[ClassDecomposition] = None
    region: Optional[RegionTag] = None
    criterion: Optional[CriterionResult] = None
    collinear: Optional[CollinearProfile] = None
    reductions: Optional[ReductionChain] = None
    trace: list[tuple[str, Any]] = field(default_factory=list)


class DecisionState(TypedDict, total=False):
    matrix: IMat2
    raw_digits: tuple[IVec2, IVec2, IVec2]
    bezout_shift: int

    normalization: Normalization
    collinear: CollinearProfile
    canonical: CanonicalForm
    case: CaseTag
    decomposition: ClassDecomposition
    region: RegionTag
    reductions: ReductionChain
    criterion: CriterionResult
    orbit: OrbitEvidence

    branch: Branch
    status: Status
    reason: Reason
    frame_q: QMat2
    certificate: Certificate
    verdict: Verdict

    trace: Annotated[list, operator.add]


def create_initial_state(matrix: IMat2, raw_digits, bezout_shift: int = 0) -> DecisionState:
    return {
        "matrix": matrix,
        "raw_digits": tuple(raw_digits),
        "bezout_shift": bezout_shift,
        "trace": [],
    }
