#!/usr/bin/env python3
"""
Decision Report
Pydantic model of the JSON report emitted by `decide` / `verify`, the
conversion from a Verdict, and JSON / text rendering.
Rationals are written as "p/q" strings, floats are kept to 12 significant
digits so that the JSON parses back to an equal Report.
"""

from typing import Any, Optional

import orjson
from pydantic import BaseModel, field_validator

from app.config import get_settings
from app.engine.decision_state import Status, Verdict
from app.engine.hadamard import spectrum_truncated
from app.engine.orbit import OrbitEvidence
from app.modules import numverify
from app.modules.canonical import CanonicalForm
from app.modules.classify import ClassDecomposition, ReductionChain, RegionTag

COLLINEAR_NOTE = (
    "Collinear digit set: spectrality is known to hold when det M is divisible by 3; "
    "whether that condition is also necessary is an open conjecture."
)
NUMERIC_NOTE = "Completeness values are numeric evidence only; spectrality itself is decided exactly."


def round_sig(value: float, digits: int = 12) -> float:
    return float(f"{value:.{digits}g}")


# ------------------------------------------ Blocks ------------------------------------------

class InputBlock(BaseModel):
    matrix: list[list[int]]
    digits: list[list[int]]


class CanonicalBlock(BaseModel):
    P: list[list[int]]
    M_tilde: list[list[int]]
    D_tilde: list[list[int]]
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
    case: str


class ReductionBlock(BaseModel):
    step: str
    Q: list[list[str]]
    M_bar: list[list[int]]
    k: int


class ClassificationBlock(BaseModel):
    k: int
    p1: Optional[int] = None
    p2: Optional[int] = None
    p3: Optional[int] = None
    p4: Optional[int] = None
    s: str
    c: int
    a: int
    b: int
    d: int
    s_relevant: bool
    region: Optional[str] = None
    reductions: list[ReductionBlock] = []


class CriterionBlock(BaseModel):
    name: str
    A: list[list[int]]
    B: list[list[int]]
    v: list[int]
    passed: bool
    M_used: Optional[list[list[int]]] = None


class CertificateBlock(BaseModel):
    Q: list[list[str]]
    M_bar: list[list[int]]
    D_bar: list[list[int]]
    S: list[list[int]]
    witness_source: str
    transform: list[list[str]]
    input_seed: list[list[str]]


class OrbitBlock(BaseModel):
    finite: bool
    modulus: int
    cutoff: int
    orbits: int
    hit_point: Optional[list[str]] = None
    hit_power: Optional[int] = None
    hit_image: Optional[list[int]] = None
    cycles_closed: int = 0
    cutoffs_reached: int = 0
    longest_orbit: int = 0


class ReasonBlock(BaseModel):
    kind: str
    criterion_vector: Optional[list[int]] = None
    orbit: Optional[OrbitBlock] = None
    region: Optional[str] = None
    note: str = ""


class NumericBlock(BaseModel):
    residual_depth: int
    orthogonality_residual: float
    completeness_depth: int
    completeness_grid: int
    completeness_min: float
    completeness_mean: float
    completeness_threshold: float
    heuristic: bool = True
    note: str = NUMERIC_NOTE

    @field_validator("orthogonality_residual", "completeness_min", "completeness_mean", "completeness_threshold")
    @classmethod
    def _twelve_digits(cls, value: float) -> float:
        return round_sig(value, get_settings().float_digits)


class Report(BaseModel):
    input: InputBlock
    status: str
    branch: str
    canonical: Optional[CanonicalBlock] = None
    classification: Optional[ClassificationBlock] = None
    criterion: Optional[CriterionBlock] = None
    certificate: Optional[CertificateBlock] = None
    reason: Optional[ReasonBlock] = None
    numeric: Optional[NumericBlock] = None
    note: Optional[str] = None
    trace: list[tuple[str, Any]] = []


# ------------------------------------- Verdict -> Report ------------------------------------

def orbit_block(evidence: OrbitEvidence) -> OrbitBlock:
    hit = evidence.hit
    return OrbitBlock(
        finite=evidence.finite,
        modulus=evidence.modulus,
        cutoff=evidence.cutoff,
        orbits=evidence.orbits,
        hit_point=hit.point.as_strings() if hit else None,
        hit_power=hit.power if hit else None,
        hit_image=hit.image.as_list() if hit else None,
        cycles_closed=evidence.cycles_closed,
        cutoffs_reached=evidence.cutoffs_reached,
        longest_orbit=evidence.longest_orbit,
    )


def canonical_block(cf: CanonicalForm) -> CanonicalBlock:
    return CanonicalBlock(
        P=cf.P.rows(),
        M_tilde=cf.M_tilde.rows(),
        D_tilde=cf.D_tilde.as_lists(),
        sigma=cf.sigma,
        omega=cf.omega,
        eta=cf.eta,
        theta=cf.theta,
        gamma=cf.gamma,
        t1=cf.t1,
        t2=cf.t2,
        p=cf.p,
        q=cf.q,
        swapped=cf.swapped,
        case=cf.case.value,
    )


def classification_block(
    dec: ClassDecomposition,
    tag: Optional[RegionTag] = None,
    chain: Optional[ReductionChain] = None,
) -> ClassificationBlock:
    steps = [
        ReductionBlock(step=s.label, Q=s.Q.rows_str(), M_bar=s.M_bar.rows(), k=s.k)
        for s in (chain.steps if chain else [])
    ]
    return ClassificationBlock(
        k=dec.k,
        p1=dec.p1,
        p2=dec.p2,
        p3=dec.p3,
        p4=dec.p4,
        s=dec.s_label(),
        c=dec.c,
        a=dec.a,
        b=dec.b,
        d=dec.d,
        s_relevant=dec.s_relevant,
        region=tag.value if tag else None,
        reductions=steps,
    )


def numeric_block(verdict: Verdict, depth: Optional[int] = None, grid: Optional[int] = None) -> Optional[NumericBlock]:
    """Orthogonality and completeness evidence on the certified pair; None unless SPECTRAL."""
    cert = verdict.certificate
    if verdict.status != Status.SPECTRAL or cert is None:
        return None

    settings = get_settings()
    depth = settings.completeness_depth if depth is None else depth
    grid = settings.completeness_grid if grid is None else grid

    spectrum = spectrum_truncated(cert.M_bar, cert.S, settings.residual_depth, digits=cert.D_bar)
    residual = numverify.orthogonality_residual(cert.M_bar, cert.D_bar, spectrum.points)
    profile = numverify.completeness_profile(cert.M_bar, cert.D_bar, cert.S, depth, grid=grid)
    return NumericBlock(
        residual_depth=settings.residual_depth,
        orthogonality_residual=residual,
        completeness_depth=depth,
        completeness_grid=grid,
        completeness_min=profile.minimum,
        completeness_mean=profile.mean,
        completeness_threshold=settings.completeness_threshold,
    )


def build_report(verdict: Verdict, raw_digits, numeric: Optional[NumericBlock] = None) -> Report:
    cf, dec, crit, cert, reason = (
        verdict.canonical,
        verdict.decomposition,
        verdict.criterion,
        verdict.certificate,
        verdict.reason,
    )

    canonical = canonical_block(cf) if cf is not None else None
    classification = (
        classification_block(dec, verdict.region, verdict.reductions) if dec is not None else None
    )

    criterion = None
    if crit is not None:
        criterion = CriterionBlock(
            name=crit.name,
            A=crit.A.rows(),
            B=crit.B.rows(),
            v=crit.v.as_list(),
            passed=crit.passed,
            M_used=crit.M_used.rows() if crit.M_used else None,
        )

    certificate = None
    if cert is not None:
        certificate = CertificateBlock(
            Q=cert.Q.rows_str(),
            M_bar=cert.M_bar.rows(),
            D_bar=cert.D_bar.as_lists(),
            S=[s.as_list() for s in cert.S],
            witness_source=cert.witness_source,
            transform=cert.transform.rows_str(),
            input_seed=[p.as_strings() for p in cert.input_seed],
        )

    reason_block = None
    if reason is not None:
        reason_block = ReasonBlock(
            kind=reason.kind.value,
            criterion_vector=reason.criterion_vector.as_list() if reason.criterion_vector else None,
            orbit=orbit_block(reason.orbit) if reason.orbit else None,
            region=reason.region.value if reason.region else None,
            note=reason.note,
        )

    note = COLLINEAR_NOTE if verdict.status in (
        Status.OPEN_COLLINEAR_SPECTRAL_SUFFICIENT,
        Status.OPEN_COLLINEAR_UNKNOWN,
    ) else None

    return Report(
        input=InputBlock(matrix=verdict.matrix.rows(), digits=[[int(x), int(y)] for x, y in raw_digits]),
        status=verdict.status.value,
        branch=verdict.branch.value,
        canonical=canonical,
        classification=classification,
        criterion=criterion,
        certificate=certificate,
        reason=reason_block,
        numeric=numeric,
        note=note,
        trace=[(step, value) for step, value in verdict.trace],
    )


# ----------------------------------------- Rendering ----------------------------------------

def to_json(payload: BaseModel | dict) -> str:
    data = payload.model_dump(mode="json") if isinstance(payload, BaseModel) else payload
    return orjson.dumps(data, option=orjson.OPT_INDENT_2).decode()


def to_text(report: Report) -> str:
    lines = [f"status: {report.status}", f"branch: {report.branch}"]
    if report.canonical:
        c = report.canonical
        lines.append(f"canonical: P={c.P} M~={c.M_tilde} D~={c.D_tilde}")
        lines.append(f"  sigma={c.sigma} omega={c.omega} eta={c.eta} theta={c.theta} gamma={c.gamma} case={c.case}")
    if report.classification:
        k = report.classification
        lines.append(f"class: k={k.k} s={k.s} c={k.c} region={k.region}")
    if report.criterion:
        lines.append(f"criterion ({report.criterion.name}): v={report.criterion.v} pass={report.criterion.passed}")
    if report.certificate:
        cert = report.certificate
        lines.append(f"certificate: Q={cert.Q} M_bar={cert.M_bar} D_bar={cert.D_bar} S={cert.S} ({cert.witness_source})")
    if report.reason:
        lines.append(f"reason: {report.reason.kind}")
        if report.reason.orbit and report.reason.orbit.hit_point:
            o = report.reason.orbit
            lines.append(f"  orbit hit: z={o.hit_point} j={o.hit_power} image={o.hit_image}")
    if report.numeric:
        n = report.numeric
        lines.append(f"numeric: residual={n.orthogonality_residual} completeness min={n.completeness_min} mean={n.completeness_mean}")
        lines.append(f"  {n.note}")
    if report.note:
        lines.append(f"note: {report.note}")
    return "\n".join(lines)
