#!/usr/bin/env python3
"""
Decision Nodes
One function per node of the decision graph plus the routing functions
between them. Nodes read the DecisionState and return only the keys they set;
every node appends (step, value) pairs to the trace.
"""

from app.config import get_settings
from app.engine.criteria import canonical_criterion, coprime_criterion
from app.engine.decision_state import (
    Branch,
    Certificate,
    DecisionState,
    Reason,
    ReasonKind,
    Status,
    Verdict,
)
from app.engine.hadamard import default_search_bound, find_witness, is_hadamard
from app.engine.orbit import orbit_scan
from app.errors import CertificateError, NotExpandingError
from app.logger import get_logger
from app.modules.canonical import (
    CaseTag,
    canonicalize,
    case_from_digits,
    conjugate_pair,
    frame_matrix,
    input_frame_transform,
    q_n,
    transport_spectrum,
)
from app.modules.classify import RegionTag, decompose, reduce_class, region
from app.modules.exactalg import QMat2, is_expanding
from app.modules.maskzero import collinear_profile, normalize_digits

log = get_logger("decide")


# ------------------------------------------ Nodes -------------------------------------------

def normalize_node(state: DecisionState) -> dict:
    M = state["matrix"]
    if not is_expanding(M):
        raise NotExpandingError()

    norm = normalize_digits(state["raw_digits"])
    D = norm.digits
    log.debug(f"[Normalize] D={D.as_lists()} det B={D.B.det}")
    return {
        "normalization": norm,
        "trace": [
            ("normalize", {"digits": D.as_lists(), "translation": norm.translation.as_list(), "scale": norm.scale}),
            ("det", {"M": M.det, "B": D.B.det}),
        ],
    }


def collinear_node(state: DecisionState) -> dict:
    M = state["matrix"]
    profile = collinear_profile(state["normalization"].digits)
    trace = [("collinear", {"direction": profile.direction.as_list(), "a": profile.a, "b": profile.b})]

    if not profile.zero_set_nonempty:
        status = Status.NOT_SPECTRAL
        reason = Reason(kind=ReasonKind.EMPTY_ZERO_SET, note="mask polynomial has no zeros")
    elif M.det % 3 == 0:
        status, reason = Status.OPEN_COLLINEAR_SPECTRAL_SUFFICIENT, None
    else:
        status, reason = Status.OPEN_COLLINEAR_UNKNOWN, None

    log.info(f"[Collinear] status={status.value}")
    return {
        "collinear": profile,
        "branch": Branch.COLLINEAR,
        "status": status,
        "reason": reason,
        "trace": trace,
    }


def canonical_node(state: DecisionState) -> dict:
    D = state["normalization"].digits
    cf = canonicalize(state["matrix"], D, bezout_shift=state.get("bezout_shift", 0))

    if cf.eta >= 1 and case_from_digits(D) != cf.case:
        raise CertificateError("case read from the digits disagrees with the canonical form")

    return {
        "canonical": cf,
        "case": cf.case,
        "trace": [
            ("canonical", {"P": cf.P.rows(), "M_tilde": cf.M_tilde.rows(), "D_tilde": cf.D_tilde.as_lists()}),
            ("parameters", {"sigma": cf.sigma, "omega": cf.omega, "eta": cf.eta, "theta": cf.theta, "gamma": cf.gamma}),
            ("case", cf.case.value),
        ],
    }


def coprime_node(state: DecisionState) -> dict:
    M = state["matrix"]
    result = coprime_criterion(M, state["normalization"].digits)
    trace = [("criterion", {"name": result.name, "A": result.A.rows(), "v": result.v.as_list(), "pass": result.passed})]
    if M.det % 3 != 0:
        trace.append(("det M not in 3Z", "finitely many orthogonal exponentials"))

    update = {"criterion": result, "branch": Branch.DET_B_NOT_3Z, "trace": trace}
    if result.passed:
        update["frame_q"] = QMat2.identity()
    else:
        update["status"] = Status.NOT_SPECTRAL
        update["reason"] = Reason(kind=ReasonKind.CRITERION_VECTOR, criterion_vector=result.v)
    return update


def det_m_node(state: DecisionState) -> dict:
    evidence = orbit_scan(state["matrix"], state["normalization"].digits)
    if not evidence.finite:
        raise CertificateError("orbit oracle found infinitely many orthogonals although det M is prime to 3")

    return {
        "orbit": evidence,
        "branch": Branch.DET_M_NOT_3Z,
        "status": Status.NOT_SPECTRAL,
        "reason": Reason(kind=ReasonKind.FINITE_ORTHOGONALS, orbit=evidence),
        "trace": [("orbit", {"finite": True, "modulus": evidence.modulus, "orbits": evidence.orbits})],
    }


def classify_node(state: DecisionState) -> dict:
    cf = state["canonical"]
    dec = decompose(cf.M_tilde)
    tag = region(dec, cf.eta, cf.case)
    chain = reduce_class(cf.M_tilde, cf.D_tilde, dec, cf.eta, cf.case)

    trace = [
        ("class", {"k": dec.k, "s": dec.s_label(), "c": dec.c, "s_relevant": dec.s_relevant}),
        ("region", tag.value),
    ]
    for step in chain.steps:
        trace.append(("reduction", {"step": step.label, "M_bar": step.M_bar.rows(), "k": step.k}))

    log.debug(f"[Classify] region={tag.value}")
    return {"decomposition": dec, "region": tag, "reductions": chain, "trace": trace}


def case_one_node(state: DecisionState) -> dict:
    cf, dec, tag = state["canonical"], state["decomposition"], state["region"]
    update: dict = {"branch": Branch.CASE_I}

    if tag == RegionTag.B:
        evidence = orbit_scan(cf.M_tilde, cf.D_tilde)
        if not evidence.finite:
            raise CertificateError("orbit oracle disagrees with the finite-orthogonals region")
        update.update(
            orbit=evidence,
            status=Status.NOT_SPECTRAL,
            reason=Reason(kind=ReasonKind.FINITE_ORTHOGONALS, orbit=evidence, region=tag),
            trace=[("orbit", {"finite": True, "modulus": evidence.modulus, "orbits": evidence.orbits})],
        )
        return update

    if tag == RegionTag.B2:
        Q = q_n(int(dec.s))
    elif dec.k == 3:
        Q = q_n(1)
    else:
        Q = QMat2.identity()

    update["frame_q"] = Q
    update["trace"] = [("frame", {"Q": Q.rows_str()})]
    return update


def case_two_node(state: DecisionState) -> dict:
    cf, dec, tag = state["canonical"], state["decomposition"], state["region"]
    update: dict = {"branch": Branch.CASE_II}

    if tag in (RegionTag.R1, RegionTag.R2):
        update.update(
            status=Status.NOT_SPECTRAL,
            reason=Reason(kind=ReasonKind.REGION, region=tag),
            trace=[("verdict rule", f"region {tag.value} is never spectral in Case II")],
        )
        return update

    result = canonical_criterion(cf, dec)
    update["criterion"] = result
    update["trace"] = [
        ("criterion", {"name": result.name, "A": result.A.rows(), "B": result.B.rows(), "v": result.v.as_list(), "pass": result.passed})
    ]
    if result.passed:
        update["frame_q"] = q_n(cf.eta)
    else:
        update["status"] = Status.NOT_SPECTRAL
        update["reason"] = Reason(kind=ReasonKind.CRITERION_VECTOR, criterion_vector=result.v, region=tag)
    return update


def certify_node(state: DecisionState) -> dict:
    """Builds and validates the certificate for a spectral verdict."""
    settings = get_settings()
    cf, Q = state["canonical"], state["frame_q"]

    M_bar, D_bar = conjugate_pair(cf.M_tilde, cf.D_tilde, Q)
    bound = default_search_bound(cf.sigma, cf.omega, cf.eta, cf.theta, settings.search_bound_factor)
    found = find_witness(M_bar, D_bar, bound)
    if found is None:
        raise CertificateError(f"no Hadamard witness for certified pair M_bar={M_bar.rows()}")

    source, S = found
    if not is_hadamard(M_bar, D_bar, S):
        raise CertificateError(f"witness {[s.as_list() for s in S]} is not a Hadamard triple")

    transform = input_frame_transform(cf, Q, state["normalization"].scale)
    certificate = Certificate(
        Q=Q,
        M_bar=M_bar,
        D_bar=D_bar,
        S=S,
        witness_source=source,
        transform=transform,
        input_seed=transport_spectrum(S, frame_matrix(cf, Q).inverse() * state["normalization"].scale),
    )
    log.info(f"[Certify] S={[s.as_list() for s in S]} via {source}")
    return {
        "certificate": certificate,
        "status": Status.SPECTRAL,
        "trace": [("certificate", {"M_bar": M_bar.rows(), "S": [s.as_list() for s in S], "source": source})],
    }


def finish_node(state: DecisionState) -> dict:
    verdict = Verdict(
        status=state["status"],
        branch=state["branch"],
        matrix=state["matrix"],
        normalization=state["normalization"],
        certificate=state.get("certificate"),
        reason=state.get("reason"),
        canonical=state.get("canonical"),
        decomposition=state.get("decomposition"),
        region=state.get("region"),
        criterion=state.get("criterion"),
        collinear=state.get("collinear"),
        reductions=state.get("reductions"),
        trace=list(state.get("trace", [])) + [("status", state["status"].value)],
    )
    log.info(f"[Decide] status={verdict.status.value} branch={verdict.branch.value}")
    return {"verdict": verdict}


# ----------------------------------------- Routing ------------------------------------------

def route_after_normalize(state: DecisionState) -> str:
    return "collinear" if state["normalization"].digits.is_collinear() else "canonical"


def route_after_canonical(state: DecisionState) -> str:
    if state["normalization"].digits.B.det % 3 != 0:
        return "coprime"
    if state["matrix"].det % 3 != 0:
        return "det_m"
    return "classify"


def route_after_classify(state: DecisionState) -> str:
    return "case_one" if state["case"] == CaseTag.I else "case_two"


def route_to_certify(state: DecisionState) -> str:
    return "finish" if state.get("status") is not None else "certify"
