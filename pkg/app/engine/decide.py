#!/usr/bin/env python3
"""
Spectrality Decision
The decision tree as a compiled state graph:

    normalize -> collinear                                   -> finish
              -> canonical -> coprime                        -> certify? -> finish
                           -> det_m                          -> finish
                           -> classify -> case_one/case_two  -> certify? -> finish
"""

from typing import Iterable

from langgraph.graph import END, StateGraph

from app.engine.branch_nodes import (
    canonical_node,
    case_one_node,
    case_two_node,
    certify_node,
    classify_node,
    collinear_node,
    coprime_node,
    det_m_node,
    finish_node,
    normalize_node,
    route_after_canonical,
    route_after_classify,
    route_after_normalize,
    route_to_certify,
)
from app.engine.decision_state import DecisionState, Verdict, create_initial_state
from app.modules.exactalg import IMat2, IVec2

# ---------------------------------- Build the Decision Graph --------------------------------

graph = StateGraph(DecisionState)

graph.add_node("normalize", normalize_node)
graph.add_node("collinear", collinear_node)
graph.add_node("canonical", canonical_node)
graph.add_node("coprime", coprime_node)
graph.add_node("det_m", det_m_node)
graph.add_node("classify", classify_node)
graph.add_node("case_one", case_one_node)
graph.add_node("case_two", case_two_node)
graph.add_node("certify", certify_node)
graph.add_node("finish", finish_node)

graph.set_entry_point("normalize")

graph.add_conditional_edges(
    "normalize",
    route_after_normalize,
    {"collinear": "collinear", "canonical": "canonical"},
)
graph.add_conditional_edges(
    "canonical",
    route_after_canonical,
    {"coprime": "coprime", "det_m": "det_m", "classify": "classify"},
)
graph.add_conditional_edges(
    "classify",
    route_after_classify,
    {"case_one": "case_one", "case_two": "case_two"},
)

# Spectral outcomes still need a witness
for node in ("coprime", "case_one", "case_two"):
    graph.add_conditional_edges(node, route_to_certify, {"certify": "certify", "finish": "finish"})

graph.add_edge("collinear", "finish")
graph.add_edge("det_m", "finish")
graph.add_edge("certify", "finish")
graph.add_edge("finish", END)

decision_graph = graph.compile()


def decide(M: IMat2, raw_digits: Iterable[IVec2], bezout_shift: int = 0) -> Verdict:
    """
    Decides spectrality of the self-affine measure of (M, D).

    Args:
        M: expanding integer matrix
        raw_digits: three distinct integer digits, any translation or common scale
        bezout_shift: alternative Bezout pair for the canonical form

    Returns:
        Verdict with status, deciding branch, certificate or reason, and trace
    """
    result = decision_graph.invoke(create_initial_state(M, raw_digits, bezout_shift))
    return result["verdict"]
