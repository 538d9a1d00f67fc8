#!/usr/bin/env python3
"""
Orthogonality Orbit Oracle
Decides whether some power M^{*j} (j >= 1) sends a zero of the mask polynomial
into Z^2. If none does, only finitely many mutually orthogonal exponentials
exist for the measure.

Every zero z has denominators dividing N = 3|det B|, so w = N z lives in
(Z/N)^2 and the question becomes whether the orbit of w under M^t (mod N)
reaches 0. Each orbit is followed until it hits 0, repeats a state, or passes
the length of the module (Z/N)^2: the kernels of (M^t)^j stop growing by then,
so a later hit is impossible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from app.logger import get_logger
from app.modules.exactalg import IMat2, IVec2, QVec2, kernel_stabilization_bound
from app.modules.maskzero import Digits3, zero_set_fundamental

log = get_logger("orbit")


@dataclass(frozen=True)
class OrbitHit:
    point: QVec2
    power: int
    image: IVec2


@dataclass(frozen=True)
class OrbitEvidence:
    finite: bool
    modulus: int
    cutoff: int
    orbits: int
    hit: Optional[OrbitHit] = None
    cycles_closed: int = 0
    cutoffs_reached: int = 0
    longest_orbit: int = 0


def _mod_vec(v: IVec2, n: int) -> IVec2:
    return IVec2(v.x % n, v.y % n)


def first_integral_power(M: IMat2, z: QVec2, modulus: int, cutoff: int) -> tuple[Optional[int], str, int]:
    """
    Smallest j >= 1 with M^{*j} z in Z^2, or None.

    Returns:
        (power or None, stop reason "hit" / "cycle" / "cutoff", steps taken)
    """
    M_star = M.T.mod(modulus)
    w = _mod_vec(IVec2(int(z.x * modulus), int(z.y * modulus)), modulus)
    seen = {w}
    j = 0
    while True:
        j += 1
        w = _mod_vec(M_star @ w, modulus)
        if w.is_zero():
            return j, "hit", j
        if w in seen:
            return None, "cycle", j
        if j >= cutoff:
            return None, "cutoff", j
        seen.add(w)


def orbit_scan(M: IMat2, D: Digits3) -> OrbitEvidence:
    zeros = zero_set_fundamental(D)
    modulus = 3 * abs(D.B.det)
    cutoff = kernel_stabilization_bound(modulus)

    cycles = cutoffs = longest = 0
    for z in zeros:
        power, reason, steps = first_integral_power(M, z, modulus, cutoff)
        longest = max(longest, steps)
        if power is not None:
            image = (M.T.power(power) @ z).to_ivec()
            log.debug(f"[Orbit] hit z={z.as_strings()} j={power} image={image.as_list()}")
            return OrbitEvidence(
                finite=False,
                modulus=modulus,
                cutoff=cutoff,
                orbits=len(zeros),
                hit=OrbitHit(point=z, power=power, image=image),
                longest_orbit=longest,
            )
        if reason == "cycle":
            cycles += 1
        else:
            cutoffs += 1

    log.debug(f"[Orbit] no hit over {len(zeros)} zeros (N={modulus}, cutoff={cutoff})")
    return OrbitEvidence(
        finite=True,
        modulus=modulus,
        cutoff=cutoff,
        orbits=len(zeros),
        cycles_closed=cycles,
        cutoffs_reached=cutoffs,
        longest_orbit=longest,
    )


def finite_orthogonals(M: IMat2, D: Digits3) -> bool:
    return orbit_scan(M, D).finite
