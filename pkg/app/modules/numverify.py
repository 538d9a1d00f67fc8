#!/usr/bin/env python3
"""
Numeric Verification
Floating-point evidence for certified pairs: the Fourier transform of the
self-affine measure as a truncated product

    mu_hat(xi) = prod_{j>=1} m_D(M^{*-j} xi),

the orthogonality residual of a finite spectrum, the completeness profile
Q(xi) = sum_lambda |mu_hat(xi + lambda)|^2 and attractor samples.
Nothing here feeds back into an exact verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from app.config import get_settings
from app.engine.hadamard import is_hadamard, spectrum_truncated
from app.errors import DepthCapError, NotHadamardError
from app.logger import get_logger
from app.modules.exactalg import IMat2, IVec2
from app.modules.maskzero import Digits3

log = get_logger("numverify")


@dataclass(frozen=True)
class FourierEval:
    xi: tuple[float, float]
    value: complex
    truncation_depth: int
    tail_bound: float


@dataclass(frozen=True)
class CompletenessProfile:
    depth: int
    samples: np.ndarray     # (n, 2)
    values: np.ndarray      # (n,)

    @property
    def minimum(self) -> float:
        return float(self.values.min())

    @property
    def mean(self) -> float:
        return float(self.values.mean())


@dataclass(frozen=True)
class AttractorSample:
    points: np.ndarray      # (3^depth, 2)
    radius: float


def _as_array(M: IMat2) -> np.ndarray:
    return np.array(M.rows(), dtype=float)


def _digit_array(D: Digits3) -> np.ndarray:
    return np.array([p.as_list() for p in D.points], dtype=float)


class _Truncation:
    """
    Depth selection for the truncated product.

    With N = M^{*-1}, |1 - m_D(x)| <= 2 pi R |x| and |1 - prod z_j| <= sum |1 - z_j|
    for |z_j| <= 1, the error after `depth` factors is at most
    2 pi R |xi| sum_{j > depth} |N^j|. A Schur form N = U [[l1, b], [0, l2]] U*
    gives |N^j| <= rho^j + |b| j rho^(j-1), which also covers defective N.
    """

    def __init__(self, M: IMat2, D: Digits3):
        N = np.linalg.inv(_as_array(M).T)
        eigs = np.abs(np.linalg.eigvals(N))
        self.rho = float(np.max(eigs))
        self.radius = float(max(np.hypot(d.x, d.y) for d in D.points))
        # |b|^2 = |N|_F^2 - |l1|^2 - |l2|^2 is invariant under the unitary U
        self.shear = math.sqrt(max(0.0, float(np.sum(N**2)) - float(np.sum(eigs**2))))

    def norm_tail(self, depth: int) -> float:
        """sum_{j > depth} (rho^j + |b| j rho^(j-1))"""
        rho, gap = self.rho, 1 - self.rho
        geometric = rho ** (depth + 1) / gap
        weighted = ((depth + 1) * rho**depth * gap + rho ** (depth + 1)) / gap**2
        return geometric + self.shear * weighted

    def tail(self, norm_xi: float, depth: int) -> float:
        # both the product and its truncation have modulus <= 1
        return min(2.0, 2 * math.pi * self.radius * norm_xi * self.norm_tail(depth))

    def depth_for(self, norm_xi: float, eps: float, cap: int) -> int:
        for depth in range(cap + 1):
            if self.tail(norm_xi, depth) < eps:
                return depth
        log.warning(f"[Fourier] depth capped at {cap} for |xi| = {norm_xi:.3g}, tail bound {self.tail(norm_xi, cap):.3g}")
        return cap


def mu_hat_many(M: IMat2, D: Digits3, xis: np.ndarray, eps: Optional[float] = None) -> tuple[np.ndarray, int, float]:
    """
    Vectorized mu_hat over the rows of xis.

    Returns:
        (values, truncation depth, tail bound at the largest |xi|)
    """
    settings = get_settings()
    eps = settings.mu_hat_eps if eps is None else eps

    xis = np.atleast_2d(np.asarray(xis, dtype=float))
    trunc = _Truncation(M, D)
    norm_max = float(np.max(np.hypot(xis[:, 0], xis[:, 1]))) if len(xis) else 0.0
    depth = trunc.depth_for(norm_max, eps, settings.max_truncation_depth)

    # rows: x_j = M^{*-j} xi  <=>  X_j = X_{j-1} @ M^{-1}
    M_inv = np.linalg.inv(_as_array(M))
    digits = _digit_array(D)
    values = np.ones(len(xis), dtype=complex)
    X = xis.copy()
    for _ in range(depth):
        X = X @ M_inv
        values *= np.exp(2j * np.pi * (X @ digits.T)).mean(axis=1)

    log.debug(f"[Fourier] {len(xis)} points depth={depth}")
    return values, depth, trunc.tail(norm_max, depth)


def mu_hat(M: IMat2, D: Digits3, xi: Sequence[float], eps: Optional[float] = None) -> FourierEval:
    values, depth, tail = mu_hat_many(M, D, np.array([xi], dtype=float), eps)
    return FourierEval(xi=(float(xi[0]), float(xi[1])), value=complex(values[0]), truncation_depth=depth, tail_bound=tail)


def _points_array(points: Iterable[IVec2]) -> np.ndarray:
    return np.array([[p.x, p.y] for p in points], dtype=float).reshape(-1, 2)


def orthogonality_residual(M: IMat2, D: Digits3, spectrum: Iterable[IVec2]) -> float:
    """max |mu_hat(lambda - lambda')| over distinct pairs; mu_hat(-x) is conj(mu_hat(x))."""
    pts = _points_array(spectrum)
    if len(pts) < 2:
        return 0.0
    i, j = np.triu_indices(len(pts), k=1)
    values, _, _ = mu_hat_many(M, D, pts[i] - pts[j])
    return float(np.max(np.abs(values)))


def sample_grid(grid: int) -> np.ndarray:
    ticks = np.arange(grid) / grid
    return np.array([[x, y] for x in ticks for y in ticks], dtype=float)


def completeness_profile(
    M: IMat2,
    D: Digits3,
    S: Sequence[IVec2],
    depth: int,
    grid: Optional[int] = None,
    samples: Optional[np.ndarray] = None,
) -> CompletenessProfile:
    """Q(xi) = sum over Lambda_depth of |mu_hat(xi + lambda)|^2 at grid samples in [0,1)^2."""
    if not is_hadamard(M, D, S):
        raise NotHadamardError("completeness profile needs a Hadamard triple")

    if samples is None:
        samples = sample_grid(grid or get_settings().completeness_grid)
    samples = np.atleast_2d(np.asarray(samples, dtype=float))

    lam = _points_array(spectrum_truncated(M, S, depth).points)
    shifted = (samples[:, None, :] + lam[None, :, :]).reshape(-1, 2)
    values, _, _ = mu_hat_many(M, D, shifted)
    q = (np.abs(values) ** 2).reshape(len(samples), len(lam)).sum(axis=1)

    log.debug(f"[Completeness] depth={depth} min={q.min():.6f}")
    return CompletenessProfile(depth=depth, samples=samples, values=q)


def completeness_profiles(M: IMat2, D: Digits3, S: Sequence[IVec2], depths: Iterable[int], grid: Optional[int] = None) -> list[CompletenessProfile]:
    return [completeness_profile(M, D, S, k, grid=grid) for k in depths]


def attractor_radius(M: IMat2, D: Digits3) -> float:
    """max|d| * sum_j |M^{-j}| (operator 2-norm)."""
    M_inv = np.linalg.inv(_as_array(M))
    power, total = np.eye(2), 0.0
    for _ in range(2000):
        power = power @ M_inv
        term = float(np.linalg.norm(power, 2))
        total += term
        if term < 1e-16:
            break
    return float(max(np.hypot(d.x, d.y) for d in D.points)) * total


def attractor_points(M: IMat2, D: Digits3, depth: int) -> AttractorSample:
    """All sums sum_{j=1..depth} M^{-j} d_j."""
    settings = get_settings()
    if depth < 1 or 3**depth > settings.attractor_max_points:
        raise DepthCapError(f"depth {depth} outside 1..{int(math.log(settings.attractor_max_points, 3))}")

    M_inv = np.linalg.inv(_as_array(M))
    digits = _digit_array(D)
    points = np.zeros((1, 2))
    for _ in range(depth):
        points = ((points[None, :, :] + digits[:, None, :]).reshape(-1, 2)) @ M_inv.T
    return AttractorSample(points=points, radius=attractor_radius(M, D))


def heatmap(M: IMat2, D: Digits3, box: tuple[float, float, float, float], size: int, eps: Optional[float] = None) -> np.ndarray:
    """|mu_hat| on a size x size grid over box = (x0, x1, y0, y1); row 0 is the top (y1)."""
    x0, x1, y0, y1 = box
    xs = np.linspace(x0, x1, size)
    ys = np.linspace(y1, y0, size)
    gx, gy = np.meshgrid(xs, ys)
    values, _, _ = mu_hat_many(M, D, np.column_stack([gx.ravel(), gy.ravel()]), eps)
    return np.abs(values).reshape(size, size)
