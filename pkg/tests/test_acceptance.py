"""
End-to-end checks with fixed seeds: the worked examples, the frame change a
spectral Case II pair needs, and numeric cross-checks of the exact layer.
"""

import random
from fractions import Fraction

import numpy as np

from app.engine.decide import decide
from app.engine.decision_state import Status
from app.engine.hadamard import default_search_bound, search_hadamard_S, zero_set_witness
from app.modules.canonical import q_n
from app.modules.classify import decompose, transpose_power_shape
from app.modules.exactalg import IMat2, IVec2, QVec2
from app.modules.maskzero import Digits3, normalize_digits, zero_set_fundamental
from tests.strategies import random_digits

EXAMPLE_DIGITS = (IVec2(0, 0), IVec2(2, 1), IVec2(2, 4))


def test_examples_end_to_end():
    spectral = decide(IMat2.from_rows([[8, -5], [4, -1]]), EXAMPLE_DIGITS)
    other = decide(IMat2.from_rows([[5, -1], [2, 2]]), EXAMPLE_DIGITS)
    assert (spectral.status, other.status) == (Status.SPECTRAL, Status.NOT_SPECTRAL)

    for verdict, m_tilde, v in (
        (spectral, [[4, 0], [3, 3]], IVec2(18, -24)),
        (other, [[3, 0], [3, 4]], IVec2(14, -12)),
    ):
        cf = verdict.canonical
        assert cf.P == IMat2.from_rows([[1, -1], [-1, 2]])
        assert cf.M_tilde == IMat2.from_rows(m_tilde)
        assert cf.D_tilde.as_lists() == [[0, 0], [1, 0], [-2, 6]]
        assert (cf.sigma, cf.omega, cf.eta, cf.theta) == (1, -2, 1, 2)
        assert verdict.criterion.v == v


def test_spectral_pair_needs_a_nontrivial_frame():
    M_tilde = IMat2.from_rows([[4, 0], [3, 3]])
    D_tilde = Digits3(IVec2(1, 0), IVec2(-2, 6))
    assert search_hadamard_S(M_tilde, D_tilde, default_search_bound(1, -2, 1, 2)) is None
    assert zero_set_witness(M_tilde, D_tilde) is None

    verdict = decide(IMat2.from_rows([[8, -5], [4, -1]]), EXAMPLE_DIGITS)
    assert verdict.status == Status.SPECTRAL
    assert verdict.certificate.Q == q_n(1)


def grid_zeros(D: Digits3) -> set[QVec2]:
    n = 3 * abs(D.B.det)
    ticks = np.arange(n) / n
    gx, gy = np.meshgrid(ticks, ticks, indexing="ij")
    phases = [gx * d.x + gy * d.y for d in D.points]
    mask = sum(np.exp(2j * np.pi * p) for p in phases) / 3
    return {QVec2(Fraction(int(i), n), Fraction(int(j), n)) for i, j in zip(*np.nonzero(np.abs(mask) < 1e-12))}


def test_zero_sets_match_numeric_grid_scan():
    rng = random.Random(2024)
    for _ in range(100):
        D = normalize_digits(random_digits(rng, 9)).digits
        assert set(zero_set_fundamental(D)) == grid_zeros(D)
    assert len(grid_zeros(Digits3(IVec2(1, 0), IVec2(-2, 6)))) == 12


def test_power_shapes_for_sampled_class_members():
    rng = random.Random(99)
    for k, p3_choices in ((2, [0]), (6, [1, 2])):
        for _ in range(100):
            a, b, c, d = (rng.randint(-10, 10) for _ in range(4))
            M = IMat2(rng.choice([1, 2]) + 3 * a, 3 * b, rng.choice(p3_choices) + 3 * c, 3 * d)
            dec = decompose(M)
            assert dec.k == k
            assert all(transpose_power_shape(M, dec, ell) for ell in range(1, 9))
