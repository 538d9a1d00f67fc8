from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from app.errors import CollinearDigitsError, InputError, NonIntegralConjugateError, NotExpandingError
from app.modules.canonical import (
    CaseTag,
    canonicalize,
    case_from_digits,
    case_of,
    conjugate_pair,
    frame_matrix,
    input_frame_transform,
    q_n,
    transport_spectrum,
)
from app.modules.exactalg import IMat2, IVec2, QMat2, QVec2
from app.modules.maskzero import Digits3, mask_is_zero_exact, normalize_digits
from tests.strategies import digit_triples, expanding_matrices

F = Fraction
EXAMPLE_DIGITS = Digits3(IVec2(2, 1), IVec2(2, 4))


def test_canonical_form_of_spectral_example():
    cf = canonicalize(IMat2.from_rows([[8, -5], [4, -1]]), EXAMPLE_DIGITS)
    assert cf.P == IMat2.from_rows([[1, -1], [-1, 2]])
    assert cf.M_tilde == IMat2.from_rows([[4, 0], [3, 3]])
    assert cf.D_tilde == Digits3(IVec2(1, 0), IVec2(-2, 6))
    assert (cf.sigma, cf.omega, cf.eta, cf.theta, cf.gamma) == (1, -2, 1, 2, 2)
    assert (cf.t1, cf.t2, cf.p, cf.q) == (2, 1, 1, -1)
    assert not cf.swapped
    assert cf.case == CaseTag.II


def test_canonical_form_of_second_example():
    cf = canonicalize(IMat2.from_rows([[5, -1], [2, 2]]), EXAMPLE_DIGITS)
    assert cf.P == IMat2.from_rows([[1, -1], [-1, 2]])
    assert cf.M_tilde == IMat2.from_rows([[3, 0], [3, 4]])
    assert cf.D_tilde == Digits3(IVec2(1, 0), IVec2(-2, 6))


def test_already_canonical_pair():
    cf = canonicalize(IMat2.diag(3, 3), Digits3(IVec2(1, 0), IVec2(0, 1)))
    assert cf.P == IMat2.identity()
    assert cf.M_tilde == IMat2.diag(3, 3)
    assert (cf.sigma, cf.omega, cf.eta, cf.theta, cf.gamma) == (1, 0, 0, 1, 1)


def test_swap_when_first_digit_is_a_multiple_of_three():
    D = Digits3(IVec2(3, 0), IVec2(1, 1))
    cf = canonicalize(IMat2.diag(3, 3), D)
    assert cf.swapped
    assert cf.P == IMat2.from_rows([[1, 0], [-1, 1]])
    assert cf.D_tilde == Digits3(IVec2(1, 0), IVec2(3, -3))
    assert (cf.sigma, cf.omega, cf.eta, cf.theta, cf.gamma) == (1, 3, 1, -1, -1)
    assert 3**cf.eta * cf.gamma == -D.B.det


def test_canonicalize_preconditions():
    with pytest.raises(CollinearDigitsError):
        canonicalize(IMat2.diag(3, 3), Digits3(IVec2(1, 1), IVec2(2, 2)))
    with pytest.raises(NotExpandingError):
        canonicalize(IMat2.diag(1, 2), Digits3(IVec2(1, 0), IVec2(0, 1)))
    with pytest.raises(InputError):
        canonicalize(IMat2.diag(3, 3), Digits3(IVec2(2, 0), IVec2(0, 2)))


@given(expanding_matrices(), digit_triples(bound=8))
@settings(max_examples=300, deadline=None)
def test_canonical_form_invariants(M, triple):
    D = normalize_digits(triple).digits
    cf = canonicalize(M, D)

    assert cf.P.det == 1
    assert cf.P @ cf.P_inverse == IMat2.identity()
    assert cf.M_tilde == cf.P @ M @ cf.P_inverse
    assert (cf.M_tilde.det, cf.M_tilde.trace) == (M.det, M.trace)

    assert cf.D_tilde.d1 == IVec2(cf.sigma, 0)
    assert cf.D_tilde.d2 == IVec2(cf.omega, 3**cf.eta * cf.theta)
    assert cf.sigma % 3 != 0 and cf.theta % 3 != 0
    assert cf.sigma * cf.theta == cf.gamma
    assert 3**cf.eta * cf.gamma == (-D.B.det if cf.swapped else D.B.det)
    assert cf.p * cf.t1 + cf.q * cf.t2 == 1


@given(expanding_matrices(), digit_triples(bound=8))
@settings(max_examples=300, deadline=None)
def test_case_can_be_read_from_original_digits(M, triple):
    D = normalize_digits(triple).digits
    assume(D.B.det % 3 == 0)
    assert case_from_digits(D) == case_of(canonicalize(M, D))


@given(digit_triples(bound=8), st.integers(min_value=-3, max_value=3))
@settings(max_examples=100, deadline=None)
def test_bezout_shift_moves_omega_by_multiples(triple, k):
    D = normalize_digits(triple).digits
    base = canonicalize(IMat2.diag(3, 3), D)
    shifted = canonicalize(IMat2.diag(3, 3), D, bezout_shift=k)
    assert shifted.P.det == 1
    assert shifted.D_tilde.d1 == base.D_tilde.d1
    assert shifted.D_tilde.d2 == IVec2(base.omega - k * 3**base.eta * base.theta, base.D_tilde.d2.y)
    if base.eta >= 1:
        assert shifted.case == base.case


# ----------------------------------- scaling and transport ----------------------------------

@pytest.mark.parametrize("n, bottom", [(0, F(1)), (1, F(1, 3)), (2, F(1, 9))])
def test_q_n(n, bottom):
    assert q_n(n) == QMat2.diag(1, bottom)


def test_transport_spectrum():
    assert transport_spectrum([QVec2(0, 0)], QMat2.from_rows([[2, 1], [7, 5]])) == (QVec2(0, 0),)
    assert transport_spectrum([IVec2(3, 0), IVec2(0, 3)], q_n(1)) == (QVec2(3, 0), QVec2(0, 9))
    assert transport_spectrum([IVec2(1, 0)], IMat2.from_rows([[1, -1], [-1, 2]])) == (QVec2(2, 1),)


def test_conjugate_pair_by_q1():
    M_bar, D_bar = conjugate_pair(IMat2.from_rows([[4, 0], [3, 3]]), Digits3(IVec2(1, 0), IVec2(-2, 6)), q_n(1))
    assert M_bar == IMat2.from_rows([[4, 0], [1, 3]])
    assert D_bar == Digits3(IVec2(1, 0), IVec2(-2, 2))


def test_conjugate_pair_rejects_fractional_digits():
    with pytest.raises(NonIntegralConjugateError):
        conjugate_pair(IMat2.diag(3, 3), Digits3(IVec2(1, 0), IVec2(0, 1)), q_n(1))


def test_seed_in_input_frame_is_a_bi_zero_set():
    """S = {0,(2,2),(3,1)} for the conjugated pair maps back to orthogonal frequencies of (M, D)."""
    M = IMat2.from_rows([[8, -5], [4, -1]])
    cf = canonicalize(M, EXAMPLE_DIGITS)
    S = (IVec2(0, 0), IVec2(2, 2), IVec2(3, 1))

    T = input_frame_transform(cf, q_n(1), 1)
    assert T == frame_matrix(cf, q_n(1)).T
    seed = [T @ s for s in S]
    assert seed[1] == QVec2(F(4, 3), F(-2, 3))

    M_star_inv = M.T.inverse()
    for a in seed:
        for b in seed:
            if a != b:
                assert mask_is_zero_exact(EXAMPLE_DIGITS, M_star_inv @ (a - b))
