from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from app.errors import DegenerateInputError, NonIntegralConjugateError, SingularMatrixError, SingularMod3Error
from app.modules.canonical import integer_conjugate, q_n
from app.modules.exactalg import (
    INFINITE,
    IMat2,
    IVec2,
    QMat2,
    QVec2,
    bezout,
    hermite_lattice_reps,
    is_expanding,
    kernel_stabilization_bound,
    mod3_inverse,
    val3,
)
from tests.strategies import ints, matrices


# ------------------------------------------ bezout ------------------------------------------

@pytest.mark.parametrize(
    "a, b, expected",
    [
        (2, 1, (1, 1, -1)),
        (1, 0, (1, 1, 0)),
        (6, 4, (2, 1, -1)),
        (0, 5, (5, 0, 1)),
        (0, -5, (5, 0, -1)),
    ],
)
def test_bezout_normalized_pairs(a, b, expected):
    assert bezout(a, b) == expected


def test_bezout_both_zero():
    with pytest.raises(DegenerateInputError):
        bezout(0, 0)


@given(ints(500), ints(500))
def test_bezout_identity(a, b):
    assume((a, b) != (0, 0))
    g, p, q = bezout(a, b)
    assert g > 0
    assert p * a + q * b == g
    assert a % g == 0 and b % g == 0
    if a != 0:
        assert -abs(a // g) < q <= 0


# ------------------------------------------- val3 -------------------------------------------

@pytest.mark.parametrize("n, s, c", [(18, 2, 2), (5, 0, 5), (-27, 3, -1), (1, 0, 1)])
def test_val3(n, s, c):
    v = val3(n)
    assert (v.s, v.c) == (s, c)


def test_val3_zero_is_infinite():
    v = val3(0)
    assert v.s == INFINITE and v.c == 0
    assert v.infinite and v.at_least(10**6)
    assert v.label() == "INFINITE"


@given(ints(10**6))
def test_val3_reconstructs(n):
    assume(n != 0)
    v = val3(n)
    assert 3**v.s * v.c == n
    assert v.c % 3 != 0


# --------------------------------------- mod3_inverse ---------------------------------------

def test_mod3_inverse_golden():
    assert mod3_inverse(IMat2.from_rows([[1, -2], [0, 2]])) == IMat2.from_rows([[1, 1], [0, 2]])
    assert mod3_inverse(IMat2.identity()) == IMat2.identity()


def test_mod3_inverse_singular():
    with pytest.raises(SingularMod3Error):
        mod3_inverse(IMat2.from_rows([[1, 2], [2, 1]]))


@given(matrices(30))
@settings(max_examples=300)
def test_mod3_inverse_is_two_sided(R):
    assume(R.det % 3 != 0)
    A = mod3_inverse(R)
    assert all(0 <= e <= 2 for e in A.entries())
    assert (A @ R).mod(3) == IMat2.identity()
    assert (R @ A).mod(3) == IMat2.identity()


# --------------------------------------- is_expanding ---------------------------------------

@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[4, 0], [1, 3]], True),
        ([[1, 0], [0, 2]], False),
        ([[0, -2], [2, 0]], True),
        ([[3, 0], [0, 3]], True),
        ([[2, 1], [1, 1]], False),
        ([[0, 1], [-1, 0]], False),
    ],
)
def test_is_expanding_examples(rows, expected):
    assert is_expanding(IMat2.from_rows(rows)) is expected


@given(matrices(20))
@settings(max_examples=500)
def test_is_expanding_agrees_with_eigenvalues(M):
    moduli = np.abs(np.linalg.eigvals(np.array(M.rows(), dtype=float)))
    assume(np.all(np.abs(moduli - 1.0) > 1e-9))
    assert is_expanding(M) == bool(np.all(moduli > 1.0))


# ----------------------------------- rational matrices --------------------------------------

def test_qmat_inverse_exact():
    Q = QMat2.from_rows([[1, 2], [3, 4]])
    assert Q @ Q.inverse() == QMat2.identity()
    assert Q.inverse().a11 == Fraction(-2)


def test_qmat_inverse_singular():
    with pytest.raises(SingularMatrixError):
        QMat2.from_rows([[1, 2], [2, 4]]).inverse()


def test_integer_conjugate_examples():
    assert integer_conjugate(IMat2.from_rows([[4, 0], [3, 3]]), q_n(1)) == IMat2.from_rows([[4, 0], [1, 3]])
    M = IMat2.from_rows([[7, -2], [5, 11]])
    assert integer_conjugate(M, QMat2.identity()) == M


def test_integer_conjugate_rejects_fractions():
    with pytest.raises(NonIntegralConjugateError):
        integer_conjugate(IMat2.from_rows([[4, 0], [1, 3]]), q_n(1))


@given(matrices(10), st.integers(min_value=0, max_value=3))
def test_conjugation_keeps_det_and_trace(M, n):
    Q = q_n(n)
    conj = Q @ M @ Q.inverse()
    assert conj.det == M.det
    assert conj.a11 + conj.a22 == M.trace


def test_vector_helpers():
    v = QVec2(Fraction(4, 3), Fraction(-1, 3))
    assert v.mod1() == QVec2(Fraction(1, 3), Fraction(2, 3))
    assert not v.is_integral()
    assert QVec2(2, -1).to_ivec() == IVec2(2, -1)
    assert IVec2(1, 2).dot(IVec2(3, 4)) == 11


def test_power():
    M = IMat2.from_rows([[4, 3], [0, 3]])
    assert M.power(2) == IMat2.from_rows([[16, 21], [0, 9]])
    assert M.power(0) == IMat2.identity()


# ------------------------------------- lattice helpers --------------------------------------

@pytest.mark.parametrize("n, expected", [(1, 0), (3, 2), (18, 6), (36, 8)])
def test_kernel_stabilization_bound(n, expected):
    assert kernel_stabilization_bound(n) == expected


@given(matrices(6))
@settings(max_examples=60)
def test_hermite_reps_are_a_transversal(T):
    assume(T.det != 0)
    reps = hermite_lattice_reps(T)
    assert len(reps) == abs(T.det)

    T_inv = T.inverse()
    for i, r in enumerate(reps):
        for s in reps[i + 1:]:
            assert not (T_inv @ (r - s)).is_integral()
