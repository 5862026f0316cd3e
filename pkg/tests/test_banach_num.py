import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from liepi.banach_num import (
    PreconditionError,
    SweepSpec,
    binomial_power,
    compare_fits,
    crossover_scale,
    exp_growth_fit,
    exp_minus_one_degree,
    gen_binom,
    growth_ratio_bound,
    matrix_exp,
    nilpotency_degree,
    operator_norm,
    power_sweep_fit,
)
from liepi.catalog import E
from liepi.exact import eye, is_exact, matrix, to_numpy
from liepi.random_instances import jordan_block, random_nilpotent
from liepi.rep_engine import element_nilpotency_degree


def J(d):
    return np.diag(np.ones(d - 1), 1)


def test_operator_norm_examples():
    assert operator_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0)
    assert operator_norm(E(1, 2, 3)) == pytest.approx(1.0)
    assert operator_norm(np.zeros((0, 0))) == 0.0


def test_exact_exp_of_jordan_block():
    X = matrix_exp(jordan_block(3))
    assert is_exact(X)
    assert to_numpy(X).real.tolist() == [[1, 1, 0.5], [0, 1, 1], [0, 0, 1]]


def test_float_exp_matches_scipy():
    A = np.array([[0.1, 2.0], [-1.0, 0.3]])
    assert np.allclose(matrix_exp(A), expm(A))


@given(st.integers(2, 7), st.floats(-3, 3), st.floats(-3, 3))
def test_exp_group_law_on_commuting_nilpotents(d, s, t):
    B = J(d)
    lhs = matrix_exp((s + t) * B, degree=d)
    rhs = matrix_exp(s * B, degree=d) @ matrix_exp(t * B, degree=d)
    assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-10)


def test_exp_overflow():
    with pytest.raises(OverflowError):
        matrix_exp(np.array([[1000.0]]))


def test_nilpotency_degree_float_and_exact():
    assert nilpotency_degree(J(4)) == 4
    assert nilpotency_degree(jordan_block(4)) == 4
    assert nilpotency_degree(np.zeros((3, 3))) == 1
    assert nilpotency_degree(np.eye(2) + J(2)) is None


@pytest.mark.parametrize("d", range(1, 8))
def test_exp_minus_one_degree_jordan(d):
    assert exp_minus_one_degree(jordan_block(d)) == d
    assert exp_minus_one_degree(J(d) if d > 1 else np.zeros((1, 1))) == d


def test_exp_minus_one_rejects_non_nilpotent():
    with pytest.raises(PreconditionError):
        exp_minus_one_degree(eye(3) + jordan_block(3))
    with pytest.raises(PreconditionError):
        exp_minus_one_degree(np.eye(3) + J(3))


@pytest.mark.parametrize("seed", range(30))
def test_exp_minus_one_degree_random(seed):
    import random

    b, d = random_nilpotent(2 + seed % 7, random.Random(seed))
    assert element_nilpotency_degree(b) == d
    assert exp_minus_one_degree(b) == d


# -- growth fits -------------------------------------------------------------------


@pytest.mark.parametrize("d", range(2, 9))
def test_exp_fit_jordan(d):
    fit = exp_growth_fit(J(d))
    assert abs(fit.alpha - (d - 1)) <= 0.15
    assert fit.residual < 0.05


@pytest.mark.parametrize("d", range(2, 9))
def test_power_fit_jordan(d):
    fit = power_sweep_fit(J(d))
    assert abs(fit.alpha - (d - 1)) <= 0.15
    assert fit.residual < 0.05


def test_zero_matrix_fits():
    z = np.zeros((3, 3))
    for fit in (exp_growth_fit(z), power_sweep_fit(z)):
        assert fit.alpha == 0.0 and fit.C == 1.0


def test_fits_reject_non_nilpotent():
    with pytest.raises(PreconditionError):
        exp_growth_fit(np.eye(2))
    with pytest.raises(PreconditionError):
        power_sweep_fit(np.eye(2) + J(2))


def test_scale_invariance_of_exp_fit():
    """Normalising by ||b|| makes the fit independent of the overall scale."""
    a = exp_growth_fit(J(4))
    b = exp_growth_fit(7.5 * J(4))
    assert a.alpha == pytest.approx(b.alpha, abs=1e-9)
    assert a.C == pytest.approx(b.C, rel=1e-9)


def test_adaptive_stretch():
    B = np.array([[0, 1, 0], [0, 0, 1e-4], [0, 0, 0]])
    U = B / np.linalg.norm(B, 2)
    assert crossover_scale(U, 3) > 100
    plain = exp_growth_fit(B)
    adapted = exp_growth_fit(B, adaptive=True)
    assert adapted.stretch > 100
    assert abs(adapted.alpha - 2) < abs(plain.alpha - 2)
    assert adapted.residual < 0.05


@given(st.integers(-50, 50), st.integers(0, 6))
def test_gen_binom_matches_pascal(k, j):
    expected = math.comb(k, j) if k >= 0 else (-1) ** j * math.comb(-k + j - 1, j)
    assert gen_binom(k, j) == expected


@pytest.mark.parametrize("k", [-5, -1, 0, 1, 3, 10])
def test_binomial_power_matches_matrix_power(k):
    B = 0.3 * J(4)
    ref = np.linalg.matrix_power(np.eye(4) + B, abs(k))
    if k < 0:
        ref = np.linalg.inv(ref)
    assert np.allclose(binomial_power(B, k, 4), ref)


def test_growth_ratio_bound_is_finite_for_jordan():
    fit = power_sweep_fit(J(5))
    assert growth_ratio_bound(fit) < 10 * fit.C


def test_compare_fits_groups_by_degree_and_norm():
    rng = np.random.default_rng(0)
    mats = []
    for _ in range(3):
        Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        mats.append(Q @ J(4) @ Q.T)
    mats.append(2 * J(3))
    cmp = compare_fits(mats)
    assert len(cmp.groups) == 2
    assert cmp.alpha_agrees()


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(scales=(2.0, 1.0))
    with pytest.raises(ValueError):
        SweepSpec(k_points=1)
    ks = SweepSpec(k_max=8, k_points=4).k_values()
    assert ks == [-8, -4, -2, -1, 1, 2, 4, 8]


def test_exact_input_is_accepted_by_fits():
    fit = exp_growth_fit(matrix([[0, 1], [0, 0]]))
    assert fit.degree == 2 and fit.alpha == pytest.approx(1.0, abs=0.05)
