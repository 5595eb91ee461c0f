import numpy as np
import pytest
from conftest import random_pd
from numpy.testing import assert_allclose

from schurcov.errors import BadIndexSet, NonFinite, NotPD, NotPSD, NotSymmetric
from schurcov.linalg import (
    geometric_mean,
    inv_pd,
    is_psd,
    log_det_psd,
    min_eig_sym,
    pinv_psd,
    schur_complement,
    sqrt_psd,
    sym_eig,
)

# --- sym_eig -----------------------------------------------------------------


@pytest.mark.parametrize(
    "M, expected",
    [
        (np.eye(4), [1, 1, 1, 1]),
        (np.diag([3.0, 1.0]), [1, 3]),
        ([[2.0, 1.0], [1.0, 2.0]], [1, 3]),
    ],
)
def test_sym_eig_values(M, expected):
    w, Q = sym_eig(M)
    assert_allclose(w, expected, atol=1e-14)
    assert_allclose(Q.T @ Q, np.eye(len(w)), atol=1e-14)


def test_sym_eig_rejects_bad_input():
    with pytest.raises(NotSymmetric):
        sym_eig(np.ones((2, 3)))
    with pytest.raises(NotSymmetric):
        sym_eig([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NonFinite):
        sym_eig([[np.nan, 0.0], [0.0, 1.0]])


# --- matrix functions -------------------------------------------------------


@pytest.mark.parametrize(
    "M, root",
    [
        (np.eye(2), np.eye(2)),
        (np.diag([4.0, 9.0]), np.diag([2.0, 3.0])),
        (4 * np.eye(6), 2 * np.eye(6)),
    ],
)
def test_sqrt_psd(M, root):
    assert_allclose(sqrt_psd(M), root, atol=1e-14)


def test_sqrt_psd_clamps_roundoff_but_rejects_negative():
    assert_allclose(sqrt_psd(np.diag([1.0, -1e-13])), np.diag([1.0, 0.0]))
    with pytest.raises(NotPSD):
        sqrt_psd(np.diag([1.0, -0.1]))


@pytest.mark.parametrize(
    "M, inv",
    [
        (np.diag([2.0, 0.0]), np.diag([0.5, 0.0])),
        (np.eye(3), np.eye(3)),
        ([[2.0, 1.0], [1.0, 2.0]], [[2 / 3, -1 / 3], [-1 / 3, 2 / 3]]),
    ],
)
def test_pinv_psd(M, inv):
    assert_allclose(pinv_psd(M), inv, atol=1e-14)


def test_inv_pd_rejects_singular():
    with pytest.raises(NotPD):
        inv_pd(np.diag([1.0, -1.0]))


@pytest.mark.parametrize(
    "M, expected",
    [(np.eye(6), 0.0), (np.diag([np.e, np.e]), 2.0), ([[2.0, 1.0], [1.0, 2.0]], np.log(3.0))],
)
def test_log_det_psd(M, expected):
    assert log_det_psd(M) == pytest.approx(expected, abs=1e-14)


def test_log_det_requires_pd():
    with pytest.raises(NotPD):
        log_det_psd(np.diag([1.0, 0.0]))


@pytest.mark.parametrize(
    "M, expected",
    [(np.eye(2), 1.0), (np.diag([-1.0, 5.0]), -1.0), ([[0.0, 1.0], [1.0, 0.0]], -1.0)],
)
def test_min_eig_sym(M, expected):
    assert min_eig_sym(M) == pytest.approx(expected, abs=1e-14)


# --- Schur complements ------------------------------------------------------


def test_schur_two_by_two():
    assert_allclose(schur_complement([[2.0, 1.0], [1.0, 2.0]], [1]), [[1.5]])
    M = np.array([[4.0, 2.0], [2.0, 5.0]])
    S = schur_complement(M, [1])
    assert_allclose(S, [[4.0]])
    assert np.linalg.det(M) == pytest.approx(4.0 * S[0, 0])


def test_schur_uncorrelated_blocks(rng):
    A, B = random_pd(3, rng), random_pd(2, rng)
    M = np.zeros((5, 5))
    M[:3, :3], M[3:, 3:] = A, B
    assert_allclose(schur_complement(M, [3, 4]), B, atol=1e-14)


def test_schur_singular_block_uses_pseudo_inverse():
    # eliminated block diag(1, 0): the zero direction is not on the support
    M = np.array([[1.0, 0.0, 0.5], [0.0, 0.0, 0.0], [0.5, 0.0, 2.0]])
    assert_allclose(schur_complement(M, [2]), [[1.75]])


def test_schur_index_validation():
    M = np.eye(3)
    with pytest.raises(BadIndexSet):
        schur_complement(M, [2, 1])
    with pytest.raises(BadIndexSet):
        schur_complement(M, [0, 3])


def test_schur_strict_vs_indefinite():
    M = np.array([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(NotPSD):
        schur_complement(M, [1])
    assert_allclose(schur_complement(M, [1], strict=False), [[-3.0]])


def test_schur_determinant_factorization(rng):
    for _ in range(200):
        d = int(rng.integers(2, 9))
        M = random_pd(d, rng)
        k = int(rng.integers(1, d))
        keep = list(range(k, d))
        lhs = np.linalg.det(M)
        rhs = np.linalg.det(M[:k, :k]) * np.linalg.det(schur_complement(M, keep))
        assert abs(lhs - rhs) <= 1e-8 * (1 + abs(lhs))


def test_schur_quotient_property(rng):
    # M/A = (M/A1)/(A/A1) for A1 inside A
    M = random_pd(7, rng)
    direct = schur_complement(M, [4, 5, 6])
    staged = schur_complement(schur_complement(M, [2, 3, 4, 5, 6]), [2, 3, 4])
    assert_allclose(direct, staged, atol=1e-8 * (1 + np.max(np.abs(M))))


def test_schur_inversion_corollary(rng):
    M = random_pd(6, rng)
    keep = [3, 4, 5]
    Minv = np.linalg.inv(M)
    # the inverse of the A-block of M^-1 Schur complement recovers A^-1
    lhs = schur_complement(Minv, [0, 1, 2])
    assert_allclose(np.linalg.inv(lhs), M[:3, :3], atol=1e-9)
    assert_allclose(np.linalg.inv(Minv[3:, 3:]), schur_complement(M, keep), atol=1e-9)


def test_schur_monotone_and_concave(rng):
    for _ in range(50):
        N = random_pd(5, rng)
        P = random_pd(5, rng, shift=0.0)
        M = N + P
        keep = [2, 3, 4]
        assert min_eig_sym(schur_complement(M, keep) - schur_complement(N, keep)) >= -1e-8
        p = rng.uniform()
        mix = schur_complement(p * M + (1 - p) * N, keep)
        avg = p * schur_complement(M, keep) + (1 - p) * schur_complement(N, keep)
        assert min_eig_sym(mix - avg) >= -1e-8


# --- geometric mean ---------------------------------------------------------


@pytest.mark.parametrize(
    "M, N, expected",
    [
        ([[3.0, 1.0], [1.0, 2.0]], [[3.0, 1.0], [1.0, 2.0]], [[3.0, 1.0], [1.0, 2.0]]),
        (4 * np.eye(2), np.eye(2), 2 * np.eye(2)),
        (np.diag([2.0, 8.0]), np.diag([8.0, 2.0]), np.diag([4.0, 4.0])),
    ],
)
def test_geometric_mean_examples(M, N, expected):
    assert_allclose(geometric_mean(M, N), expected, atol=1e-12)


def test_geometric_mean_riccati_and_maximality(rng):
    M, N = random_pd(4, rng), random_pd(4, rng)
    X = geometric_mean(M, N)
    # M = X N^-1 X
    assert_allclose(X @ np.linalg.solve(N, X), M, atol=1e-10)
    # ((M, X), (X, N)) is PSD and sits on the boundary
    block = np.block([[M, X], [X, N]])
    assert is_psd(block)
    assert abs(min_eig_sym(block)) < 1e-9
    assert_allclose(geometric_mean(M, N), geometric_mean(N, M), atol=1e-10)
