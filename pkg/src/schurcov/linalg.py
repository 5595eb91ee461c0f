"""Dense real symmetric matrix primitives.

Everything here is a thin, validated layer over LAPACK (via numpy/scipy):
symmetric eigendecompositions and the matrix functions built on them, Schur
complements with pseudo-inverses on the support, and the matrix geometric
mean. All symmetric outputs are symmetrized as ``(R + R.T) / 2`` before they
are returned.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import BadIndexSet, NonFinite, NotPD, NotPSD, NotSymmetric

TOL_SYM = 1e-10
TOL_PSD = 1e-9
TOL_PD = 1e-12
TOL_RECON = 1e-8
RANK_CUT = 1e-10

__all__ = [
    "RANK_CUT",
    "TOL_PD",
    "TOL_PSD",
    "TOL_RECON",
    "TOL_SYM",
    "as_symmetric",
    "direct_sum_matrices",
    "geometric_mean",
    "inv_pd",
    "inv_sqrt_pd",
    "is_pd",
    "is_psd",
    "log_det_psd",
    "min_eig_sym",
    "pinv_psd",
    "schur_complement",
    "sqrt_psd",
    "sym_eig",
    "symmetrize",
]


def symmetrize(M: NDArray) -> NDArray:
    return 0.5 * (M + M.T)


def as_symmetric(M: ArrayLike) -> NDArray:
    """Validate that ``M`` is a finite, square, symmetric matrix and return it symmetrized.

    The symmetry tolerance is ``TOL_SYM * (1 + max|M_ij|)``.
    """
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix has NaN or infinite entries")
    scale = 1.0 + (np.max(np.abs(A)) if A.size else 0.0)
    asym = np.max(np.abs(A - A.T)) if A.size else 0.0
    if asym > TOL_SYM * scale:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds {TOL_SYM * scale:.3e}")
    return symmetrize(A)


def sym_eig(M: ArrayLike) -> tuple[NDArray, NDArray]:
    """Eigendecomposition ``M = Q diag(w) Q^T`` of a symmetric matrix.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    Q : ndarray
        Orthogonal matrix whose columns are the eigenvectors.
    """
    A = as_symmetric(M)
    w, Q = np.linalg.eigh(A)
    return w, Q


def _psd_floor(w: NDArray) -> float:
    lam_max = max(float(np.max(np.abs(w))), 0.0) if w.size else 0.0
    return -TOL_PSD * (1.0 + lam_max)


def _check_psd_spectrum(w: NDArray) -> None:
    if w.size and w[0] < _psd_floor(w):
        raise NotPSD(f"minimum eigenvalue {w[0]:.6g} is negative beyond tolerance")


def _check_pd_spectrum(w: NDArray) -> None:
    if w.size and w[0] <= TOL_PD:
        raise NotPD(f"minimum eigenvalue {w[0]:.6g} is not positive")


def is_psd(M: ArrayLike) -> bool:
    w, _ = sym_eig(M)
    return bool(not w.size or w[0] >= _psd_floor(w))


def is_pd(M: ArrayLike) -> bool:
    w, _ = sym_eig(M)
    return bool(not w.size or w[0] > TOL_PD)


def sqrt_psd(M: ArrayLike) -> NDArray:
    """Principal square root of a PSD matrix; tiny negative eigenvalues are clamped to 0."""
    w, Q = sym_eig(M)
    _check_psd_spectrum(w)
    R = (Q * np.sqrt(np.clip(w, 0.0, None))) @ Q.T
    return symmetrize(R)


def inv_sqrt_pd(M: ArrayLike) -> NDArray:
    w, Q = sym_eig(M)
    _check_pd_spectrum(w)
    return symmetrize((Q / np.sqrt(w)) @ Q.T)


def pinv_psd(M: ArrayLike) -> NDArray:
    """Moore-Penrose inverse of a PSD matrix, taken on its support.

    Eigenvalues below ``RANK_CUT * λ_max`` are treated as zero.
    """
    w, Q = sym_eig(M)
    _check_psd_spectrum(w)
    if not w.size:
        return np.zeros((0, 0))
    cut = RANK_CUT * max(float(w[-1]), 0.0)
    keep = w > cut
    inv = np.zeros_like(w)
    inv[keep] = 1.0 / w[keep]
    return symmetrize((Q * inv) @ Q.T)


def inv_pd(M: ArrayLike) -> NDArray:
    A = as_symmetric(M)
    try:
        c = cho_factor(A, lower=True)
    except LinAlgError as exc:
        raise NotPD("matrix is not positive definite") from exc
    return symmetrize(cho_solve(c, np.eye(A.shape[0])))


def _index_set(keep: Sequence[int], dim: int) -> NDArray:
    idx = np.asarray(list(keep), dtype=int)
    if idx.ndim != 1:
        raise BadIndexSet("index set must be one-dimensional")
    if idx.size and (idx[0] < 0 or idx[-1] >= dim):
        raise BadIndexSet(f"indices must lie in [0, {dim})")
    if np.any(np.diff(idx) <= 0):
        raise BadIndexSet("indices must be strictly increasing")
    return idx


def schur_complement(M: ArrayLike, keep: Sequence[int], *, strict: bool = True) -> NDArray:
    """Schur complement of the block *not* in ``keep``.

    Writing ``M`` as ``((A, X), (X^T, B))`` with ``B`` the principal block on
    ``keep``, returns ``B - X^T A^+ X``. The inverse of ``A`` is a direct
    Cholesky solve when ``A`` is positive definite and the pseudo-inverse on
    the support otherwise.

    Parameters
    ----------
    M : array_like
        Symmetric PSD matrix.
    keep : sequence of int
        Strictly increasing indices of the output block.
    strict : bool
        If False, only the eliminated block ``A`` must be PSD; ``M`` itself
        may be indefinite. This exists so that matrices whose
        entries were rounded for display can still be processed.
    """
    A_full = as_symmetric(M)
    dim = A_full.shape[0]
    idx = _index_set(keep, dim)
    if strict:
        w = np.linalg.eigvalsh(A_full)
        _check_psd_spectrum(w)
    rest = np.setdiff1d(np.arange(dim), idx)
    B = A_full[np.ix_(idx, idx)]
    if rest.size == 0:
        return B.copy()
    A = A_full[np.ix_(rest, rest)]
    X = A_full[np.ix_(rest, idx)]
    try:
        c = cho_factor(A, lower=True)
        if np.min(np.abs(np.diag(c[0]))) ** 2 <= TOL_PD * (1.0 + np.max(np.abs(A))):
            raise LinAlgError("near-singular pivot")
        Y = cho_solve(c, X)
    except LinAlgError:
        Y = pinv_psd(A) @ X
    return symmetrize(B - X.T @ Y)


def geometric_mean(M: ArrayLike, N: ArrayLike) -> NDArray:
    """Matrix geometric mean ``M # N = M^½ (M^-½ N M^-½)^½ M^½`` of two PD matrices."""
    Mh = sqrt_psd(M)
    Mih = inv_sqrt_pd(M)
    w_n, _ = sym_eig(N)
    _check_pd_spectrum(w_n)
    inner = sqrt_psd(symmetrize(Mih @ np.asarray(N, dtype=float) @ Mih))
    return symmetrize(Mh @ inner @ Mh)


def log_det_psd(M: ArrayLike) -> float:
    """Natural log-determinant of a PD matrix, as a sum of log eigenvalues."""
    w, _ = sym_eig(M)
    _check_pd_spectrum(w)
    return float(np.sum(np.log(w)))


def min_eig_sym(M: ArrayLike) -> float:
    A = as_symmetric(M)
    return float(np.linalg.eigvalsh(A)[0])


def direct_sum_matrices(*blocks: ArrayLike) -> NDArray:
    mats = [np.atleast_2d(np.asarray(b, dtype=float)) for b in blocks]
    dim = sum(m.shape[0] for m in mats)
    out = np.zeros((dim, dim))
    i = 0
    for m in mats:
        k = m.shape[0]
        out[i : i + k, i : i + k] = m
        i += k
    return out
