"""CM-level maps between Gaussian states.

Parties are selected by label. Whenever a subset of parties is kept, the
output preserves the order of the input partition, not the order of the
selector.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DimensionMismatch, LabelClash, NotPD, UnknownParty
from .linalg import (
    as_symmetric,
    direct_sum_matrices,
    is_pd,
    schur_complement,
    symmetrize,
)
from .symplectic import CovarianceMatrix, ModePartition

Selector = str | Iterable[str]


def _labels(sel: Selector) -> list[str]:
    return [sel] if isinstance(sel, str) else list(sel)


def _make(M: NDArray, part: ModePartition, strict: bool = True) -> CovarianceMatrix:
    # unchecked inputs (e.g. matrices with rounded entries) stay unchecked
    if strict:
        return CovarianceMatrix(M, part)
    return CovarianceMatrix.unchecked(M, part)


@dataclass(frozen=True)
class GaussianMapSpec:
    """Data ``γ_BB' = ((γ_B, δ), (δ^T, γ_B'))`` of a classical Gaussian map ``B -> B'``."""

    gamma_B: NDArray
    gamma_Bp: NDArray
    delta: NDArray

    def __post_init__(self):
        gB = as_symmetric(self.gamma_B)
        gBp = as_symmetric(self.gamma_Bp)
        d = np.atleast_2d(np.asarray(self.delta, dtype=float))
        if d.shape != (gB.shape[0], gBp.shape[0]):
            raise DimensionMismatch(
                f"delta has shape {d.shape}, expected {(gB.shape[0], gBp.shape[0])}"
            )
        object.__setattr__(self, "gamma_B", gB)
        object.__setattr__(self, "gamma_Bp", gBp)
        object.__setattr__(self, "delta", d)
        if not is_pd(self.joint()):
            raise NotPD("assembled γ_BB' must be positive definite")

    def joint(self) -> NDArray:
        return np.block([[self.gamma_B, self.delta], [self.delta.T, self.gamma_Bp]])

    @classmethod
    def from_joint(cls, gamma: ArrayLike, dim_B: int) -> GaussianMapSpec:
        G = as_symmetric(gamma)
        return cls(G[:dim_B, :dim_B], G[dim_B:, dim_B:], G[:dim_B, dim_B:])


def partial_trace(V: CovarianceMatrix, keep: Selector) -> CovarianceMatrix:
    """Marginal CM on the kept parties."""
    idx = V.partition.indices(keep)
    sub = V.matrix[np.ix_(idx, idx)]
    return _make(sub, V.partition.restrict(keep), V.checked)


def partial_transpose(V: CovarianceMatrix, transposed: Selector) -> CovarianceMatrix:
    """``Θ V Θ`` where Θ flips the momentum sign of every mode in ``transposed``."""
    idx = V.partition.indices(transposed)
    theta = np.ones(V.partition.dim)
    theta[idx[1::2]] = -1.0
    return _make(V.matrix * np.outer(theta, theta), V.partition, V.checked)


def direct_sum(V: CovarianceMatrix, W: CovarianceMatrix) -> CovarianceMatrix:
    clash = set(V.labels) & set(W.labels)
    if clash:
        raise LabelClash(f"both CMs use labels {sorted(clash)}")
    M = direct_sum_matrices(V.matrix, W.matrix)
    return CovarianceMatrix(M, V.partition + W.partition)


def conditional_cm(V: CovarianceMatrix, conditioning: Selector, *, strict: bool = True) -> CovarianceMatrix:
    """Schur complement ``V / V_C`` of the conditioning parties ``C``."""
    part = V.partition
    rest = part.complement(conditioning)
    if not rest:
        raise UnknownParty("conditioning on every party leaves nothing")
    M = schur_complement(V.matrix, part.indices(rest), strict=strict)
    return _make(M, part.restrict(rest), strict)


def classical_gaussian_map(
    V: CovarianceMatrix,
    spec: GaussianMapSpec,
    on: Selector,
    out_label: str | None = None,
) -> CovarianceMatrix:
    """Apply ``V_B -> γ_B' - δ^T (γ_B + V_B)^-1 δ`` on the parties ``on``.

    The whole matrix is transformed at once as the Schur complement
    ``(γ_BB' + V) / (γ_B + V_B)``, which also updates the correlations with
    (and the marginal of) the untouched parties. The output block ``B'`` takes
    the position of the first selected party. If ``B'`` has the same size as
    ``B`` the original parties are kept; otherwise ``B'`` becomes one party
    named ``out_label`` (default: the selected labels joined, with a prime).
    """
    part = V.partition
    labels = _labels(on)
    iB = part.indices(labels)
    dB, dBp = spec.gamma_B.shape[0], spec.gamma_Bp.shape[0]
    if dB != iB.size:
        raise DimensionMismatch(f"map expects a {dB}-dim input, selected block is {iB.size}")
    if dBp % 2:
        raise DimensionMismatch("output block must have even dimension")
    rest = part.complement(labels)
    iR = part.indices(rest) if rest else np.zeros(0, dtype=int)
    dR = iR.size

    # layout (R, B, B') -> eliminate B
    big = np.zeros((dR + dB + dBp, dR + dB + dBp))
    order = np.concatenate([iR, iB])
    big[: dR + dB, : dR + dB] = V.matrix[np.ix_(order, order)]
    big[dR : dR + dB, dR : dR + dB] += spec.gamma_B
    big[dR : dR + dB, dR + dB :] = spec.delta
    big[dR + dB :, dR : dR + dB] = spec.delta.T
    big[dR + dB :, dR + dB :] = spec.gamma_Bp
    if not is_pd(big[dR : dR + dB, dR : dR + dB]):
        raise NotPD("γ_B + V_B is not positive definite")
    keep = np.concatenate([np.arange(dR), np.arange(dR + dB, dR + dB + dBp)])
    out = schur_complement(big, keep, strict=False)

    # reorder so that B' sits where the first selected party was
    first = part.labels.index(next(label for label in part.labels if label in labels))
    if dBp == dB:
        new_parties = [(label, m) for label, m in part.parties if label in labels]
    else:
        name = out_label or "".join(label for label in part.labels if label in labels) + "'"
        new_parties = [(name, dBp // 2)]
    before = [p for p in part.parties[:first] if p[0] not in labels]
    after = [p for p in part.parties[first:] if p[0] not in labels]
    if {p[0] for p in new_parties} & {p[0] for p in before + after}:
        raise LabelClash(f"output label clashes with {[p[0] for p in before + after]}")
    n_before = 2 * sum(m for _, m in before)
    perm = np.concatenate(
        [np.arange(n_before), np.arange(dR, dR + dBp), np.arange(n_before, dR)]
    ).astype(int)
    out = symmetrize(out[np.ix_(perm, perm)])
    return CovarianceMatrix(out, ModePartition(before + new_parties + after))


def measurement_update(
    V: CovarianceMatrix, gamma: ArrayLike, measured: Selector
) -> CovarianceMatrix:
    """Conditional CM after a Gaussian measurement with seed CM ``γ`` on ``measured``.

    Returns ``(V + 0 ⊕ γ_C) / (V_C + γ_C)`` on the unmeasured parties; the
    result does not depend on the outcome.
    """
    part = V.partition
    iC = part.indices(measured)
    G = as_symmetric(gamma)
    if G.shape[0] != iC.size:
        raise DimensionMismatch(f"γ is {G.shape[0]}-dim but measured block is {iC.size}")
    rest = part.complement(measured)
    if not rest:
        raise UnknownParty("measuring every party leaves nothing")
    M = V.matrix.copy()
    M[np.ix_(iC, iC)] += G
    out = schur_complement(M, part.indices(rest))
    return CovarianceMatrix(out, part.restrict(rest))


def heterodyne(n_modes: int) -> NDArray:
    return np.eye(2 * n_modes)


def homodyne_x(n_modes: int, eps: float = 1e-6) -> NDArray:
    """Finite-squeezing approximation of an x-quadrature homodyne seed."""
    return np.kron(np.eye(n_modes), np.diag([eps, 1.0 / eps]))
