"""Symplectic structure of covariance matrices.

Quadratures are ordered mode by mode, ``(x1, p1, x2, p2, ...)``, so the
symplectic form is the direct sum of ``[[0, 1], [-1, 0]]`` blocks.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import expm, schur

from .errors import (
    DimensionMismatch,
    LabelClash,
    NotBonaFide,
    NotPD,
    NumericalFailure,
    UnknownParty,
)
from .linalg import (
    TOL_PD,
    TOL_RECON,
    _check_pd_spectrum,
    _check_psd_spectrum,
    as_symmetric,
    direct_sum_matrices,
    is_pd,
    sqrt_psd,
    sym_eig,
    symmetrize,
)

TOL_BONA = 1e-9
TOL_PURE = 1e-7

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])


# --------------------------------------------------------------------------
# Partitions and covariance matrices
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ModePartition:
    """Ordered assignment of modes to named parties.

    Party ``k`` occupies a contiguous range of ``2 * modes`` rows, in the
    order the parties are listed.
    """

    parties: tuple[tuple[str, int], ...]

    def __init__(self, parties: Iterable[tuple[str, int]] | Mapping[str, int]):
        if isinstance(parties, Mapping):
            parties = parties.items()
        items = tuple((str(label), int(m)) for label, m in parties)
        labels = [label for label, _ in items]
        if not items:
            raise DimensionMismatch("a partition needs at least one party")
        if any(not label for label in labels):
            raise UnknownParty("party labels must be nonempty")
        if len(set(labels)) != len(labels):
            raise LabelClash(f"duplicate party labels in {labels}")
        if any(m < 1 for _, m in items):
            raise DimensionMismatch("every party needs at least one mode")
        object.__setattr__(self, "parties", items)

    @classmethod
    def from_spec(cls, spec: str) -> ModePartition:
        """Parse ``"A:2,B1:1,B2:1"``."""
        parties = []
        for chunk in spec.split(","):
            label, sep, modes = chunk.strip().partition(":")
            if not sep or not label.strip():
                raise ValueError(f"bad party spec {chunk!r}; expected LABEL:MODES")
            try:
                parties.append((label.strip(), int(modes)))
            except ValueError:
                raise ValueError(f"bad mode count in {chunk!r}") from None
        return cls(parties)

    def to_spec(self) -> str:
        return ",".join(f"{label}:{m}" for label, m in self.parties)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.parties)

    @property
    def n_modes(self) -> int:
        return sum(m for _, m in self.parties)

    @property
    def dim(self) -> int:
        return 2 * self.n_modes

    def modes(self, label: str) -> int:
        return dict(self.parties)[self._check(label)]

    def _check(self, label: str) -> str:
        if label not in self.labels:
            raise UnknownParty(f"unknown party {label!r}; have {list(self.labels)}")
        return label

    def _select(self, labels: str | Iterable[str]) -> list[str]:
        if isinstance(labels, str):
            labels = [labels]
        labels = [self._check(label) for label in labels]
        if not labels:
            raise UnknownParty("empty party selection")
        if len(set(labels)) != len(labels):
            raise UnknownParty(f"duplicate labels in selection {labels}")
        return labels

    def ranges(self) -> dict[str, range]:
        out, start = {}, 0
        for label, m in self.parties:
            out[label] = range(start, start + 2 * m)
            start += 2 * m
        return out

    def indices(self, labels: str | Iterable[str]) -> NDArray:
        """Row indices of the selected parties, in partition order."""
        chosen = set(self._select(labels))
        ranges = self.ranges()
        idx = [i for label in self.labels if label in chosen for i in ranges[label]]
        return np.asarray(idx, dtype=int)

    def restrict(self, labels: str | Iterable[str]) -> ModePartition:
        chosen = set(self._select(labels))
        return ModePartition([(label, m) for label, m in self.parties if label in chosen])

    def complement(self, labels: str | Iterable[str]) -> list[str]:
        chosen = set(self._select(labels))
        return [label for label in self.labels if label not in chosen]

    def __add__(self, other: ModePartition) -> ModePartition:
        return ModePartition(self.parties + other.parties)


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Symmetric PSD matrix together with its mode partition.

    Construction validates symmetry, dimension and positive semidefiniteness.
    Use :meth:`unchecked` to skip the PSD test (symmetry and shape are still
    enforced).
    """

    matrix: NDArray
    partition: ModePartition = field(repr=False)

    def __post_init__(self):
        self._init(check_psd=True)

    def _init(self, check_psd: bool) -> None:
        M = as_symmetric(self.matrix)
        part = self.partition
        if not isinstance(part, ModePartition):
            part = ModePartition(part)
        if M.shape[0] != part.dim:
            raise DimensionMismatch(
                f"matrix is {M.shape[0]}x{M.shape[0]} but partition has {part.dim} quadratures"
            )
        if check_psd:
            _check_psd_spectrum(np.linalg.eigvalsh(M))
        M.setflags(write=False)
        object.__setattr__(self, "_checked", check_psd)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "partition", part)

    @classmethod
    def unchecked(cls, matrix: ArrayLike, partition: ModePartition) -> CovarianceMatrix:
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", matrix)
        object.__setattr__(obj, "partition", partition)
        obj._init(check_psd=False)
        return obj

    @classmethod
    def single(cls, matrix: ArrayLike, label: str = "A") -> CovarianceMatrix:
        """Wrap a matrix as a one-party CM."""
        M = np.asarray(matrix, dtype=float)
        return cls(M, ModePartition([(label, M.shape[0] // 2)]))

    @property
    def checked(self) -> bool:
        """False for instances built with :meth:`unchecked`."""
        return self._checked

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    @property
    def n_modes(self) -> int:
        return self.partition.n_modes

    @property
    def labels(self) -> tuple[str, ...]:
        return self.partition.labels

    def block(self, rows: str | Iterable[str], cols: str | Iterable[str] | None = None) -> NDArray:
        """Sub-block between two party selections (defaults to the principal block)."""
        r = self.partition.indices(rows)
        c = r if cols is None else self.partition.indices(cols)
        return self.matrix[np.ix_(r, c)].copy()

    def __eq__(self, other):
        if not isinstance(other, CovarianceMatrix):
            return NotImplemented
        return self.partition == other.partition and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def as_matrix(V: CovarianceMatrix | ArrayLike) -> NDArray:
    if isinstance(V, CovarianceMatrix):
        return V.matrix
    return as_symmetric(V)


@dataclass(frozen=True)
class WilliamsonResult:
    """``V = S diag(ν1, ν1, ..., νn, νn) S^T`` with ``S`` symplectic."""

    S: NDArray
    nus: NDArray

    def diagonal(self) -> NDArray:
        return np.diag(np.repeat(self.nus, 2))

    def reconstruct(self) -> NDArray:
        return symmetrize(self.S @ self.diagonal() @ self.S.T)


@dataclass(frozen=True)
class SeededRng:
    """Reproducible random stream identified by ``(seed, stream)``.

    The generator is numpy's Philox4x64 counter-based bit generator keyed by
    the 128-bit integer ``seed + 2**64 * stream``, so sequences are the same
    on every platform and per-trial streams never overlap.

    Every call to :meth:`generator` restarts the stream; keep the returned
    ``Generator`` around to draw successive values.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        object.__setattr__(self, "seed", int(self.seed) % 2**64)
        object.__setattr__(self, "stream", int(self.stream) % 2**64)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.seed + (self.stream << 64)))

    def spawn(self, stream: int) -> SeededRng:
        return SeededRng(self.seed, stream)


RngLike = SeededRng | np.random.Generator | int


def as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, SeededRng):
        return rng.generator()
    return SeededRng(int(rng)).generator()


# --------------------------------------------------------------------------
# Spectra
# --------------------------------------------------------------------------


def omega(n_modes: int) -> NDArray:
    """Symplectic form on ``n_modes`` modes."""
    if n_modes < 1:
        raise DimensionMismatch("n_modes must be at least 1")
    return np.kron(np.eye(n_modes), _J)


def _omega_for(M: NDArray) -> NDArray:
    if M.shape[0] % 2:
        raise DimensionMismatch(f"odd dimension {M.shape[0]} has no symplectic form")
    return omega(M.shape[0] // 2)


def _pair(values: NDArray) -> NDArray:
    v = np.sort(values)
    return 0.5 * (v[0::2] + v[1::2])


def symplectic_spectrum(V: CovarianceMatrix | ArrayLike, *, strict: bool = True) -> NDArray:
    """Symplectic eigenvalues of a positive definite matrix, ascending.

    For PD input these are the singular values of ``V^½ Ω V^½``, each of which
    occurs twice. With ``strict=False`` an indefinite symmetric matrix is
    accepted and the moduli of the eigenvalues of ``ΩV`` are returned
    instead (they coincide with the symplectic eigenvalues whenever ``V`` is
    PD).
    """
    M = as_matrix(V)
    Om = _omega_for(M)
    w, Q = sym_eig(M)
    if w[0] > TOL_PD:
        R = (Q * np.sqrt(w)) @ Q.T
        s = np.linalg.svd(R @ Om @ R, compute_uv=False)
        return _pair(s)
    if strict:
        raise NotPD(f"symplectic spectrum needs a PD matrix (min eigenvalue {w[0]:.6g})")
    return _pair(np.abs(np.linalg.eigvals(Om @ M)))


def williamson(V: CovarianceMatrix | ArrayLike) -> WilliamsonResult:
    """Williamson normal form of a PD matrix.

    Uses the real Schur form ``O T O^T`` of the antisymmetric matrix
    ``K = V^½ Ω V^½``; each 2x2 block of ``T`` is ``[[0, ν], [-ν, 0]]`` once
    column pairs are oriented, and ``S = V^½ O diag(ν)^-½``.
    """
    M = as_matrix(V)
    Om = _omega_for(M)
    n = M.shape[0] // 2
    w, Q = sym_eig(M)
    _check_pd_spectrum(w)
    R = symmetrize((Q * np.sqrt(w)) @ Q.T)
    K = R @ Om @ R
    K = 0.5 * (K - K.T)
    T, O = schur(K, output="real")

    nus = np.empty(n)
    cols = []
    i = 0
    while i < 2 * n:
        if i + 1 >= 2 * n or abs(T[i + 1, i]) < TOL_PD * (1.0 + abs(T[i, i + 1])):
            raise NumericalFailure("real Schur form of ΩV lacks a 2x2 block structure")
        b = T[i, i + 1]
        pair = [i, i + 1] if b > 0 else [i + 1, i]
        nus[i // 2] = 0.5 * (abs(b) + abs(T[i + 1, i]))
        cols.append(pair)
        i += 2
    order = np.argsort(nus, kind="stable")
    nus = nus[order]
    perm = [c for k in order for c in cols[k]]
    O = O[:, perm]
    S = R @ O / np.sqrt(np.repeat(nus, 2))

    result = WilliamsonResult(S=S, nus=nus)
    scale = 1.0 + np.max(np.abs(M))
    recon = np.max(np.abs(result.reconstruct() - M))
    sympl = np.max(np.abs(S @ Om @ S.T - Om))
    if recon > TOL_RECON * scale or sympl > TOL_RECON * (1.0 + np.max(np.abs(S)) ** 2):
        raise NumericalFailure(
            f"Williamson reconstruction error {recon:.2e}, symplecticity error {sympl:.2e}"
        )
    return result


def is_bona_fide(V: CovarianceMatrix | ArrayLike) -> tuple[bool, float]:
    """Check ``V + iΩ >= 0`` through the symplectic spectrum.

    Returns ``(ok, margin)`` with ``margin = ν_min - 1``. Matrices that are
    not positive definite are reported as ``(False, -1.0)``.
    """
    M = as_matrix(V)
    if not is_pd(M):
        return False, -1.0
    margin = float(symplectic_spectrum(M)[0] - 1.0)
    return margin >= -TOL_BONA, margin


def is_pure_cm(V: CovarianceMatrix | ArrayLike) -> bool:
    nus = symplectic_spectrum(V)
    return bool(np.all(np.abs(nus - 1.0) <= TOL_PURE))


def require_bona_fide(V: CovarianceMatrix | ArrayLike) -> None:
    ok, margin = is_bona_fide(V)
    if not ok:
        raise NotBonaFide(f"not a quantum CM (ν_min - 1 = {margin:.3g})")


# --------------------------------------------------------------------------
# Random ensembles and purification
# --------------------------------------------------------------------------


def random_symmetric(dim: int, scale: float, rng: RngLike) -> NDArray:
    g = as_generator(rng)
    H = np.zeros((dim, dim))
    iu = np.triu_indices(dim)
    H[iu] = g.normal(0.0, scale, size=len(iu[0]))
    return H + np.triu(H, 1).T


def random_symplectic(n_modes: int, strength: float, rng: RngLike) -> NDArray:
    """``exp(Ω H)`` for a random symmetric ``H`` with N(0, strength²) entries."""
    if strength <= 0:
        raise ValueError("strength must be positive")
    H = random_symmetric(2 * n_modes, strength, rng)
    return expm(omega(n_modes) @ H)


def random_quantum_cm(
    partition: ModePartition | str,
    nu_max: float = 3.0,
    strength: float = 0.7,
    rng: RngLike = 0,
) -> CovarianceMatrix:
    """Random bona fide CM ``S diag(ν) S^T`` with ``ν_i ~ U[1, nu_max]``.

    ``nu_max = 1`` gives pure states.
    """
    if isinstance(partition, str):
        partition = ModePartition.from_spec(partition)
    if nu_max < 1:
        raise ValueError("nu_max must be >= 1")
    g = as_generator(rng)
    n = partition.n_modes
    nus = g.uniform(1.0, nu_max, size=n) if nu_max > 1 else np.ones(n)
    S = random_symplectic(n, strength, g)
    V = (S * np.repeat(nus, 2)) @ S.T
    return CovarianceMatrix(symmetrize(V), partition)


def purify(V: CovarianceMatrix, label: str = "PURIF") -> CovarianceMatrix:
    """Pure CM on the original parties plus one ancilla party of equal size.

    In the Williamson basis each mode with symplectic eigenvalue ν is paired
    with one ancilla mode in a two-mode squeezed block
    ``[[ν I, c Z], [c Z, ν I]]``, ``c = sqrt(ν² - 1)``, ``Z = diag(1, -1)``.
    """
    require_bona_fide(V)
    if label in V.labels:
        raise LabelClash(f"ancilla label {label!r} already in use")
    wil = williamson(V)
    n = V.n_modes
    nus = np.maximum(wil.nus, 1.0)
    Z = np.diag([1.0, -1.0])
    top = np.kron(np.diag(nus), np.eye(2))
    cross = np.kron(np.diag(np.sqrt(nus**2 - 1.0)), Z)
    W = np.block([[top, cross], [cross, top]])
    L = direct_sum_matrices(wil.S, np.eye(2 * n))
    out = symmetrize(L @ W @ L.T)
    return CovarianceMatrix(out, V.partition + ModePartition([(label, n)]))


def tmsv(r: float, labels: Sequence[str] = ("A", "B")) -> CovarianceMatrix:
    """Two-mode squeezed vacuum with squeezing ``r``."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    Z = np.diag([1.0, -1.0])
    M = np.block([[c * np.eye(2), s * Z], [s * Z, c * np.eye(2)]])
    return CovarianceMatrix(M, ModePartition([(labels[0], 1), (labels[1], 1)]))


def vacuum(partition: ModePartition | str) -> CovarianceMatrix:
    if isinstance(partition, str):
        partition = ModePartition.from_spec(partition)
    return CovarianceMatrix(np.eye(partition.dim), partition)


def local_symplectic(partition: ModePartition, blocks: Mapping[str, NDArray]) -> NDArray:
    """Block-diagonal symplectic acting as ``blocks[label]`` on each named party."""
    mats = [
        np.asarray(blocks[label], dtype=float) if label in blocks else np.eye(2 * m)
        for label, m in partition.parties
    ]
    return direct_sum_matrices(*mats)


def congruence(V: CovarianceMatrix, S: ArrayLike) -> CovarianceMatrix:
    S = np.asarray(S, dtype=float)
    return CovarianceMatrix(symmetrize(S @ V.matrix @ S.T), V.partition)


def sqrt_factor(V: CovarianceMatrix | ArrayLike) -> NDArray:
    """Symmetric square root; for a pure CM this is itself symplectic."""
    return sqrt_psd(as_matrix(V))
