"""Scalar correlation measures built on symplectic spectra.

All quantities are in nats. ``g_plus`` / ``g_minus`` sum the positive and
negative parts of the log symplectic spectrum; Gaussian steerability, the
logarithmic negativity and the Rényi-2 entanglement are all expressed
through them or through log-determinants.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import expm

from .errors import BadAlpha
from .gaussian_ops import (
    Selector,
    conditional_cm,
    partial_trace,
    partial_transpose,
)
from .linalg import geometric_mean, inv_pd, log_det_psd, sqrt_psd, symmetrize
from .symplectic import (
    CovarianceMatrix,
    ModePartition,
    SeededRng,
    as_generator,
    as_matrix,
    omega,
    random_symmetric,
    require_bona_fide,
    symplectic_spectrum,
    williamson,
)

__all__ = [
    "E2SearchConfig",
    "e2_estimate",
    "e2_upper",
    "f_alpha",
    "f_alpha_dd",
    "g_minus",
    "g_plus",
    "log_negativity",
    "mutual_info_2",
    "purity",
    "renyi_entropy",
    "steerability",
    "variational_certificate_gminus",
    "variational_certificate_gplus",
]


def g_plus(V: CovarianceMatrix | ArrayLike, *, strict: bool = True) -> float:
    """Sum of ``max(log ν_i, 0)`` over the symplectic spectrum."""
    nus = symplectic_spectrum(V, strict=strict)
    return float(np.sum(np.maximum(np.log(nus), 0.0)))


def g_minus(V: CovarianceMatrix | ArrayLike, *, strict: bool = True) -> float:
    """Sum of ``max(-log ν_i, 0)`` over the symplectic spectrum.

    ``strict=False`` accepts indefinite symmetric input and uses the moduli
    of the eigenvalues of ``ΩV`` (see :func:`symplectic_spectrum`).
    """
    nus = symplectic_spectrum(V, strict=strict)
    return float(np.sum(np.maximum(-np.log(nus), 0.0)))


def steerability(
    V: CovarianceMatrix,
    steering: Selector,
    steered: Selector | None = None,
    *,
    strict: bool = True,
) -> float:
    """Gaussian steerability of ``steered`` by ``steering``: ``g_-(V_AB / V_A)``.

    Parties outside ``steering ∪ steered`` are traced out first. With
    ``steered=None`` every remaining party is steered.
    """
    steering = [steering] if isinstance(steering, str) else list(steering)
    if steered is None:
        steered = V.partition.complement(steering)
    steered = [steered] if isinstance(steered, str) else list(steered)
    both = steering + steered
    W = V if len(both) == len(V.labels) else partial_trace(V, both)
    cond = conditional_cm(W, steering, strict=strict and V.checked)
    return g_minus(cond.matrix, strict=strict)


def log_negativity(V: CovarianceMatrix, cut: Selector) -> float:
    """Logarithmic negativity ``g_-(Θ V Θ)`` with Θ transposing ``cut``."""
    require_bona_fide(V)
    return g_minus(partial_transpose(V, cut))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < 1.0:
        raise BadAlpha(f"Rényi order must be >= 1, got {alpha}")
    return alpha


def _log_tanh_half(x: NDArray) -> NDArray:
    # log tanh(x/2) without rounding tanh to 1 (large x) or e^-x to 1 (small x)
    e = np.exp(-x)
    with np.errstate(divide="ignore"):
        return np.where(x < 1.0, np.log(np.tanh(0.5 * x)), np.log1p(-e) - np.log1p(e))


def _log1mexp(z: NDArray) -> NDArray:
    # log(1 - e^z) for z <= 0
    with np.errstate(divide="ignore"):
        return np.where(z < -np.log(2.0), np.log1p(-np.exp(z)), np.log(-np.expm1(z)))


def _log_cosh(y: NDArray) -> NDArray:
    # cosh y - 1 = 2 sinh²(y/2) keeps small y exact; the other branch cannot overflow
    with np.errstate(over="ignore"):
        small = np.log1p(2.0 * np.sinh(0.5 * y) ** 2)
    return np.where(y < 1.0, small, y + np.log1p(np.exp(-2.0 * y)) - np.log(2.0))


# below this |α-1| the α-general formulas lose more to round-off than a Taylor step
_NEAR_ONE = 1e-5


def f_alpha(x: ArrayLike, alpha: float) -> NDArray | float:
    """Rényi-α entropy of one mode with symplectic eigenvalue ``e^x``.

    For α > 1 this is ``-log(2^α / ((e^x+1)^α - (e^x-1)^α)) / (α-1)``, and
    for α = 1 the von Neumann form ``a log a - b log b`` with
    ``a = (e^x+1)/2``, ``b = (e^x-1)/2``. Defined for ``x >= 0``.
    """
    alpha = _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    if 0.0 < abs(alpha - 1.0) < _NEAR_ONE:
        # the general form divides round-off by α-1; expand around α = 1 instead,
        # d f_α/dα at 1 is -ab log²(a/b) / 2 (half the variance of -log p)
        b = 0.5 * np.expm1(x)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            # ab log²(a/b), arranged per range so neither factor overflows
            big = (1.0 + 1.0 / b) * (b * np.log1p(1.0 / b)) ** 2
            little = b * (b + 1.0) * (np.log1p(b) - np.log(b)) ** 2
            slope = np.where(b >= 1.0, -0.5 * big, np.where(b > 0, -0.5 * little, 0.0))
        out = np.asarray(f_alpha(x, 1.0)) + (alpha - 1.0) * slope
    elif alpha == 1.0:
        # a log a - b log b with a - b = 1, rearranged per range to avoid cancellation
        b = 0.5 * np.expm1(x)
        a = b + 1.0
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            large = np.log(b) + a * np.log1p(1.0 / b)
            small = a * np.log1p(b) - b * np.log(b)
            out = np.where(b >= 1.0, large, np.where(b > 0, small, 0.0))
    else:
        # log((e^x+1)^α - (e^x-1)^α) - α log 2 = α x/2 + α log cosh(x/2) + log(1 - tanh^α(x/2))
        log_c = _log_cosh(0.5 * x)
        with np.errstate(divide="ignore"):
            tail = _log1mexp(alpha * _log_tanh_half(x))
        out = (0.5 * alpha * x + alpha * log_c + tail) / (alpha - 1.0)
    return float(out) if out.ndim == 0 else out


def f_alpha_dd(x: ArrayLike, alpha: float) -> NDArray | float:
    """Second derivative of :func:`f_alpha` in ``x`` (``x > 0``).

    With ``t = tanh(x/2)`` and ``q = 1 - t²``, ``(α-1) f'' = α q / 4 + k''``
    where ``k = log(1 - t^α)``. For α = 1 the closed form is
    ``(u/2) log((u+1)/(u-1)) - u²/(u²-1)`` with ``u = e^x``.
    """
    alpha = _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("f_alpha_dd needs x > 0")
    if abs(alpha - 1.0) < _NEAR_ONE:
        # zeroth order near α = 1, error O(α-1)
        u = np.exp(x)
        out = 0.5 * u * np.log((u + 1.0) / (u - 1.0)) - u * u / ((u - 1.0) * (u + 1.0))
    else:
        t = np.tanh(0.5 * x)
        q = 1.0 / np.cosh(0.5 * x) ** 2
        log_t = _log_tanh_half(x)
        one_minus = -np.expm1(alpha * log_t)
        ta2 = np.exp((alpha - 2.0) * log_t)
        ta = t * t * ta2
        k_dd = (
            -alpha * ((alpha - 1.0) * ta2 * q * q / 4.0 - ta * q / 2.0) / one_minus
            - alpha**2 * (ta2 * t) ** 2 * q * q / (4.0 * one_minus**2)
        )
        out = (alpha * q / 4.0 + k_dd) / (alpha - 1.0)
    return float(out) if np.ndim(out) == 0 else out


def renyi_entropy(V: CovarianceMatrix | ArrayLike, alpha: float) -> float:
    """Rényi-α entropy (α >= 1) of a Gaussian state; α = 1 is von Neumann."""
    alpha = _check_alpha(alpha)
    require_bona_fide(V)
    nus = np.maximum(symplectic_spectrum(V), 1.0)
    return float(np.sum(f_alpha(np.log(nus), alpha)))


def purity(V: CovarianceMatrix | ArrayLike) -> float:
    """``Tr ρ² = det(V)^-1/2``."""
    require_bona_fide(V)
    return float(np.exp(-0.5 * log_det_psd(as_matrix(V))))


def mutual_info_2(V: CovarianceMatrix, cut: Selector) -> float:
    """Rényi-2 mutual information ``½ log(det V_A det V_B / det V_AB)``.

    ``cut`` names side A; B is every other party.
    """
    A = partial_trace(V, cut)
    B = partial_trace(V, V.partition.complement(cut))
    return 0.5 * (log_det_psd(A.matrix) + log_det_psd(B.matrix) - log_det_psd(V.matrix))


def pure_witness(V: CovarianceMatrix) -> CovarianceMatrix:
    """``γ# = V # (Ω V^-1 Ω^T)``, a pure CM below ``V``."""
    require_bona_fide(V)
    Om = omega(V.n_modes)
    other = symmetrize(Om @ inv_pd(V.matrix) @ Om.T)
    return CovarianceMatrix(geometric_mean(V.matrix, other), V.partition)


def e2_upper(V: CovarianceMatrix, cut: Selector) -> tuple[float, CovarianceMatrix]:
    """Upper bound on the Rényi-2 entanglement from the γ# ansatz.

    Returns ``(½ log det γ#_A, γ#)``.
    """
    witness = pure_witness(V)
    bound = 0.5 * log_det_psd(witness.block(cut))
    return bound, witness


@dataclass(frozen=True)
class E2SearchConfig:
    """Settings for :func:`e2_estimate`.

    ``initial_step`` and ``min_step`` bound the step length along random
    directions in the space of symmetric generators.
    """

    restarts: int = 4
    max_iters: int = 400
    penalty_weight: float = 1e4
    step_decay: float = 0.5
    rng: SeededRng = field(default_factory=lambda: SeededRng(0))
    initial_step: float = 0.25
    min_step: float = 1e-7
    restart_spread: float = 0.3

    def __post_init__(self):
        for name in ("restarts", "max_iters", "penalty_weight", "step_decay", "initial_step"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not self.step_decay < 1:
            raise ValueError("step_decay must be < 1")


def e2_estimate(V: CovarianceMatrix, cut: Selector, cfg: E2SearchConfig | None = None) -> float:
    """Heuristic estimate of the Rényi-2 entanglement (Gaussian convex roof).

    This is a local search, not a certified infimum. Pure CMs are
    parameterized as ``γ = (S0 e^{ΩH})(S0 e^{ΩH})^T`` and
    ``½ log det γ_A + w Σ max(0, -λ_i(V - γ))²`` is decreased by random
    direction descent on ``H`` with geometric step decay. The first restart
    starts at the γ# witness; later ones start from random perturbations of
    it. Only feasible points (``γ <= V`` to working precision) are ever
    reported, so the result is an upper bound on the true infimum and never
    exceeds the γ# bound.
    """
    cfg = cfg or E2SearchConfig()
    g = as_generator(cfg.rng)
    M = V.matrix
    n = V.n_modes
    dim = 2 * n
    Om = omega(n)
    idx = V.partition.indices(cut)
    feas_tol = 1e-9 * (1.0 + np.max(np.abs(M)))

    base_bound, witness = e2_upper(V, cut)
    S_sharp = sqrt_psd(witness.matrix)

    def evaluate(S0: NDArray, H: NDArray) -> tuple[float, float, float]:
        S = S0 @ expm(Om @ H)
        gamma = S @ S.T
        lam = np.linalg.eigvalsh(symmetrize(M - gamma))
        sign, logdet = np.linalg.slogdet(gamma[np.ix_(idx, idx)])
        value = 0.5 * logdet if sign > 0 else np.inf
        return value, float(lam[0]), float(np.sum(np.minimum(lam, 0.0) ** 2))

    best = base_bound
    for restart in range(cfg.restarts):
        if restart == 0:
            S0 = S_sharp
        else:
            S0 = S_sharp @ expm(Om @ random_symmetric(dim, cfg.restart_spread, g))
        H = np.zeros((dim, dim))
        value, lam_min, viol = evaluate(S0, H)
        obj = value + cfg.penalty_weight * viol
        if lam_min >= -feas_tol:
            best = min(best, value)
        step, fails = cfg.initial_step, 0
        patience = dim * (dim + 1) // 2
        for _ in range(cfg.max_iters):
            d = random_symmetric(dim, 1.0, g)
            d /= np.linalg.norm(d)
            moved = False
            for sgn in (1.0, -1.0):
                Hn = H + sgn * step * d
                v_n, lam_n, viol_n = evaluate(S0, Hn)
                obj_n = v_n + cfg.penalty_weight * viol_n
                if obj_n < obj:
                    H, obj, moved = Hn, obj_n, True
                    if lam_n >= -feas_tol:
                        best = min(best, v_n)
                    break
            if not moved:
                fails += 1
                if fails >= patience:
                    step *= cfg.step_decay
                    fails = 0
                    if step < cfg.min_step:
                        break
    return float(best)


def variational_certificate_gplus(V: CovarianceMatrix | ArrayLike) -> CovarianceMatrix:
    """Quantum CM ``Z̄ >= V`` with ``½ log det Z̄ = g_+(V)``.

    Built in the Williamson basis of ``V`` by raising every symplectic
    eigenvalue below 1 up to 1.
    """
    M = as_matrix(V)
    wil = williamson(M)
    nu_bar = np.maximum(wil.nus, 1.0)
    Z = symmetrize((wil.S * np.repeat(nu_bar, 2)) @ wil.S.T)
    part = V.partition if isinstance(V, CovarianceMatrix) else ModePartition([("A", M.shape[0] // 2)])
    return CovarianceMatrix(Z, part)


def variational_certificate_gminus(V: CovarianceMatrix | ArrayLike) -> CovarianceMatrix:
    """Quantum CM ``Z >= Ω^T V^-1 Ω`` with ``½ log det Z = g_-(V)``."""
    M = as_matrix(V)
    Om = omega(M.shape[0] // 2)
    W = symmetrize(Om.T @ inv_pd(M) @ Om)
    part = V.partition if isinstance(V, CovarianceMatrix) else ModePartition([("A", M.shape[0] // 2)])
    return variational_certificate_gplus(CovarianceMatrix(W, part))
