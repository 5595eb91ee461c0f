"""Randomized checks of the Schur-complement inequalities.

Each check draws one instance per trial from a seeded ensemble and returns a
signed *slack*: the amount by which the inequality holds, plus the tolerance
``tol * scale``. A negative slack is a failure. Trial ``i`` of a run with seed
``s`` always uses the random stream ``SeededRng(s, i)``, so any failure can
be replayed with :func:`replay`.
"""

from __future__ import annotations

import csv
import time
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any

import numpy as np

from .errors import UnknownCheck
from .gaussian_ops import (
    GaussianMapSpec,
    classical_gaussian_map,
    conditional_cm,
    direct_sum,
    measurement_update,
    partial_trace,
)
from .linalg import inv_pd, log_det_psd, min_eig_sym, symmetrize
from .measures import (
    e2_upper,
    f_alpha_dd,
    g_minus,
    g_plus,
    mutual_info_2,
    purity,
    steerability,
    variational_certificate_gminus,
    variational_certificate_gplus,
)
from .symplectic import (
    CovarianceMatrix,
    ModePartition,
    SeededRng,
    omega,
    purify,
    random_quantum_cm,
    random_symplectic,
    symplectic_spectrum,
    williamson,
)

# --------------------------------------------------------------------------
# Configuration and reports
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckConfig:
    trials: int = 200
    seed: int = 42
    max_modes_per_party: int = 2
    nu_max: float = 3.0
    strength: float = 0.7
    tol: float = 1e-8

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.nu_max < 1:
            raise ValueError("nu_max must be >= 1")
        if self.max_modes_per_party < 1:
            raise ValueError("max_modes_per_party must be >= 1")


@dataclass(frozen=True)
class PropertyReport:
    name: str
    trials: int
    failures: int
    worst_margin: float
    worst_seed_stream: int
    elapsed: float
    theorem_backed: bool = True
    seed: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def csv_row(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": repr(self.worst_margin),
            "worst_seed_stream": self.worst_seed_stream,
            "elapsed_s": f"{self.elapsed:.6f}",
        }


CSV_COLUMNS = ("name", "trials", "failures", "worst_margin", "worst_seed_stream", "elapsed_s")


def write_csv(reports, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for rep in reports:
            writer.writerow(rep.csv_row())


@dataclass(frozen=True)
class Check:
    name: str
    sample: Callable[[np.random.Generator, CheckConfig, int], Any]
    slack: Callable[[Any, float], float]
    theorem_backed: bool = True
    source: str = ""


REGISTRY: dict[str, Check] = {}


def _register(name: str, *, theorem_backed: bool = True, source: str = ""):
    def deco(fn_pair):
        sample, slack = fn_pair
        REGISTRY[name] = Check(name, sample, slack, theorem_backed, source)
        return fn_pair

    return deco


def run_check(name: str, cfg: CheckConfig | None = None) -> PropertyReport:
    """Run ``cfg.trials`` seeded trials of a registered check."""
    cfg = cfg or CheckConfig()
    try:
        check = REGISTRY[name]
    except KeyError:
        raise UnknownCheck(f"unknown check {name!r}; known: {', '.join(REGISTRY)}") from None
    start = time.perf_counter()
    failures, worst, worst_i = 0, np.inf, 0
    for i in range(cfg.trials):
        s = trial_slack(check, cfg, i)
        if not s >= 0:
            failures += 1
        if not s >= worst:
            worst, worst_i = s, i
    return PropertyReport(
        name=name,
        trials=cfg.trials,
        failures=failures,
        worst_margin=float(worst),
        worst_seed_stream=worst_i,
        elapsed=time.perf_counter() - start,
        theorem_backed=check.theorem_backed,
        seed=cfg.seed,
    )


def trial_slack(check: Check, cfg: CheckConfig, stream: int) -> float:
    g = SeededRng(cfg.seed, stream).generator()
    try:
        instance = check.sample(g, cfg, stream)
        return float(check.slack(instance, cfg.tol))
    except (ValueError, ArithmeticError, np.linalg.LinAlgError):
        return -np.inf


def replay(name: str, cfg: CheckConfig, stream: int) -> tuple[Any, float]:
    """Rebuild the instance of one trial and its slack."""
    check = REGISTRY[name]
    g = SeededRng(cfg.seed, stream).generator()
    instance = check.sample(g, cfg, stream)
    return instance, float(check.slack(instance, cfg.tol))


def run_all(cfg: CheckConfig | None = None, names=None) -> list[PropertyReport]:
    return [run_check(name, cfg) for name in (names or REGISTRY)]


# --------------------------------------------------------------------------
# Ensembles
# --------------------------------------------------------------------------


def _partition(g, cfg: CheckConfig, labels, fixed: dict[str, int] | None = None) -> ModePartition:
    fixed = fixed or {}
    return ModePartition(
        [(lab, fixed.get(lab) or int(g.integers(1, cfg.max_modes_per_party + 1))) for lab in labels]
    )


def _quantum(g, cfg: CheckConfig, part: ModePartition, nu_max: float | None = None) -> CovarianceMatrix:
    return random_quantum_cm(part, cfg.nu_max if nu_max is None else nu_max, cfg.strength, g)


def _wishart(g, dim: int, extra: int = 2) -> np.ndarray:
    G = g.normal(size=(dim, dim + extra))
    return symmetrize(G @ G.T / (dim + extra))


def _pd(g, cfg: CheckConfig, part: ModePartition) -> CovarianceMatrix:
    """PD matrix that need not be a quantum CM: a rescaled quantum CM or a Wishart draw."""
    if g.random() < 0.5:
        V = _quantum(g, cfg, part)
        return CovarianceMatrix(V.matrix * g.uniform(0.2, 1.5), part)
    return CovarianceMatrix(_wishart(g, part.dim) + 0.05 * np.eye(part.dim), part)


def _pure_gamma(g, cfg: CheckConfig, n_modes: int) -> np.ndarray:
    S = random_symplectic(n_modes, cfg.strength, g)
    return symmetrize(S @ S.T)


def _norm(*mats) -> float:
    return max(float(np.linalg.norm(np.asarray(m), 2)) for m in mats)


def _op_slack(X, Y, tol: float) -> float:
    """``λ_min(X - Y) + tol (1 + max(‖X‖, ‖Y‖))``; >= 0 when ``X >= Y`` within tolerance."""
    return min_eig_sym(symmetrize(np.asarray(X) - np.asarray(Y))) + tol * (1.0 + _norm(X, Y))


def _scalar_slack(lhs: float, rhs: float, tol: float, *terms: float) -> float:
    """Slack of ``lhs >= rhs``."""
    scale = 1.0 + sum(abs(t) for t in (lhs, rhs, *terms))
    return lhs - rhs + tol * scale


def _eq_slack(a: float, b: float, tol: float) -> float:
    return tol * (1.0 + abs(a) + abs(b)) - abs(a - b)


def _ld(V, labels=None) -> float:
    M = V.matrix if labels is None else V.block(labels)
    return log_det_psd(M)


# --------------------------------------------------------------------------
# Log-determinant strong subadditivity
# --------------------------------------------------------------------------


def _s_ssa(g, cfg, i):
    return _pd(g, cfg, _partition(g, cfg, "ABC"))


def _k_ssa(V, tol):
    terms = _ld(V), _ld(V, "C"), _ld(V, ["A", "C"]), _ld(V, ["B", "C"])
    return _scalar_slack(terms[2] + terms[3], terms[0] + terms[1], tol)


_register("ssa_logdet", source="log det V_ABC + log det V_C <= log det V_AC + log det V_BC")(
    (_s_ssa, _k_ssa)
)


def _s_logdet_ineq(g, cfg, i):
    return _quantum(g, cfg, _partition(g, cfg, "ABC"))


def _k_logdet_ineq(V, tol):
    lhs = _ld(V, ["A", "C"]) + _ld(V, ["B", "C"])
    rhs = _ld(V, "A") + _ld(V, "B")
    return _scalar_slack(lhs, rhs, tol)


_register("logdet_ineq", source="quantum CMs: log det V_AC + log det V_BC >= log det V_A + log det V_B")(
    (_s_logdet_ineq, _k_logdet_ineq)
)


# --------------------------------------------------------------------------
# Operator inequalities for Schur complements
# --------------------------------------------------------------------------


def _k_thm1(V, tol):
    small = conditional_cm(partial_trace(V, ["A", "C"]), "C").matrix
    big = conditional_cm(V, ["B", "C"]).matrix
    return _op_slack(small, big, tol)


_register("thm1", source="partial trace in the denominator: V_ABC/V_BC <= V_AC/V_C")((_s_ssa, _k_thm1))


def _s_thm2(g, cfg, i):
    part = _partition(g, cfg, "AB")
    V = _pd(g, cfg, part)
    dB = 2 * part.modes("B")
    dBp = 2 * int(g.integers(1, cfg.max_modes_per_party + 1))
    joint = _wishart(g, dB + dBp) + 0.05 * np.eye(dB + dBp)
    return V, GaussianMapSpec.from_joint(joint, dB)


def _k_thm2(inst, tol):
    V, spec = inst
    out = classical_gaussian_map(V, spec, "B", out_label="B'")
    lhs = conditional_cm(out, [lab for lab in out.labels if lab != "A"]).matrix
    rhs = conditional_cm(V, "B").matrix
    return _op_slack(lhs, rhs, tol)


_register("thm2", source="classical Gaussian maps on B increase V_AB/V_B")((_s_thm2, _k_thm2))


def _k_thm3(V, tol):
    nC = V.partition.modes("C")
    OmC = omega(nC)
    lhs = conditional_cm(partial_trace(V, ["A", "C"]), "A").matrix
    rhs = OmC.T @ inv_pd(conditional_cm(partial_trace(V, ["B", "C"]), "B").matrix) @ OmC
    return _op_slack(lhs, rhs, tol)


_register("thm3", source="monogamy: V_AC/V_A >= Ω_C^T (V_BC/V_B)^-1 Ω_C")((_s_logdet_ineq, _k_thm3))


# --------------------------------------------------------------------------
# g_± properties
# --------------------------------------------------------------------------


def _s_superadd(g, cfg, i):
    return _pd(g, cfg, _partition(g, cfg, "AB"))


def _k_superadd(V, tol):
    parts = g_minus(V.block("A")) + g_minus(V.block("B"))
    return _scalar_slack(g_minus(V), parts, tol)


_register("gminus_superadd", source="g_-(V_AB) >= g_-(V_A) + g_-(V_B)")((_s_superadd, _k_superadd))


def _s_convex(g, cfg, i):
    part = _partition(g, cfg, "AB")
    V, W = _pd(g, cfg, part), _pd(g, cfg, part)
    P = _wishart(g, part.dim) * g.uniform(0.0, 1.0)
    return V.matrix, W.matrix, float(g.uniform(0.0, 1.0)), P


def _k_convex(inst, tol):
    V, W, p, P = inst
    gv, gw = g_minus(V), g_minus(W)
    g_mix = g_minus(p * V + (1 - p) * W)
    convex = _scalar_slack(p * gv + (1 - p) * gw, g_mix, tol)
    mono = _scalar_slack(gv, g_minus(V + P), tol)
    return min(convex, mono)


_register("gminus_convex", source="g_- is convex and decreasing")((_s_convex, _k_convex))


def _s_gplus_witness(g, cfg, i):
    n = int(g.integers(1, 3 * cfg.max_modes_per_party + 1))
    a = g.uniform(1.0, 4.0)
    b = a + g.uniform(0.5, 4.0)
    c = g.uniform(0.1, 0.9)
    d = g.uniform(1.05, 2.0 - c) if 2.0 - c > 1.05 else 1.05
    return n, (a, b), (min(c, 2.0 - d), d)


def _k_gplus_witness(inst, tol):
    n, (a, b), (c, d) = inst
    gp = lambda s: g_plus(s * np.eye(2 * n))
    not_convex = gp(0.5 * (a + b)) - 0.5 * (gp(a) + gp(b))
    not_concave = 0.5 * (gp(c) + gp(d)) - gp(0.5 * (c + d))
    return min(not_convex, not_concave) - tol


_register(
    "gplus_nonconvex_witness",
    source="g_+ is neither convex nor concave (multiples of the identity)",
)((_s_gplus_witness, _k_gplus_witness))


def _s_var_expr(g, cfg, i):
    n = int(g.integers(1, 2 * cfg.max_modes_per_party + 1))
    V = _pd(g, cfg, ModePartition([("A", n)]))
    k = int(g.integers(1, n + 1))
    S = random_symplectic(n, cfg.strength, g)
    modes = np.sort(g.choice(n, size=k, replace=False))
    cols = np.ravel([[2 * m, 2 * m + 1] for m in modes])
    return V.matrix, S[:, cols]


def _k_var_expr(inst, tol):
    V, S = inst
    k = S.shape[1] // 2
    nus = symplectic_spectrum(V)
    lhs = 0.5 * log_det_psd(symmetrize(S.T @ V @ S))
    rhs = float(np.sum(np.log(nus[:k])))
    return _scalar_slack(lhs, rhs, tol)


_register(
    "var_expr_sampled",
    source="sqrt det(S^T V S) >= product of the k smallest symplectic eigenvalues",
)((_s_var_expr, _k_var_expr))


def _s_cert(g, cfg, i):
    return _pd(g, cfg, _partition(g, cfg, "A", {"A": int(g.integers(1, 2 * cfg.max_modes_per_party + 1))}))


def _k_cert(V, tol):
    Zp = variational_certificate_gplus(V)
    Zm = variational_certificate_gminus(V)
    Om = omega(V.n_modes)
    W_inv = symmetrize(Om.T @ inv_pd(V.matrix) @ Om)
    return min(
        _op_slack(Zp.matrix, V.matrix, tol),
        _op_slack(Zm.matrix, W_inv, tol),
        symplectic_spectrum(Zp)[0] - 1.0 + tol,
        symplectic_spectrum(Zm)[0] - 1.0 + tol,
        _eq_slack(0.5 * log_det_psd(Zp.matrix), g_plus(V), tol),
        _eq_slack(0.5 * log_det_psd(Zm.matrix), g_minus(V), tol),
    )


_register(
    "second_var_certificate",
    source="g_± as minima of ½ log det Z over quantum CMs Z above V (resp. Ω^T V^-1 Ω)",
)((_s_cert, _k_cert))


# --------------------------------------------------------------------------
# Steerability
# --------------------------------------------------------------------------


def _s_steer1(g, cfg, i):
    part = _partition(g, cfg, "AB")
    V, W = _quantum(g, cfg, part), _quantum(g, cfg, part)
    P = _wishart(g, part.dim) * g.uniform(0.0, 1.0)
    return V, W, float(g.uniform(0.0, 1.0)), P


def _k_steer1(inst, tol):
    V, W, p, P = inst
    gv, gw = steerability(V, "A"), steerability(W, "A")
    mix = CovarianceMatrix(p * V.matrix + (1 - p) * W.matrix, V.partition)
    up = CovarianceMatrix(V.matrix + P, V.partition)
    return min(
        _scalar_slack(p * gv + (1 - p) * gw, steerability(mix, "A"), tol),
        _scalar_slack(gv, steerability(up, "A"), tol),
    )


_register("steer_props_1", source="steerability is convex and decreasing in the CM")((_s_steer1, _k_steer1))


def _s_steer2(g, cfg, i):
    V = _quantum(g, cfg, _partition(g, cfg, ["A1", "B1"]))
    W = _quantum(g, cfg, _partition(g, cfg, ["A2", "B2"]))
    return V, W


def _k_steer2(inst, tol):
    V, W = inst
    joint = steerability(direct_sum(V, W), ["A1", "A2"], ["B1", "B2"])
    return _eq_slack(joint, steerability(V, "A1") + steerability(W, "A2"), tol)


_register("steer_props_2", source="steerability is additive under direct sums")((_s_steer2, _k_steer2))


def _s_steer3(g, cfg, i):
    part = _partition(g, cfg, "AB")
    V = _quantum(g, cfg, part)
    dA = 2 * part.modes("A")
    dAp = 2 * int(g.integers(1, cfg.max_modes_per_party + 1))
    joint = _wishart(g, dA + dAp) + 0.05 * np.eye(dA + dAp)
    return V, GaussianMapSpec.from_joint(joint, dA)


def _k_steer3(inst, tol):
    V, spec = inst
    out = classical_gaussian_map(V, spec, "A", out_label="A'")
    steering = [lab for lab in out.labels if lab != "B"]
    return _scalar_slack(steerability(V, "A"), steerability(out, steering, "B"), tol)


_register("steer_props_3", source="steerability decreases under Gaussian maps on the steering party")(
    (_s_steer3, _k_steer3)
)


def _s_steer4(g, cfg, i):
    part = _partition(g, cfg, "ABC")
    V = _quantum(g, cfg, part)
    gamma = _quantum(g, cfg, part.restrict("C")).matrix
    return V, gamma


def _k_steer4(inst, tol):
    V, gamma = inst
    after = measurement_update(V, gamma, "C")
    return _scalar_slack(steerability(V, "A", ["B", "C"]), steerability(after, "A", "B"), tol)


_register("steer_props_4", source="steerability decreases under Gaussian measurements on the steered party")(
    (_s_steer4, _k_steer4)
)


def _k_steer5(V, tol):
    bound = g_plus(conditional_cm(partial_trace(V, ["B", "C"]), "B"))
    return _scalar_slack(bound, steerability(V, "A", "C"), tol)


_register("steer_props_5", source="G(A>C) <= g_+(V_BC/V_B)")((_s_logdet_ineq, _k_steer5))


def _s_mon(g, cfg, i):
    return _quantum(g, cfg, _partition(g, cfg, ["A", "B1", "B2"]))


def _k_mon1(V, tol):
    parts = steerability(V, "A", "B1") + steerability(V, "A", "B2")
    return _scalar_slack(steerability(V, "A", ["B1", "B2"]), parts, tol)


_register("mon_steer_1", source="G(A>B1B2) >= G(A>B1) + G(A>B2)")((_s_mon, _k_mon1))


def _k_mon2(V, tol):
    strict = V.checked
    joint = steerability(V, ["B1", "B2"], "A", strict=strict)
    parts = steerability(V, "B1", "A", strict=strict) + steerability(V, "B2", "A", strict=strict)
    return _scalar_slack(joint, parts, tol)


def _s_mon2_single(g, cfg, i):
    return _quantum(g, cfg, _partition(g, cfg, ["A", "B1", "B2"], {"A": 1}))


def _s_mon2_pure(g, cfg, i):
    return _quantum(g, cfg, _partition(g, cfg, ["A", "B1", "B2"]), nu_max=1.0)


def _s_mon2_general(g, cfg, i):
    if i == 0:
        return counterexample_cm()
    return _quantum(g, cfg, _partition(g, cfg, ["A", "B1", "B2"], {"A": 2, "B1": 1, "B2": 1}))


_register("mon_steer_2_single_mode_A", source="G(B1B2>A) >= G(B1>A) + G(B2>A) when A is one mode")(
    (_s_mon2_single, _k_mon2)
)
_register("mon_steer_2_pure_global", source="G(B1B2>A) >= G(B1>A) + G(B2>A) for pure states")(
    (_s_mon2_pure, _k_mon2)
)
_register(
    "mon_steer_2_general",
    theorem_backed=False,
    source="G(B1B2>A) >= G(B1>A) + G(B2>A) can fail for mixed states with a two-mode A",
)((_s_mon2_general, _k_mon2))


# --------------------------------------------------------------------------
# Rényi-2 hierarchy and monogamy
# --------------------------------------------------------------------------


def _s_hier(g, cfg, i):
    return _quantum(g, cfg, _partition(g, cfg, "AB"))


def _k_hier(V, tol):
    half_i2 = 0.5 * mutual_info_2(V, "A")
    bound, witness = e2_upper(V, "A")
    steer = max(steerability(V, "A"), steerability(V, "B"))
    return min(
        _scalar_slack(half_i2, bound, tol),
        _scalar_slack(bound, steer, tol),
        _op_slack(V.matrix, witness.matrix, tol),
    )


_register("hierarchy", source="½ I2(A:B) >= E2 upper bound >= max steerability")((_s_hier, _k_hier))


def _s_e2_mono(g, cfg, i):
    return _quantum(g, cfg, _partition(g, cfg, "ABC"), nu_max=1.0)


def _k_e2_mono(V, tol):
    total = 0.5 * _ld(V, "A")
    ab, _ = e2_upper(partial_trace(V, ["A", "B"]), "A")
    ac, _ = e2_upper(partial_trace(V, ["A", "C"]), "A")
    return _scalar_slack(total, ab + ac, tol)


_register("e2_monogamy_pure", source="pure ABC: ½ log det V_A >= E2(A:B) + E2(A:C) upper bounds")(
    (_s_e2_mono, _k_e2_mono)
)


# --------------------------------------------------------------------------
# Measurements, block lemma, f_α
# --------------------------------------------------------------------------


def _s_det_meas(g, cfg, i):
    part = _partition(g, cfg, "BC")
    Z = _quantum(g, cfg, part)
    return Z, _pure_gamma(g, cfg, part.modes("C"))


def _k_det_meas(inst, tol):
    Z, gamma = inst
    after = measurement_update(Z, gamma, "C")
    return _scalar_slack(_ld(Z), _ld(after), tol)


_register("det_measurement", source="det (Z+γ_C)/(Z_C+γ_C) <= det Z_BC for pure γ_C")(
    (_s_det_meas, _k_det_meas)
)


def _k_purity_meas(inst, tol):
    Z, gamma = inst
    after = measurement_update(Z, gamma, "C")
    return _scalar_slack(purity(after), purity(Z), tol)


_register("purity_measurement", source="pure Gaussian measurements never decrease purity")(
    (_s_det_meas, _k_purity_meas)
)


def _s_hs(g, cfg, i):
    dA = 2 * int(g.integers(1, cfg.max_modes_per_party + 1))
    dB = 2 * int(g.integers(1, cfg.max_modes_per_party + 1))
    extra = int(g.integers(-dA - dB + 1, 3))
    return _wishart(g, dA + dB, extra), dA


def _k_hs(inst, tol):
    M, dA = inst
    A, X, B = M[:dA, :dA], M[:dA, dA:], M[dA:, dA:]
    rhs = np.linalg.norm(A) * np.linalg.norm(B)
    return _scalar_slack(rhs, np.linalg.norm(X) ** 2, tol)


_register("hs_block_lemma", source="‖X‖_2² <= ‖A‖_2 ‖B‖_2 for PSD ((A, X), (X^T, B))")((_s_hs, _k_hs))


FALPHA_CONVEX = (2.0, 2.5, 3.0)
FALPHA_NONCONVEX = (1.0, 1.5)


def _s_falpha(g, cfg, i):
    return float(10.0 - g.uniform(0.0, 10.0))


def _k_falpha(x, tol):
    convex = min(f + tol * (1.0 + abs(f)) for f in (f_alpha_dd(x, a) for a in FALPHA_CONVEX))
    nonconvex = min(-f_alpha_dd(0.05, a) for a in FALPHA_NONCONVEX)
    return min(convex, nonconvex)


_register("falpha_convexity", source="f_α is convex iff α >= 2")((_s_falpha, _k_falpha))


# --------------------------------------------------------------------------
# Purification and Williamson
# --------------------------------------------------------------------------


def _s_purif(g, cfg, i):
    part = _partition(g, cfg, "ABC")
    return _quantum(g, cfg, part, nu_max=1.0), _quantum(g, cfg, _partition(g, cfg, "AB"))


def _k_purif(inst, tol):
    pure, mixed = inst
    nA = pure.partition.modes("A")
    OmA = omega(nA)
    lhs = conditional_cm(partial_trace(pure, ["A", "B"]), "B").matrix
    rhs = OmA.T @ inv_pd(conditional_cm(partial_trace(pure, ["A", "C"]), "C").matrix) @ OmA
    scale = 1.0 + _norm(lhs, rhs) * np.linalg.cond(pure.matrix)
    ident = tol * scale - float(np.max(np.abs(lhs - rhs)))

    P = purify(mixed)
    marg = partial_trace(P, list(mixed.labels)).matrix
    pscale = 1.0 + float(np.max(np.abs(P.matrix)))
    recon = tol * pscale - float(np.max(np.abs(marg - mixed.matrix)))
    nus = symplectic_spectrum(P)
    pure_err = tol * pscale - float(np.max(np.abs(nus - 1.0)))
    return min(ident, recon, pure_err)


_register("purification_identity", source="pure ABC: V_AB/V_B = Ω_A^T (V_AC/V_C)^-1 Ω_A")(
    (_s_purif, _k_purif)
)


def _s_wil(g, cfg, i):
    n = int(g.integers(1, 7))
    part = ModePartition([("A", n)])
    V = _quantum(g, cfg, part)
    return V.matrix * g.uniform(0.3, 2.0)


def _k_wil(V, tol):
    wil = williamson(V)
    n = V.shape[0] // 2
    Om = omega(n)
    recon = tol * (1.0 + np.max(np.abs(V))) - np.max(np.abs(wil.reconstruct() - V))
    sympl = tol * (1.0 + np.max(np.abs(wil.S)) ** 2) - np.max(np.abs(wil.S @ Om @ wil.S.T - Om))
    spec = tol * (1.0 + np.max(wil.nus)) - np.max(np.abs(wil.nus - symplectic_spectrum(V)))
    return float(min(recon, sympl, spec))


_register("williamson_roundtrip", source="V = S diag(ν) S^T with S symplectic")((_s_wil, _k_wil))


# --------------------------------------------------------------------------
# Counterexample to steering monogamy
# --------------------------------------------------------------------------

# Entries as given, rounded to one decimal. A's four rows are ordered (x1, x2, p1, p2);
# B1 and B2 are single modes (x, p).
COUNTEREXAMPLE_ENTRIES = np.array(
    [
        [1.2, -0.3, 0.4, -2.7, 1.8, -1.9, 0.4, -0.1],
        [-0.3, 0.9, -1.2, 0.4, -1.2, 0.5, -0.4, 0.1],
        [0.4, -1.2, 4.5, 1.6, -1.4, 1.8, -0.1, -0.3],
        [-2.7, 0.4, 1.6, 12.0, -9.5, 10.1, -1.4, -0.3],
        [1.8, -1.2, -1.4, -9.5, 11.9, -11.5, 1.6, 0.8],
        [-1.9, 0.5, 1.8, 10.1, -11.5, 11.9, -1.0, -1.4],
        [0.4, -0.4, -0.1, -1.4, 1.6, -1.0, 2.4, -2.0],
        [-0.1, 0.1, -0.3, -0.3, 0.8, -1.4, -2.0, 2.8],
    ]
)
COUNTEREXAMPLE_PERMUTATION = (0, 2, 1, 3, 4, 5, 6, 7)
COUNTEREXAMPLE_PARTITION = ModePartition([("A", 2), ("B1", 1), ("B2", 1)])
REFERENCE_NU_MIN = 1.01359
REFERENCE_GAP = -0.816863


def counterexample_matrix() -> np.ndarray:
    """The counterexample matrix with A's quadratures reordered to (x1, p1, x2, p2)."""
    p = list(COUNTEREXAMPLE_PERMUTATION)
    return COUNTEREXAMPLE_ENTRIES[np.ix_(p, p)].copy()


def counterexample_cm() -> CovarianceMatrix:
    """The counterexample as an (unchecked) CM.

    The entries are rounded to one decimal and the resulting matrix
    has a small negative eigenvalue, so it cannot pass PSD validation.
    """
    return CovarianceMatrix.unchecked(counterexample_matrix(), COUNTEREXAMPLE_PARTITION)


def bundled_counterexample_path():
    return resources.files("schurcov") / "data" / "counterexample.json"


@dataclass(frozen=True)
class CounterexampleRecord:
    nu_min: float
    gap: float
    g_joint: float
    g_b1: float
    g_b2: float
    min_eigenvalue: float = field(default=0.0)

    def as_dict(self):
        return asdict(self)


def reproduce_counterexample() -> CounterexampleRecord:
    """Minimum symplectic eigenvalue and steering-monogamy gap of the counterexample."""
    V = counterexample_cm()
    nu_min = float(symplectic_spectrum(V, strict=False)[0])
    g_joint = steerability(V, ["B1", "B2"], "A", strict=False)
    g_b1 = steerability(V, "B1", "A", strict=False)
    g_b2 = steerability(V, "B2", "A", strict=False)
    return CounterexampleRecord(
        nu_min=nu_min,
        gap=g_joint - g_b1 - g_b2,
        g_joint=g_joint,
        g_b1=g_b1,
        g_b2=g_b2,
        min_eigenvalue=float(np.linalg.eigvalsh(V.matrix)[0]),
    )


THEOREM_SUITE = (
    "ssa_logdet",
    "logdet_ineq",
    "thm1",
    "thm2",
    "thm3",
    "gminus_superadd",
    "gminus_convex",
    "steer_props_1",
    "steer_props_2",
    "steer_props_3",
    "steer_props_4",
    "steer_props_5",
    "mon_steer_1",
    "mon_steer_2_single_mode_A",
    "mon_steer_2_pure_global",
    "hierarchy",
    "e2_monogamy_pure",
    "det_measurement",
    "hs_block_lemma",
    "second_var_certificate",
    "var_expr_sampled",
    "purification_identity",
    "williamson_roundtrip",
    "purity_measurement",
)
