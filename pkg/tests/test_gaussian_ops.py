import numpy as np
import pytest
from conftest import random_pd
from numpy.testing import assert_allclose

from schurcov import (
    CovarianceMatrix,
    GaussianMapSpec,
    ModePartition,
    SeededRng,
    classical_gaussian_map,
    conditional_cm,
    direct_sum,
    heterodyne,
    homodyne_x,
    measurement_update,
    omega,
    partial_trace,
    partial_transpose,
    random_quantum_cm,
    symplectic_spectrum,
    tmsv,
    vacuum,
)
from schurcov.errors import DimensionMismatch, LabelClash, NotPD, UnknownParty
from schurcov.verify import COUNTEREXAMPLE_ENTRIES, counterexample_cm


def product(VA, VB):
    return direct_sum(CovarianceMatrix.single(VA, "A"), CovarianceMatrix.single(VB, "B"))


# --- partial trace / transpose / direct sum -----------------------------------------


def test_partial_trace_keep_all(mixed_tripartite):
    assert partial_trace(mixed_tripartite, ["C", "A", "B"]) == mixed_tripartite


def test_partial_trace_product():
    VA = np.diag([2.0, 3.0])
    V = product(VA, 1.5 * np.eye(2))
    out = partial_trace(V, "A")
    assert_allclose(out.matrix, VA)
    assert out.labels == ("A",)


def test_partial_trace_counterexample_submatrix():
    out = partial_trace(counterexample_cm(), ["B1", "A"])
    # A's rows are given as (x1, x2, p1, p2); partition order puts A before B1
    rows = [0, 2, 1, 3, 4, 5]
    assert out.labels == ("A", "B1")
    assert_allclose(out.matrix, COUNTEREXAMPLE_ENTRIES[np.ix_(rows, rows)], rtol=0, atol=0)
    assert not out.checked


def test_partial_transpose_basic(mixed_tripartite):
    V = product(np.diag([2.0, 3.0]), 1.5 * np.eye(2))
    assert partial_transpose(V, "A") == V
    twice = partial_transpose(partial_transpose(mixed_tripartite, ["A", "C"]), ["A", "C"])
    assert twice == mixed_tripartite


def test_partial_transpose_tmsv():
    r = 0.4
    V = tmsv(r)
    T = partial_transpose(V, "B")
    Z = np.diag([1.0, -1.0])
    assert_allclose(T.block("A", "B"), np.sinh(2 * r) * np.eye(2), atol=1e-14)
    assert_allclose(V.block("A", "B"), np.sinh(2 * r) * Z, atol=1e-14)
    assert_allclose(symplectic_spectrum(T), [np.exp(-2 * r), np.exp(2 * r)], rtol=1e-12)


def test_direct_sum():
    V = direct_sum(vacuum("A:1"), vacuum("B:2"))
    assert_allclose(V.matrix, np.eye(6))
    X = random_quantum_cm("A:1", rng=SeededRng(1))
    Y = random_quantum_cm("B:2", rng=SeededRng(2))
    merged = np.sort(np.concatenate([symplectic_spectrum(X), symplectic_spectrum(Y)]))
    assert_allclose(symplectic_spectrum(direct_sum(X, Y)), merged, rtol=1e-10)
    with pytest.raises(LabelClash):
        direct_sum(X, X)


# --- conditional CMs ---------------------------------------------------------------------


def test_conditional_uncorrelated():
    VA = np.diag([2.0, 3.0])
    V = product(VA, 1.5 * np.eye(2))
    assert_allclose(conditional_cm(V, "B").matrix, VA)


def test_conditional_tmsv(tmsv_125):
    assert_allclose(conditional_cm(tmsv_125, "A").matrix, np.eye(2) / 1.25, atol=1e-14)


def test_conditional_pure_is_omega_inverse_of_marginal():
    V = random_quantum_cm("A:2,B:1", nu_max=1.0, rng=SeededRng(9))
    Om = omega(2)
    lhs = conditional_cm(V, "B").matrix
    rhs = Om.T @ np.linalg.inv(V.block("A")) @ Om
    assert_allclose(lhs, rhs, atol=1e-9)


def test_conditional_on_everything_fails(tmsv_125):
    with pytest.raises(UnknownParty):
        conditional_cm(tmsv_125, ["A", "B"])


# --- classical Gaussian maps ----------------------------------------------------------


def test_map_spec_validation():
    with pytest.raises(DimensionMismatch):
        GaussianMapSpec(np.eye(2), np.eye(2), np.zeros((2, 4)))
    with pytest.raises(NotPD):
        GaussianMapSpec(np.eye(2), np.eye(2), 2 * np.eye(2))


def test_map_decoupling(mixed_tripartite):
    gBp = np.diag([2.0, 0.5])
    spec = GaussianMapSpec(np.eye(4), gBp, np.zeros((4, 2)))
    out = classical_gaussian_map(mixed_tripartite, spec, "B", out_label="Bp")
    assert out.labels == ("A", "Bp", "C")
    assert_allclose(out.block("Bp"), gBp, atol=1e-14)
    assert_allclose(out.block("Bp", ["A", "C"]), 0, atol=1e-14)
    # the map is non-deterministic: with δ = 0 the rest is conditioned exactly
    # as by a measurement with seed γ_B
    conditioned = measurement_update(mixed_tripartite, np.eye(4), "B")
    assert_allclose(out.block(["A", "C"]), conditioned.matrix, atol=1e-12)


def test_map_approximates_identity_channel(mixed_tripartite):
    c = 1e3
    s = np.sqrt(c * c - 1)
    dB = 4
    spec = GaussianMapSpec(c * np.eye(dB), c * np.eye(dB), -s * np.eye(dB))
    out = classical_gaussian_map(mixed_tripartite, spec, "B")
    assert out.labels == mixed_tripartite.labels
    V = mixed_tripartite.matrix
    err = np.max(np.abs(out.matrix - V))
    assert err <= 10 * (1 + np.max(np.abs(V))) ** 2 / c


def test_map_blockwise_formula_matches_joint(rng):
    for i in range(20):
        V = random_quantum_cm("A:2,B:1", rng=SeededRng(3, i))
        joint = random_pd(2 + 4, rng)
        spec = GaussianMapSpec.from_joint(joint, 2)
        out = classical_gaussian_map(V, spec, "B", out_label="B'")
        X = V.block("A", "B")
        K = np.linalg.inv(spec.gamma_B + V.block("B"))
        assert_allclose(out.block("A"), V.block("A") - X @ K @ X.T, atol=1e-8)
        assert_allclose(out.block("A", "B'"), -X @ K @ spec.delta, atol=1e-8)
        assert_allclose(out.block("B'"), spec.gamma_Bp - spec.delta.T @ K @ spec.delta, atol=1e-8)


def test_map_output_placement_and_clash(mixed_tripartite):
    spec = GaussianMapSpec.from_joint(np.eye(6), 4)
    out = classical_gaussian_map(mixed_tripartite, spec, "B")
    assert out.partition == ModePartition.from_spec("A:1,B':1,C:1")
    with pytest.raises(LabelClash):
        classical_gaussian_map(mixed_tripartite, spec, "B", out_label="C")
    with pytest.raises(DimensionMismatch):
        classical_gaussian_map(mixed_tripartite, spec, "A")


# --- measurements -----------------------------------------------------------------------


def test_measure_uncorrelated_party():
    VA = np.diag([2.0, 3.0])
    V = product(VA, 1.5 * np.eye(2))
    assert_allclose(measurement_update(V, heterodyne(1), "B").matrix, VA)


@pytest.mark.parametrize("c", [1.25, 3.0])
def test_heterodyne_on_tmsv_gives_vacuum(c):
    V = tmsv(np.arccosh(c) / 2)
    assert_allclose(measurement_update(V, heterodyne(1), "B").matrix, np.eye(2), atol=1e-12)


def test_homodyne_limit_on_tmsv():
    c = 1.25
    V = tmsv(np.arccosh(c) / 2)
    out = measurement_update(V, homodyne_x(1), "B").matrix
    assert_allclose(out, np.diag([1 / c, c]), atol=1e-3)


def test_measure_dimension_check(tmsv_125):
    with pytest.raises(DimensionMismatch):
        measurement_update(tmsv_125, np.eye(4), "B")
