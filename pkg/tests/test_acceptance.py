"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]`` / ``[FAIL]`` line; the lines are also
collected and repeated in pytest's terminal summary. Run standalone with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import time

import numpy as np

from schurcov import (
    E2SearchConfig,
    ModePartition,
    SeededRng,
    conditional_cm,
    e2_estimate,
    e2_upper,
    f_alpha,
    f_alpha_dd,
    heterodyne,
    log_negativity,
    measurement_update,
    mutual_info_2,
    partial_trace,
    random_quantum_cm,
    steerability,
    symplectic_spectrum,
    tmsv,
)
from schurcov.linalg import log_det_psd
from schurcov.verify import THEOREM_SUITE, CheckConfig, counterexample_cm, run_check

REFERENCE_NU_MIN, NU_TOL = 1.01359, 1e-4
REFERENCE_GAP, GAP_TOL = -0.816863, 1e-5
FAST_RUNTIME = 0.1
SUITE_SEEDS = (42, 7, 2024)
SUITE_TRIALS = 200
SUITE_TOL = 1e-8
SUITE_RUNTIME = 60.0
SATURATION_TOL = 1e-6
CONVEX_FLOOR = -1e-12
NONCONVEX_CEIL = -1e-6
TMSV_TOL = 1e-8
E2_TOL = 1e-6
E2_IMPROVEMENT = 1e-3

RESULTS: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _random_parts(g, labels, max_modes=2):
    return ModePartition([(lab, int(g.integers(1, max_modes + 1))) for lab in labels])


def test_criterion_1_counterexample_spectrum():
    V = counterexample_cm()
    t0 = time.perf_counter()
    nu_min = symplectic_spectrum(V, strict=False)[0]
    dt = time.perf_counter() - t0
    ok = abs(nu_min - REFERENCE_NU_MIN) <= NU_TOL and dt < FAST_RUNTIME
    report(1, ok, f"nu_min = {nu_min:.8f} (reference {REFERENCE_NU_MIN}), {dt * 1e3:.2f} ms")


def test_criterion_2_counterexample_gap():
    V = counterexample_cm()
    t0 = time.perf_counter()
    joint = steerability(V, ["B1", "B2"], "A", strict=False)
    gap = joint - steerability(V, "B1", "A", strict=False) - steerability(V, "B2", "A", strict=False)
    dt = time.perf_counter() - t0
    ok = abs(gap - REFERENCE_GAP) <= GAP_TOL and dt < FAST_RUNTIME
    report(2, ok, f"gap = {gap:.8f} (reference {REFERENCE_GAP}), {dt * 1e3:.2f} ms")


def test_criterion_3_theorem_suites():
    t0 = time.perf_counter()
    bad = []
    for seed in SUITE_SEEDS:
        cfg = CheckConfig(trials=SUITE_TRIALS, seed=seed, max_modes_per_party=2, tol=SUITE_TOL)
        for name in THEOREM_SUITE:
            rep = run_check(name, cfg)
            if rep.failures:
                bad.append(f"{name}@seed{seed}: {rep.failures} (stream {rep.worst_seed_stream})")
    dt = time.perf_counter() - t0
    ok = not bad and dt < SUITE_RUNTIME
    detail = f"{len(THEOREM_SUITE)} checks x {len(SUITE_SEEDS)} seeds x {SUITE_TRIALS} trials, {dt:.1f} s"
    report(3, ok, detail + ("" if not bad else "; failures: " + ", ".join(bad)))


def test_criterion_4_pure_state_saturation():
    g = SeededRng(4).generator()
    worst = 0.0
    for _ in range(100):
        V = random_quantum_cm(_random_parts(g, "AB"), nu_max=1.0, rng=g)
        half_i2 = 0.5 * mutual_info_2(V, "A")
        bound, _ = e2_upper(V, "A")
        steer = steerability(V, "A")
        worst = max(worst, abs(half_i2 - bound), abs(bound - steer))
    report(4, worst <= SATURATION_TOL, f"max deviation {worst:.2e} over 100 pure bipartite CMs")


def test_criterion_5_logdet_saturation():
    g = SeededRng(5).generator()
    worst = 0.0
    for _ in range(100):
        V = random_quantum_cm(_random_parts(g, "ABC"), nu_max=1.0, rng=g)
        ld = lambda labs, V=V: log_det_psd(partial_trace(V, labs).matrix)
        worst = max(worst, abs(ld(["A", "C"]) + ld(["B", "C"]) - ld("A") - ld("B")))
    report(5, worst <= SATURATION_TOL, f"max |residual| {worst:.2e} over 100 pure tripartite CMs")


def test_criterion_6_falpha_dichotomy():
    x = np.linspace(10.0 / 200, 10.0, 200)
    convex_min = min(float(np.min(f_alpha_dd(x, a))) for a in (2.0, 2.5, 3.0))
    nonconvex_min = float(np.min(f_alpha_dd(x, 1.5)))
    h = x[1] - x[0]
    second_diff = f_alpha(x - h, 1.0) - 2 * f_alpha(x, 1.0) + f_alpha(x + h, 1.0)
    ok = convex_min >= CONVEX_FLOOR and nonconvex_min < NONCONVEX_CEIL and np.all(second_diff < 0)
    report(
        6,
        ok,
        f"min f'' (alpha>=2) = {convex_min:.2e}, min f'' (alpha=1.5) = {nonconvex_min:.3f}, "
        f"max second difference (alpha=1) = {second_diff.max():.2e}",
    )


def test_criterion_7_tmsv_fixtures():
    worst = 0.0
    for r in (0.25, 0.5, 1.0):
        V = tmsv(r)
        lc = np.log(np.cosh(2 * r))
        cond = measurement_update(V, heterodyne(1), "B").matrix
        errs = (
            abs(steerability(V, "A") - lc),
            abs(log_negativity(V, "B") - 2 * r),
            abs(mutual_info_2(V, "A") - 2 * lc),
            float(np.max(np.abs(cond - np.eye(2)))),
            float(np.max(np.abs(conditional_cm(V, "A").matrix - np.eye(2) / np.cosh(2 * r)))),
        )
        worst = max(worst, *errs)
    report(7, worst <= TMSV_TOL, f"max error {worst:.2e} for r in (0.25, 0.5, 1.0)")


def test_criterion_8_e2_estimate():
    below = above = 0
    improved, best_gain = 0, 0.0
    for i in range(50):
        V = random_quantum_cm("A:1,B:1", nu_max=3.0, strength=0.7, rng=SeededRng(8, i))
        est = e2_estimate(V, "A", E2SearchConfig(rng=SeededRng(80, i)))
        upper, _ = e2_upper(V, "A")
        steer = max(steerability(V, "A"), steerability(V, "B"))
        below += est < steer - E2_TOL
        above += est > upper + E2_TOL
        improved += est < upper - E2_IMPROVEMENT
        best_gain = max(best_gain, upper - est)
    ok = below == 0 and above == 0 and improved >= 1
    report(
        8,
        ok,
        f"bracket violations {below + above}/50, improved on the witness bound in {improved}/50 "
        f"(largest gain {best_gain:.3f})",
    )


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted((k, v) for k, v in dict(globals()).items() if k.startswith("test_criterion")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
