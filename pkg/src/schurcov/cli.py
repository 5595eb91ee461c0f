"""Command-line front end.

Usage::

    schurcov spectrum FILE
    schurcov measure FILE MEASURE [--cut A] [--steering A] [--steered B] [--alpha 2]
    schurcov verify CHECK|all|counterexample [--trials N] [--seed S] [--csv OUT]
    schurcov gen SPEC OUT [--nu-max 3] [--strength 0.7] [--seed S]

Data goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 a
theorem-backed check failed, 2 usage or parse error, 3 not bona fide.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NotBonaFide, NotPSD, SchurCovError, UnknownCheck
from .linalg import TOL_SYM
from .measures import (
    E2SearchConfig,
    e2_estimate,
    e2_upper,
    g_minus,
    g_plus,
    log_negativity,
    mutual_info_2,
    purity,
    renyi_entropy,
    steerability,
)
from .symplectic import (
    CovarianceMatrix,
    ModePartition,
    SeededRng,
    is_bona_fide,
    random_quantum_cm,
    symplectic_spectrum,
)
from .verify import (
    REGISTRY,
    CheckConfig,
    reproduce_counterexample,
    run_check,
    write_csv,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_NOT_BONA_FIDE = 0, 1, 2, 3
DEFAULT_SEED = 42
SEED_ENV = "SCHUR_SEED"


class CmFileError(SchurCovError):
    """Malformed CM file; the message names the offending line or field."""


# --------------------------------------------------------------------------
# CM files
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CmFile:
    """JSON document ``{"order": [...], "modes": {...}, "matrix": [[...], ...]}``."""

    order: tuple[str, ...]
    modes: dict[str, int]
    matrix: np.ndarray

    @property
    def partition(self) -> ModePartition:
        return ModePartition([(label, self.modes[label]) for label in self.order])

    @classmethod
    def from_cm(cls, V: CovarianceMatrix) -> CmFile:
        return cls(V.labels, dict(V.partition.parties), np.array(V.matrix))

    def to_cm(self, *, check_psd: bool = True) -> CovarianceMatrix:
        if check_psd:
            return CovarianceMatrix(self.matrix, self.partition)
        return CovarianceMatrix.unchecked(self.matrix, self.partition)

    def dumps(self) -> str:
        rows = ",\n".join("    [" + ", ".join(_fmt(x) for x in row) + "]" for row in self.matrix)
        modes = ", ".join(f"{json.dumps(k)}: {self.modes[k]}" for k in self.order)
        return (
            "{\n"
            f'  "order": [{", ".join(json.dumps(k) for k in self.order)}],\n'
            f'  "modes": {{{modes}}},\n'
            f'  "matrix": [\n{rows}\n  ]\n'
            "}\n"
        )

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def loads(cls, text: str) -> CmFile:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CmFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise CmFileError("top level must be a JSON object")
        for key in ("order", "modes", "matrix"):
            if key not in doc:
                raise CmFileError(f"field {key!r}: missing")
        order = doc["order"]
        if not isinstance(order, list) or not all(isinstance(k, str) for k in order):
            raise CmFileError("field 'order': expected a list of party labels")
        modes = doc["modes"]
        if not isinstance(modes, dict):
            raise CmFileError("field 'modes': expected an object mapping label to mode count")
        if set(modes) != set(order) or len(set(order)) != len(order):
            raise CmFileError(f"field 'modes': labels {sorted(modes)} do not match 'order' {order}")
        for k, m in modes.items():
            if isinstance(m, bool) or not isinstance(m, int) or m < 1:
                raise CmFileError(f"field 'modes.{k}': expected a positive integer, got {m!r}")
        dim = 2 * sum(modes.values())
        raw = doc["matrix"]
        if not isinstance(raw, list) or len(raw) != dim:
            n = len(raw) if isinstance(raw, list) else "no"
            raise CmFileError(f"field 'matrix': expected {dim} rows, got {n}")
        M = np.empty((dim, dim))
        for i, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != dim:
                raise CmFileError(f"field 'matrix[{i}]': expected {dim} entries")
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, (int, float)) or not np.isfinite(x):
                    raise CmFileError(f"field 'matrix[{i}][{j}]': expected a finite number, got {x!r}")
                M[i, j] = x
        scale = 1.0 + np.max(np.abs(M))
        asym = np.abs(M - M.T)
        if np.max(asym) > TOL_SYM * scale:
            i, j = np.unravel_index(np.argmax(asym), asym.shape)
            raise CmFileError(f"field 'matrix[{i}][{j}]': matrix is not symmetric")
        return cls(tuple(order), {k: modes[k] for k in order}, M)

    @classmethod
    def load(cls, path) -> CmFile:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise CmFileError(f"cannot read {path}: {exc.strerror}") from None
        return cls.loads(text)


def _fmt(x: float) -> str:
    s = format(float(x), ".17g")
    # keep the sign of zero through a JSON round trip
    return "-0.0" if s == "-0" else s


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def _err(msg: str) -> None:
    print(f"schurcov: {msg}", file=sys.stderr)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise CmFileError(f"{SEED_ENV}={raw!r} is not an integer") from None


def cmd_spectrum(args) -> int:
    f = CmFile.load(args.path)
    V = f.to_cm(check_psd=False)
    ok, margin = is_bona_fide(V)
    ok = margin >= -args.tol if args.tol is not None else ok
    try:
        nus = symplectic_spectrum(V)
    except SchurCovError:
        nus = symplectic_spectrum(V, strict=False)
        _err("matrix is not positive definite; printing moduli of the eigenvalues of ΩV")
    for nu in nus:
        print(format(nu, "#.6g"))
    print(f"bona_fide {'yes' if ok else 'no'} margin {margin:.6g}")
    return EXIT_OK if ok else EXIT_NOT_BONA_FIDE


MEASURES = (
    "g_plus",
    "g_minus",
    "steerability",
    "log_negativity",
    "renyi_entropy",
    "purity",
    "mutual_info_2",
    "e2_upper",
    "e2_estimate",
)
_NEEDS_CUT = {"log_negativity", "mutual_info_2", "e2_upper", "e2_estimate"}


def _value(V: CovarianceMatrix, args) -> float:
    m = args.measure
    if m in _NEEDS_CUT and not args.cut:
        raise argparse.ArgumentTypeError(f"{m} needs --cut")
    if m == "steerability" and not args.steering:
        raise argparse.ArgumentTypeError("steerability needs --steering")
    if m == "renyi_entropy" and args.alpha is None:
        raise argparse.ArgumentTypeError("renyi_entropy needs --alpha")
    if m not in ("g_plus", "g_minus"):
        ok, margin = is_bona_fide(V)
        if not ok:
            raise NotBonaFide(f"{m} needs a quantum CM (ν_min - 1 = {margin:.3g})")
    if m == "g_plus":
        return g_plus(V)
    if m == "g_minus":
        return g_minus(V)
    if m == "steerability":
        return steerability(V, args.steering, args.steered)
    if m == "log_negativity":
        return log_negativity(V, args.cut)
    if m == "renyi_entropy":
        return renyi_entropy(V, args.alpha)
    if m == "purity":
        return purity(V)
    if m == "mutual_info_2":
        return mutual_info_2(V, args.cut)
    if m == "e2_upper":
        return e2_upper(V, args.cut)[0]
    return e2_estimate(V, args.cut, E2SearchConfig(rng=SeededRng(_default_seed())))


def _split(labels: str | None) -> list[str] | None:
    return None if labels is None else [s.strip() for s in labels.split(",") if s.strip()]


def cmd_measure(args) -> int:
    f = CmFile.load(args.path)
    try:
        V = f.to_cm()
    except NotPSD as exc:
        _err(f"not bona fide: {exc}")
        return EXIT_NOT_BONA_FIDE
    args.cut = _split(args.cut)
    args.steering = _split(args.steering)
    args.steered = _split(args.steered)
    try:
        x = _value(V, args)
    except argparse.ArgumentTypeError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except NotBonaFide as exc:
        _err(str(exc))
        return EXIT_NOT_BONA_FIDE
    x = 0.0 if x == 0 else x
    print(format(x, ".9f"))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.check == "counterexample":
        rec = reproduce_counterexample()
        print(f"nu_min {rec.nu_min:.6g}")
        print(f"gap {rec.gap:.6g}")
        print(f"g_joint {rec.g_joint:.10g}")
        print(f"g_b1 {rec.g_b1:.10g}")
        print(f"g_b2 {rec.g_b2:.10g}")
        return EXIT_OK
    names = list(REGISTRY) if args.check == "all" else [args.check]
    for name in names:
        if name not in REGISTRY:
            raise UnknownCheck(f"unknown check {name!r}; try one of: {', '.join(REGISTRY)}")
    seed = args.seed if args.seed is not None else _default_seed()
    kw = {"trials": args.trials, "seed": seed}
    if args.tol is not None:
        kw["tol"] = args.tol
    cfg = CheckConfig(**kw)
    reports, failed = [], False
    print(f"{'name':28s} {'trials':>6s} {'failures':>8s} {'worst_margin':>13s} {'stream':>6s} {'elapsed_s':>9s}  status")
    for name in names:
        rep = run_check(name, cfg)
        reports.append(rep)
        if not rep.theorem_backed:
            status = "violations allowed"
        else:
            status = "pass" if rep.passed else "FAIL"
            failed |= not rep.passed
        print(
            f"{rep.name:28s} {rep.trials:6d} {rep.failures:8d} {rep.worst_margin:13.4e}"
            f" {rep.worst_seed_stream:6d} {rep.elapsed:9.3f}  {status}"
        )
        if rep.theorem_backed and not rep.passed:
            _err(f"{name} failed; replay with seed={seed} stream={rep.worst_seed_stream}")
    if args.csv:
        write_csv(reports, args.csv)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_gen(args) -> int:
    part = ModePartition.from_spec(args.spec)
    seed = args.seed if args.seed is not None else _default_seed()
    V = random_quantum_cm(part, args.nu_max, args.strength, SeededRng(seed))
    CmFile.from_cm(V).save(args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _err(message)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="schurcov", description="Schur-complement tools for Gaussian covariance matrices.")
    p.add_argument("--tol", type=float, default=None, help="override the check / bona fide tolerance")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("spectrum", help="symplectic eigenvalues and bona fide margin")
    s.add_argument("path")
    s.set_defaults(func=cmd_spectrum)

    m = sub.add_parser("measure", help="compute one correlation measure")
    m.add_argument("path")
    m.add_argument("measure", choices=MEASURES)
    m.add_argument("--cut", help="comma-separated labels of side A")
    m.add_argument("--steering", help="comma-separated steering labels")
    m.add_argument("--steered", help="comma-separated steered labels (default: all others)")
    m.add_argument("--alpha", type=float)
    m.set_defaults(func=cmd_measure)

    v = sub.add_parser("verify", help="run randomized checks")
    v.add_argument("check", help="check id, 'all' or 'counterexample'")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or {DEFAULT_SEED}")
    v.add_argument("--csv", help="also write the reports as CSV")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a random quantum CM file")
    g.add_argument("spec", help='partition such as "A:2,B1:1,B2:1"')
    g.add_argument("out")
    g.add_argument("--nu-max", type=float, default=3.0)
    g.add_argument("--strength", type=float, default=0.7)
    g.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or {DEFAULT_SEED}")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchurCovError as exc:
        # bad files, labels, specs and parameters are all usage errors here
        _err(str(exc))
        return EXIT_USAGE
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
