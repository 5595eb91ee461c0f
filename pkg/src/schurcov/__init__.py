"""Schur-complement tools for Gaussian covariance matrices.

Quadratures are ordered mode by mode, ``(x1, p1, x2, p2, ...)``, with
symplectic form ``Ω = ⊕ ((0, 1), (-1, 0))``.
"""

from .errors import (
    BadAlpha,
    BadIndexSet,
    DimensionMismatch,
    LabelClash,
    NonFinite,
    NotBonaFide,
    NotPD,
    NotPSD,
    NotSymmetric,
    NumericalFailure,
    SchurCovError,
    UnknownCheck,
    UnknownParty,
)
from .gaussian_ops import (
    GaussianMapSpec,
    classical_gaussian_map,
    conditional_cm,
    direct_sum,
    heterodyne,
    homodyne_x,
    measurement_update,
    partial_trace,
    partial_transpose,
)
from .linalg import geometric_mean, log_det_psd, schur_complement
from .measures import (
    E2SearchConfig,
    e2_estimate,
    e2_upper,
    f_alpha,
    f_alpha_dd,
    g_minus,
    g_plus,
    log_negativity,
    mutual_info_2,
    purity,
    renyi_entropy,
    steerability,
    variational_certificate_gminus,
    variational_certificate_gplus,
)
from .symplectic import (
    CovarianceMatrix,
    ModePartition,
    SeededRng,
    WilliamsonResult,
    is_bona_fide,
    omega,
    purify,
    random_quantum_cm,
    random_symplectic,
    symplectic_spectrum,
    tmsv,
    vacuum,
    williamson,
)

__version__ = "0.1.0"

__all__ = [
    "BadAlpha",
    "BadIndexSet",
    "CovarianceMatrix",
    "DimensionMismatch",
    "E2SearchConfig",
    "GaussianMapSpec",
    "LabelClash",
    "ModePartition",
    "NonFinite",
    "NotBonaFide",
    "NotPD",
    "NotPSD",
    "NotSymmetric",
    "NumericalFailure",
    "SchurCovError",
    "SeededRng",
    "UnknownCheck",
    "UnknownParty",
    "WilliamsonResult",
    "classical_gaussian_map",
    "conditional_cm",
    "direct_sum",
    "e2_estimate",
    "e2_upper",
    "f_alpha",
    "f_alpha_dd",
    "g_minus",
    "g_plus",
    "geometric_mean",
    "heterodyne",
    "homodyne_x",
    "is_bona_fide",
    "log_det_psd",
    "log_negativity",
    "measurement_update",
    "mutual_info_2",
    "omega",
    "partial_trace",
    "partial_transpose",
    "purify",
    "purity",
    "random_quantum_cm",
    "random_symplectic",
    "renyi_entropy",
    "schur_complement",
    "steerability",
    "symplectic_spectrum",
    "tmsv",
    "vacuum",
    "variational_certificate_gminus",
    "variational_certificate_gplus",
    "williamson",
]
