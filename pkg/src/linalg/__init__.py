"""Dense symmetric storage and the shifted solve every Newton-type step reduces to."""

from .dense import (  # noqa: F401
    DenseSymmetricMatrix,
    FactorizationKind,
    ShiftedSolveReport,
    shifted_solve,
    spectral_norm_estimate,
)
