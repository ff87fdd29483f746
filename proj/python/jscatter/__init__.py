"""J-matrix scattering off a regularised inverse-square potential."""

from ._jscatter import (
    Derived,
    Error,
    Matching,
    Regularization,
    SMatrix,
    __version__,
    derive,
    energy_from_sigma,
    matching,
    numerov_phase,
    psi_regular,
    run,
    s_matrix,
    specfun,
)

__all__ = [
    "Derived",
    "Error",
    "Matching",
    "Regularization",
    "SMatrix",
    "__version__",
    "derive",
    "energy_from_sigma",
    "matching",
    "numerov_phase",
    "psi_regular",
    "run",
    "s_matrix",
    "specfun",
]
