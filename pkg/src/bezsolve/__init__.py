"""Solver for square polynomial systems built on Bezout matrices.

Pipeline: construct the Bezout matrices B(1), B(x_1), ..., B(x_n) of the
system, reduce them until B(1) is invertible, form the companion
(multiplication) matrices X_j = B(x_j) B(1)^{-1}, then read the roots off
their joint eigenvectors.  All matrix work up to the eigensolve is exact
rational arithmetic.
"""

from .bezout import (
    BezoutBuildError,
    BezoutSet,
    BuildOptions,
    bezoutian_symbolic,
    build_bezout_set,
    degree_bounds,
    delta_entry,
    delta_matrix,
    evaluate_determinant_grid,
    fourier_grid,
    interpolate_bezout,
)
from .companion import (
    BadPrimeError,
    CompanionSet,
    VerifyReport,
    barnett_univariate,
    companion_matrices,
    companion_univariate,
    poly_at_matrices,
    verify_modp,
)
from .poly import (
    ParseError,
    Poly,
    PolySystem,
    SystemFormatError,
    jacobian,
    multidegree,
    parse_poly,
    parse_system,
    univariate_divmod,
)
from .reduction import ReducedBezoutSet, ReductionError, derive_relation, reduce, reduction_step
from .roots import (
    Histogram,
    Root,
    RootSet,
    attach_residuals,
    eigen_roots,
    newton_residual,
    residual_histogram,
)

__version__ = "0.1.0"

__all__ = [
    "BadPrimeError",
    "BezoutBuildError",
    "BezoutSet",
    "BuildOptions",
    "CompanionSet",
    "Histogram",
    "ParseError",
    "Poly",
    "PolySystem",
    "ReducedBezoutSet",
    "ReductionError",
    "Root",
    "RootSet",
    "SystemFormatError",
    "VerifyReport",
    "attach_residuals",
    "barnett_univariate",
    "bezoutian_symbolic",
    "build_bezout_set",
    "companion_matrices",
    "companion_univariate",
    "degree_bounds",
    "delta_entry",
    "delta_matrix",
    "derive_relation",
    "eigen_roots",
    "evaluate_determinant_grid",
    "fourier_grid",
    "interpolate_bezout",
    "jacobian",
    "multidegree",
    "newton_residual",
    "parse_poly",
    "parse_system",
    "poly_at_matrices",
    "reduce",
    "reduction_step",
    "residual_histogram",
    "univariate_divmod",
    "verify_modp",
]
