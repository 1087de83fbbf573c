"""Numerical laboratory for complex random-matrix spectra.

Monte Carlo and exhaustive-enumeration experiments on least singular
values, real-eigenvalue statistics, essential least common denominators
of unit vectors, and small-ball (Levy) concentration, with reproducible
counter-based random streams.
"""

__version__ = "0.1.0"

from .ensembles import (
    EnsembleSpec,
    GenuinelyComplexSpec,
    RandomStream,
    ScalarDistribution,
    sample_matrix,
    sample_row_deleted_matrix,
)
from .lcd import LcdParams, LcdResult, complex_lcd, derive_lcd_constants, real_lcd
from .realify import bracket_apply, bracket_transpose_apply, hat, symmetry_swap
from .spectra import (
    condition_number,
    eigenvalues,
    least_singular_value,
    operator_norm,
    real_eigenvalue_count,
    singular_values,
)
from .vector_geometry import DecompParams, SpreadParams, classify

__all__ = [
    "__version__",
    "EnsembleSpec",
    "GenuinelyComplexSpec",
    "RandomStream",
    "ScalarDistribution",
    "sample_matrix",
    "sample_row_deleted_matrix",
    "LcdParams",
    "LcdResult",
    "complex_lcd",
    "derive_lcd_constants",
    "real_lcd",
    "bracket_apply",
    "bracket_transpose_apply",
    "hat",
    "symmetry_swap",
    "condition_number",
    "eigenvalues",
    "least_singular_value",
    "operator_norm",
    "real_eigenvalue_count",
    "singular_values",
    "DecompParams",
    "SpreadParams",
    "classify",
]
