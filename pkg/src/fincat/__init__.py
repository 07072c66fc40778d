"""Finite-category verification engine.

Explicit finite categories with nullhomotopy structures, homotopy
(co)kernels, homotopy torsion theories, and factorization systems,
plus a line-oriented workspace format, a CLI, and an HTTP service.
"""

__version__ = "0.1.0"

from .core import (
    ArrowClassification,
    FinCategory,
    FinCategoryError,
    classify_arrow,
    validate_category,
)

__all__ = [
    "ArrowClassification",
    "FinCategory",
    "FinCategoryError",
    "classify_arrow",
    "validate_category",
    "__version__",
]
