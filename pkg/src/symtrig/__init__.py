"""Antisymmetric and symmetric multivariate sine and cosine functions.

The package evaluates the four determinant/permanent families ``sin-minus``,
``sin-plus``, ``cos-minus`` and ``cos-plus``, implements the extended affine
symmetric group that acts on them, checks their continuous orthogonality and
eigen-equations numerically, and provides the finite multivariate sine and
cosine transforms built from them.
"""
from .errors import AccuracyWarning, InvalidArgumentError, SizeLimitError
from .kernel import (AngularConvention, Family, Rho, evaluate, evaluate_oracle,
                     product_identity_constant, special_product)
from .symmetry import (DominantLabelSet, GridKind, GridPoint, GroupElement, LabelSetKind,
                       act, enumerate_grid, enumerate_labels, fold, stabilizer_order)
from .discrete import (Kind, TransformKind, forward, gram_matrix, inverse, kernel_value,
                       plancherel_defect_discrete)
from .continuous import (Mix, QuadratureRule, SeriesCoefficients, cross_orthogonality,
                         inner_product_F, laplace_eigen_defect, partial_sum,
                         plancherel_defect, series_coefficient, sigma_k_eigen_defect)

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning", "AngularConvention", "DominantLabelSet", "Family", "GridKind",
    "GridPoint", "GroupElement", "InvalidArgumentError", "Kind", "LabelSetKind", "Mix",
    "QuadratureRule", "Rho", "SeriesCoefficients", "SizeLimitError", "TransformKind",
    "act", "cross_orthogonality", "enumerate_grid", "enumerate_labels", "evaluate",
    "evaluate_oracle", "fold", "forward", "gram_matrix", "inner_product_F", "inverse",
    "kernel_value", "laplace_eigen_defect", "partial_sum", "plancherel_defect",
    "plancherel_defect_discrete", "product_identity_constant", "series_coefficient",
    "sigma_k_eigen_defect", "special_product", "stabilizer_order",
]
