"""Invariants, component counts and explicit representations of the groups
``<g_1, ..., g_r | g_1^n_1 = ... = g_r^n_r>``.
"""

from .census import (
    CensusReport,
    de_components,
    free_product_components_gl,
    gl2_irr_components,
    mccrudden_bound_check,
    nth_root_classes,
    sl2_components_enumerate,
    sl2_components_formula,
)
from .errors import CharVarError
from .exact_arith import IntMatrix, RootOfUnity, SmithDecomposition, enumerate_roots, smith_normal_form
from .torus_groups import GroupKind, GroupSpec, abelian_generator, abelianize, classify, presentation_matrix

__version__ = "0.1.0"

__all__ = [
    "CensusReport",
    "CharVarError",
    "GroupKind",
    "GroupSpec",
    "IntMatrix",
    "RootOfUnity",
    "SmithDecomposition",
    "abelian_generator",
    "abelianize",
    "classify",
    "de_components",
    "enumerate_roots",
    "free_product_components_gl",
    "gl2_irr_components",
    "mccrudden_bound_check",
    "nth_root_classes",
    "presentation_matrix",
    "sl2_components_enumerate",
    "sl2_components_formula",
    "smith_normal_form",
]
