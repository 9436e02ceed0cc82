"""Finite triangulated categories, their abelian quotients and ``Hom(T, -)``.

Backends: module categories of quiver algebras with relations, their stable
categories (self-injective case) and mesh categories of ``ℤΔ/G``.
"""

from .category import AddMorphism, FiniteCategory, TriangleData, exactness_certificate, module_category_handle
from .gamma import GammaAlgebra, gamma_of, hom_functor, list_gamma_indecomposables
from .linalg import PrimeField, RationalField, Subspace, field_from_spec
from .mesh import MeshCategory, build_mesh
from .quiver import (
    QuiverPresentation,
    Representation,
    knit_module_category,
    load_algebra,
)
from .stable import StableCategory, serre_2cy_check, stable_category
from .theory import (
    CategoryIdeal,
    CheckReport,
    QuotientCategory,
    ar_image_checks,
    check_condition_a,
    check_condition_b,
    check_condition_c,
    check_dense,
    check_full,
    cohomological_sample_check,
    find_projective_generator,
    harada_sai_check,
    is_cluster_tilting,
    l_hat,
    minimal_preimage,
    quotient_and_ks_check,
    representability_suite,
    right_minimal,
    theorem_suite,
)

__version__ = "0.1.0"
