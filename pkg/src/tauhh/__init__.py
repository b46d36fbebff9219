"""Exact invariants of bound quiver algebras.

The package computes, over Q or a prime field, the center of a bound quiver
algebra together with the first and second Hochschild cohomology, the
tau-variant of the first cohomology, the bimodule hom space out of the
relation bimodule, and the excess between the two first-cohomology flavors.
Every headline number is produced by at least two independent routes that
are compared before anything is reported.
"""

__version__ = "0.1.0"

from .linalg import (
    GF,
    QQ,
    Matrix,
    cokernel_dim,
    echelonize,
    field_from_name,
    field_name,
    kernel_basis,
    rank,
    solution_space_dim,
)
from .quiver import (
    Path,
    Quiver,
    classify_shape,
    connected_component_count,
    crown_quiver,
    enumerate_paths,
    parallel_pairs,
    paths_of_length,
)
from .dsl import (
    ParseError,
    Presentation,
    make_presentation,
    parse_presentation,
)
from .algebra import (
    Algebra,
    NotAdmissibleError,
    SubBimodule,
    bimodule_hom_dim,
    build_algebra,
    center,
    radical_power,
    relation_bimodule,
)
from .cohomology import (
    ComplexTooLargeError,
    InvariantReport,
    RouteMismatchError,
    bar_cohomology_dims,
    bar_space_dims,
    build_bar_complex,
    compute_invariants,
    derivation_space_dim,
    excess,
    has_hh2_cancellation,
    hh1_dim,
    hh1_kq_dim,
    hh2_dim,
    hom_relations_dim,
    is_tau_rigid,
    tau_hh1_dim_coker,
    tau_hh1_dim_formula,
)
from .closed_forms import (
    IsCrownError,
    NotAcyclicError,
    NotConnectedError,
    NotMonomialError,
    NotTriangularError,
    cross_validate,
    crown_dims,
    hereditary_hh1,
    monomial_classification,
    monomial_dims,
    rad_square_zero_dims,
    tree_criterion_predicates,
)
from .randgen import check_presentation, crown_presentation, selfcheck

__all__ = [
    "__version__",
    "GF",
    "QQ",
    "Matrix",
    "cokernel_dim",
    "echelonize",
    "field_from_name",
    "field_name",
    "kernel_basis",
    "rank",
    "solution_space_dim",
    "Path",
    "Quiver",
    "classify_shape",
    "connected_component_count",
    "crown_quiver",
    "enumerate_paths",
    "parallel_pairs",
    "paths_of_length",
    "ParseError",
    "Presentation",
    "make_presentation",
    "parse_presentation",
    "Algebra",
    "NotAdmissibleError",
    "SubBimodule",
    "bimodule_hom_dim",
    "build_algebra",
    "center",
    "radical_power",
    "relation_bimodule",
    "ComplexTooLargeError",
    "InvariantReport",
    "RouteMismatchError",
    "bar_cohomology_dims",
    "bar_space_dims",
    "build_bar_complex",
    "compute_invariants",
    "derivation_space_dim",
    "excess",
    "has_hh2_cancellation",
    "hh1_dim",
    "hh1_kq_dim",
    "hh2_dim",
    "hom_relations_dim",
    "is_tau_rigid",
    "tau_hh1_dim_coker",
    "tau_hh1_dim_formula",
    "IsCrownError",
    "NotAcyclicError",
    "NotConnectedError",
    "NotMonomialError",
    "NotTriangularError",
    "cross_validate",
    "crown_dims",
    "hereditary_hh1",
    "monomial_classification",
    "monomial_dims",
    "rad_square_zero_dims",
    "tree_criterion_predicates",
    "check_presentation",
    "crown_presentation",
    "selfcheck",
]
