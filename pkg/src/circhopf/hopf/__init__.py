"""Circ-Hopf algebras: axioms, integrals, compactness, antipode decompositions."""
from .albert import AlbertResult, NotInner, albert_tau, convolution_matrices
from .algebra import Functional, HopfAlgebra, function_algebra, group_algebra, sweedler, trivial_hopf
from .antipode import (
    Battery,
    ConsistencyError,
    NakayamaData,
    antipode_adjoint,
    compute_beta,
    involutivity_report,
    modular_function,
    modularity_report,
    nakayama,
    nakayama_sqrt,
    positive_antipode,
    radford_check,
    unitary_antipode,
)
from .conjugacy import (
    ConjugacyResult,
    InconsistentPair,
    conjugate_involutions,
    conjugated_circ,
    group_automorphism_matrix,
    hopf_biderivations,
    positive_hopf_automorphism,
    positive_inner_automorphism,
)
from .groups import GROUPS, FiniteGroup
from .integral import (
    CompactVerdict,
    IntegralError,
    bilinear_matrix,
    gram_from_integral,
    integral_via_decomposition,
    is_compact,
    solve_integral,
)

__all__ = [
    "AlbertResult",
    "NotInner",
    "albert_tau",
    "convolution_matrices",
    "Functional",
    "HopfAlgebra",
    "function_algebra",
    "group_algebra",
    "sweedler",
    "trivial_hopf",
    "Battery",
    "ConsistencyError",
    "NakayamaData",
    "modularity_report",
    "antipode_adjoint",
    "compute_beta",
    "involutivity_report",
    "modular_function",
    "nakayama",
    "nakayama_sqrt",
    "positive_antipode",
    "radford_check",
    "unitary_antipode",
    "ConjugacyResult",
    "InconsistentPair",
    "conjugate_involutions",
    "conjugated_circ",
    "group_automorphism_matrix",
    "hopf_biderivations",
    "positive_hopf_automorphism",
    "positive_inner_automorphism",
    "GROUPS",
    "FiniteGroup",
    "CompactVerdict",
    "IntegralError",
    "bilinear_matrix",
    "gram_from_integral",
    "integral_via_decomposition",
    "is_compact",
    "solve_integral",
]
