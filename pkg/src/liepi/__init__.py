"""Structure theory of finite-dimensional Lie algebras and PI-condition checks on their representations."""

from .lie_core import LieAlgebra, Subspace, bracket, classify, killing_form, levi_subalgebra, nilpotent_radical, solvable_radical
from .pbw import TruncatedUEA, left_regular_rep, straighten, truncated_quotient, two_sided_ideal_identity_check
from .rep_engine import (
    AssocAlgebra,
    MatrixRep,
    algebra_nilpotency_degree,
    associative_closure,
    element_nilpotency_degree,
    jacobson_radical,
    radical_containment_check,
    validate_rep,
)
from .banach_num import GrowthFit, SweepSpec, exp_growth_fit, exp_minus_one_degree, matrix_exp, operator_norm, power_sweep_fit
from .pi_lab import (
    ConditionReport,
    NCPolynomial,
    RepFamily,
    check_conditions,
    check_conditions_hom,
    composite_identity,
    eval_nc_poly,
    family_analysis,
    standard_identity,
)

__version__ = "0.1.0"

__all__ = [
    "AssocAlgebra", "ConditionReport", "GrowthFit", "LieAlgebra", "MatrixRep", "NCPolynomial",
    "RepFamily", "Subspace", "SweepSpec", "TruncatedUEA", "algebra_nilpotency_degree",
    "associative_closure", "bracket", "check_conditions", "check_conditions_hom", "classify",
    "composite_identity", "element_nilpotency_degree", "eval_nc_poly", "exp_growth_fit",
    "exp_minus_one_degree", "family_analysis", "jacobson_radical", "killing_form",
    "left_regular_rep", "levi_subalgebra", "matrix_exp", "nilpotent_radical", "operator_norm",
    "power_sweep_fit", "radical_containment_check", "solvable_radical", "standard_identity",
    "straighten", "truncated_quotient", "two_sided_ideal_identity_check", "validate_rep",
]
