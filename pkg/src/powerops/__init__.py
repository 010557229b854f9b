"""Exact computer algebra for power operations at height 1.

Free lambda- and theta-rings on finitely presented abelian groups,
derived p-completion, truncation constants, and the symmetric-group
transfer operator with its spectral theory.  Everything is computed in
exact integer arithmetic.
"""

from .intlinalg import (CokernelMap, GroupClass, IntMatrix, Presentation,
                        RelationError, SmithDecomposition, classify,
                        kernel_lattice, map_cokernel, smith_diagonal,
                        smith_normal_form, solvable, tensor_with_cyclic)
from .lambda_free import (GradedLambdaElement, LambdaSeries,
                          ThetaIntegralityError, adams, binomial,
                          evaluate_at_integers, key_constant, lambda_series,
                          theta_from_lambda, tn_free_basis, tn_of_map,
                          tn_presentation, tn_presented)
from .theta_free import (ThetaElement, UnsupportedTorsionError,
                         free_theta_basis, psi, theta, theta_add, theta_mul,
                         theta_tn_of_map, theta_tn_presented)
from .completion import (CompletionResult, ModuleExpr, hat_tn,
                         is_l0_equivalence, l_complete, parse_module_expr,
                         verify_main_theorem)
from .symrep import (CharTable, ClassFunction, TransferMatrix,
                     TransferSpectrum, YoungClassFunction, char_poly,
                     character_table, induce, partitions, restrict,
                     transfer_matrix, transfer_spectrum, z_order)

__version__ = "0.1.0"

__all__ = [
    "CharTable", "ClassFunction", "CokernelMap", "CompletionResult",
    "GradedLambdaElement", "GroupClass", "IntMatrix", "LambdaSeries",
    "ModuleExpr", "Presentation", "RelationError", "SmithDecomposition",
    "ThetaElement", "ThetaIntegralityError", "TransferMatrix",
    "TransferSpectrum", "UnsupportedTorsionError", "YoungClassFunction",
    "adams", "binomial", "char_poly", "character_table", "classify",
    "evaluate_at_integers", "free_theta_basis", "hat_tn", "induce",
    "is_l0_equivalence", "kernel_lattice", "key_constant", "l_complete",
    "lambda_series", "map_cokernel", "parse_module_expr", "partitions",
    "psi", "restrict", "smith_diagonal", "smith_normal_form", "solvable",
    "tensor_with_cyclic", "theta", "theta_add", "theta_from_lambda",
    "theta_mul", "theta_tn_of_map", "theta_tn_presented", "tn_free_basis",
    "tn_of_map", "tn_presentation", "tn_presented", "transfer_matrix",
    "transfer_spectrum", "verify_main_theorem", "z_order",
]
