"""Mixed Hodge module structure of local cohomology with determinantal support.

The package works entirely with combinatorial shadows: composition factors
in the Grothendieck group, Tate twists, and dominant weights of Hodge
filtration pieces.
"""

from .errors import DomainViolation, InternalInconsistency, InvalidInput, NotInAddQ
from .groth import (FactorTable, IntPoly, QTable, gauss_binom, lc_class, lc_class_Q,
                    lc_generating_function, parity_check, q_decompose, q_table)
from .hodge import (FiltrationQuery, IdealSpec, IdentityReport, dsub_member, filtration_dim,
                    filtration_multiset, generation_level, hodge_filtration, hodge_ideal_member,
                    hodge_ideal_symbolic_member, hodge_member, hodge_multiplicity,
                    q_filtration_member, qpideal_identity_check, rect_ideal_member, start_level,
                    symbolic_power_member)
from .mhm import (IteratedClass, MHMClass, ModuleClass, TwistedQ, TwistedSimple, iterate,
                  lc_mhm, lc_q_mhm, local_cohomology, weight_graded, weight_of)
from .weights import (Box, MatrixShape, WeightMultiset, dominant_weights, enumerate_weights,
                      in_dpd, in_wp, is_dominant, lambda_p_map, rep_dim, schur_dim, w_index)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "DomainViolation",
    "FactorTable",
    "FiltrationQuery",
    "IdealSpec",
    "IdentityReport",
    "IntPoly",
    "InternalInconsistency",
    "InvalidInput",
    "IteratedClass",
    "MHMClass",
    "MatrixShape",
    "ModuleClass",
    "NotInAddQ",
    "QTable",
    "TwistedQ",
    "TwistedSimple",
    "WeightMultiset",
    "dominant_weights",
    "dsub_member",
    "enumerate_weights",
    "filtration_dim",
    "filtration_multiset",
    "gauss_binom",
    "generation_level",
    "hodge_filtration",
    "hodge_ideal_member",
    "hodge_ideal_symbolic_member",
    "hodge_member",
    "hodge_multiplicity",
    "in_dpd",
    "in_wp",
    "is_dominant",
    "iterate",
    "lambda_p_map",
    "lc_class",
    "lc_class_Q",
    "lc_generating_function",
    "lc_mhm",
    "lc_q_mhm",
    "local_cohomology",
    "parity_check",
    "q_decompose",
    "q_filtration_member",
    "q_table",
    "qpideal_identity_check",
    "rect_ideal_member",
    "rep_dim",
    "schur_dim",
    "start_level",
    "symbolic_power_member",
    "w_index",
    "weight_graded",
    "weight_of",
]
