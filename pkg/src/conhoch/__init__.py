"""Exact computation of constraint Hochschild cohomology on flat models.

The package computes, with exact rational arithmetic, the low-degree
Hochschild cohomology of the function algebra of a flat constraint model
(an ambient coordinate space, an embedded coordinate subspace and a
coordinate distribution on it), classifies the degree-2 classes by an
observable bivector plus symmetric normal-word data, and applies the
classification to infinitesimal star products compatible with
reduction.
"""

from .errors import (ConhochError, ModelMismatchError, NotClosedError,
                     NotCocycleError, NotConstraintError, NotWobsError,
                     PreconditionError, SolveFailureError, UnsupportedTagError)
from .model import FlatModel, FunctionClass
from .poly import Poly, monomials_of_degree, monomials_up_to_degree
from .symbols import (MultiVector, SubspaceTag, SymbolChain, VectorField,
                      bracket, chain_membership, chain_vee, decompose_sym,
                      decompose_tensor2, differential_d, hkr,
                      in_function_span_wobs, monomial_member, mv_membership,
                      pr1, pr1_top, reduce_multivector, shuffle_coproduct,
                      vee, vee_collapse, vf_membership, wedge)
from .diffops import (FlatConnection, MultiDiffOp, SymCovTensor,
                      chain_map_check, hochschild_delta, op_membership,
                      op_membership_functional, sym_cov_derivative)
from .linalg import RationalMatrix
from .cohomology import (CocycleClass, CocycleDecomposition, Slice,
                         bivector_slice_basis, class_maps,
                         classified_hh2_dimension, decompose_2cocycle,
                         find_constraint_potential, find_potential,
                         hh0_dimension, hh2_slice_report, hh_dimension,
                         matrix_of_D, normal_class_basis, slice_basis)
from .starprod import (OMITTED_BRACKET_PREFACTOR, AssociativityViolation,
                       TruncatedEquivalence, TruncatedStar,
                       check_associativity, classify_infinitesimal,
                       coisotropy_check, equivalence_report,
                       equivalence_step, is_constraint_star,
                       plain_equivalence_step, poisson_from_star, star_apply)

__version__ = "0.1.0"
