"""Truncated formal star products and their order-by-order analysis.

A truncated star product of order k is the pointwise product plus k
bidifferential cochains C_1 .. C_k (one per power of the formal
parameter).  Because every cochain is represented by its symbol, it
vanishes on constants automatically, so f * 1 = f = 1 * f holds by
construction.

Implemented here: order-by-order associativity defects, the constraint
property (every cochain observable), extraction of the first-order
antisymmetric bracket and its compatibility with the embedded
submanifold (coisotropy), the order-(k+1) equivalence solvers (plain and
constraint), and the classification of infinitesimal constraint star
products by a bivector plus a normal-word class.

Convention: the usual bracket normalisation multiplies the
antisymmetrised first cochain by -i.  Coefficients here are rational,
so the extracted bivector omits that factor; see
``OMITTED_BRACKET_PREFACTOR``.  The factor never affects membership,
closedness, equivalence or classification, which are all linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .cohomology import (CocycleClass, decompose_2cocycle,
                         find_constraint_potential, find_potential)
from .diffops import MultiDiffOp, monomial_argument_tuples
from .errors import NotClosedError, NotConstraintError, PreconditionError
from .model import FlatModel
from .poly import Poly
from .symbols import (MultiVector, SubspaceTag, SymbolChain, chain_membership,
                      differential_d, pr1_top)

#: the physics convention for the Poisson bracket carries this prefactor,
#: which has no home in rational arithmetic and is left off throughout
OMITTED_BRACKET_PREFACTOR = "-i"


class TruncatedStar:
    """Star product truncated at a finite order in the formal parameter."""

    def __init__(self, model: FlatModel, cochains: Sequence[MultiDiffOp]):
        for c in cochains:
            if c.model != model:
                raise PreconditionError("cochain over a different model")
            if c.arity != 2:
                raise PreconditionError("star product cochains have two arguments")
        self.model = model
        self.cochains = list(cochains)

    @property
    def order(self) -> int:
        return len(self.cochains)

    def cochain(self, r: int) -> MultiDiffOp:
        """C_r for 1 <= r <= order."""
        return self.cochains[r - 1]

    def apply(self, f: Poly, g: Poly) -> List[Poly]:
        """Coefficients of the product by formal-parameter order:
        entry 0 is f*g, entry r is C_r(f, g)."""
        return [f * g] + [c.apply([f, g]) for c in self.cochains]


class TruncatedEquivalence:
    """Formal equivalence transformation truncated at a finite order."""

    def __init__(self, model: FlatModel, maps: Sequence[MultiDiffOp]):
        for s in maps:
            if s.model != model:
                raise PreconditionError("map over a different model")
            if s.arity != 1:
                raise PreconditionError("equivalence maps have one argument")
        self.model = model
        self.maps = list(maps)

    @property
    def order(self) -> int:
        return len(self.maps)


@dataclass
class AssociativityViolation:
    """Witness of an associativity defect at a given order."""

    order: int
    arguments: Tuple[Poly, Poly, Poly]
    defect: Poly


def star_apply(star: TruncatedStar, f: Poly, g: Poly) -> List[Poly]:
    return star.apply(f, g)


def _associativity_defect(star: TruncatedStar, order: int,
                          f: Poly, g: Poly, h: Poly) -> Poly:
    """Order-r coefficient of (f*g)*h - f*(g*h)."""

    def c_apply(r: int, a: Poly, b: Poly) -> Poly:
        return a * b if r == 0 else star.cochain(r).apply([a, b])

    defect = Poly.zero(star.model.n_total)
    for p in range(order + 1):
        q = order - p
        defect = defect + c_apply(p, c_apply(q, f, g), h)
        defect = defect - c_apply(p, f, c_apply(q, g, h))
    return defect


def check_associativity(star: TruncatedStar,
                        up_to: Optional[int] = None) -> Optional[AssociativityViolation]:
    """Expand the associator order by order on all monomial triples up to
    the sufficiency degree; None when no violation is found.  At order
    one the defect is minus the coboundary of C_1, so the symbol-level
    closedness of C_1 is the authoritative equivalent (asserted against
    each other in the test suite)."""
    up_to = star.order if up_to is None else up_to
    if up_to > star.order:
        raise PreconditionError("cannot check beyond the truncation order")
    max_order = max((c.symbol.max_total_order() for c in star.cochains), default=0)
    window = max_order + 2
    for order in range(1, up_to + 1):
        for args in monomial_argument_tuples(star.model, 3, window):
            polys = tuple(Poly.monomial(e) for e in args)
            defect = _associativity_defect(star, order, *polys)
            if not defect.is_zero():
                return AssociativityViolation(order, polys, defect)
    return None


def is_constraint_star(star: TruncatedStar) -> bool:
    """A star product is constraint when every cochain is observable."""
    return all(chain_membership(c.symbol, SubspaceTag.WOBS) for c in star.cochains)


def poisson_from_star(star: TruncatedStar) -> MultiVector:
    """Bivector of the first-order bracket: the degree-(1,1) projection of
    the antisymmetric part of C_1's symbol.  For closed C_1 the
    antisymmetric part has order (1, 1), so nothing is lost.  Raises
    NotClosedError when C_1 is not a cocycle."""
    if star.order < 1:
        raise PreconditionError("star product has no first-order cochain")
    symbol = star.cochain(1).symbol
    if not differential_d(symbol).is_zero():
        raise NotClosedError("first-order cochain is not closed")
    antisym = (symbol - symbol.transpose()).scale(Fraction(1, 2))
    return pr1_top(antisym)


def coisotropy_check(pi: MultiVector) -> bool:
    """Compatibility of a bivector with the embedded submanifold: for every
    normal coordinate, its hamiltonian field restricted to C must lie in
    the distribution, i.e. the components pairing a normal index with any
    non-distribution index vanish on C.  True for every observable
    bivector."""
    if pi.degree != 2:
        raise PreconditionError("coisotropy is a bivector condition")
    model = pi.model
    for u in model.tcperp_indices:
        for i in range(model.n_null + 1, model.n_total + 1):
            if i == u:
                continue
            if not model.restrict_to_c(pi.component((u, i))).is_zero():
                return False
    return True


def _orderwise_difference(a: TruncatedStar, b: TruncatedStar, k: int) -> SymbolChain:
    return a.cochain(k).symbol - b.cochain(k).symbol


def _check_equivalence_preconditions(a: TruncatedStar, b: TruncatedStar, k: int) -> None:
    if k < 0:
        raise PreconditionError("agreement order must be non-negative")
    if a.model != b.model:
        raise PreconditionError("star products over different models")
    if a.order < k + 1 or b.order < k + 1:
        raise PreconditionError(f"both star products must carry order {k + 1}")
    for r in range(1, k + 1):
        if not _orderwise_difference(a, b, r).is_zero():
            raise PreconditionError(f"star products differ already at order {r}")
    if not (is_constraint_star(a) and is_constraint_star(b)):
        raise PreconditionError("both star products must be constraint")
    if check_associativity(a, k + 1) is not None or check_associativity(b, k + 1) is not None:
        raise PreconditionError(f"star products must be associative to order {k + 1}")


def equivalence_step(a: TruncatedStar, b: TruncatedStar, k: int) -> Optional[MultiDiffOp]:
    """Solve for the constraint equivalence map at order k+1 of two
    constraint star products agreeing up to order k: an observable S
    with coboundary C_{k+1} - C'_{k+1}.  None exactly when the
    difference is not constraint-exact."""
    _check_equivalence_preconditions(a, b, k)
    diff = _orderwise_difference(a, b, k + 1)
    if diff.is_zero():
        return MultiDiffOp.zero(a.model, 1)
    solution = find_constraint_potential(diff)
    return None if solution is None else MultiDiffOp(solution)


def plain_equivalence_step(a: TruncatedStar, b: TruncatedStar, k: int) -> Optional[MultiDiffOp]:
    """Same solve without the observable restriction on S."""
    _check_equivalence_preconditions(a, b, k)
    diff = _orderwise_difference(a, b, k + 1)
    if diff.is_zero():
        return MultiDiffOp.zero(a.model, 1)
    solution = find_potential(diff)
    return None if solution is None else MultiDiffOp(solution)


def equivalence_report(a: TruncatedStar, b: TruncatedStar, k: int) -> dict:
    """Plain and constraint order-(k+1) equivalence in one record."""
    plain = plain_equivalence_step(a, b, k)
    constraint = equivalence_step(a, b, k)
    return {
        "order": k + 1,
        "plain_equivalent": plain is not None,
        "constraint_equivalent": constraint is not None,
        "S": constraint if constraint is not None else plain,
    }


def classify_infinitesimal(c1: MultiDiffOp) -> CocycleClass:
    """Constraint equivalence class of an infinitesimal constraint star
    product with first cochain c1: the observable bivector and the
    normal-word chain of its cocycle decomposition."""
    if c1.arity != 2:
        raise PreconditionError("first-order cochains have two arguments")
    if not chain_membership(c1.symbol, SubspaceTag.WOBS):
        raise NotConstraintError("first-order cochain is not constraint")
    if not differential_d(c1.symbol).is_zero():
        raise NotClosedError("first-order cochain is not closed")
    return decompose_2cocycle(c1.symbol).cocycle_class
