"""Multi-differential operators on the flat model and their symbols.

On the flat model the standard coordinate frame is adapted to the
constraint structure and the flat connection (all Christoffel symbols
zero) is a torsion-free constraint covariant derivative.  The symbol
calculus it induces identifies a multi-differential operator with a
:class:`~conhoch.symbols.SymbolChain`: the basis word (d_{i1} v .. v
d_{ik}) acts on its argument slot as the iterated partial derivative,
and the polynomial coefficient multiplies the result.  Operators built
this way vanish on constants in every argument because every slot has
symmetric degree at least one.

The Hochschild coboundary is implemented here directly from its
operator-level formula (multiplication boundary terms plus alternating
argument merges, expanded on symbols through the Leibniz rule).  It is
therefore independent of the shuffle-coproduct differential on the
symbol side, and the equality Op(D phi) = delta(Op(phi)) is a genuine
cross-check between the two routes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import ModelMismatchError, UnsupportedTagError
from .model import FlatModel, FunctionClass
from .poly import Exponent, Poly, monomials_of_degree
from .symbols import (Slots, SubspaceTag, SymbolChain, VectorField, Word,
                      chain_membership, differential_d)


class MultiDiffOp:
    """Multi-differential operator, fully determined by its symbol."""

    __slots__ = ("symbol",)

    def __init__(self, symbol: SymbolChain):
        self.symbol = symbol

    @property
    def model(self) -> FlatModel:
        return self.symbol.model

    @property
    def arity(self) -> int:
        return self.symbol.arity

    @classmethod
    def zero(cls, model: FlatModel, arity: int) -> "MultiDiffOp":
        return cls(SymbolChain.zero(model, arity))

    def apply(self, fs: Sequence[Poly]) -> Poly:
        """Evaluate on a tuple of polynomials (one per argument slot)."""
        if len(fs) != self.arity:
            raise ValueError(f"operator of arity {self.arity} applied to {len(fs)} arguments")
        for f in fs:
            self.model.check_poly(f)
        out = Poly.zero(self.model.n_total)
        for slots, coeff in self.symbol.terms.items():
            term = coeff
            for word, f in zip(slots, fs):
                term = term * f.partial_word(word)
                if term.is_zero():
                    break
            out = out + term
        return out

    def __add__(self, other: "MultiDiffOp") -> "MultiDiffOp":
        return MultiDiffOp(self.symbol + other.symbol)

    def __sub__(self, other: "MultiDiffOp") -> "MultiDiffOp":
        return MultiDiffOp(self.symbol - other.symbol)

    def __neg__(self) -> "MultiDiffOp":
        return MultiDiffOp(-self.symbol)

    def scale(self, q) -> "MultiDiffOp":
        return MultiDiffOp(self.symbol.scale(q))

    def is_zero(self) -> bool:
        return self.symbol.is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiDiffOp) and self.symbol == other.symbol

    def __repr__(self) -> str:
        return f"Op[{self.symbol!r}]"


# ---------------------------------------------------------------------------
# flat connection and symmetrized derivatives
# ---------------------------------------------------------------------------


class FlatConnection:
    """The standard flat covariant derivative; Christoffel symbols vanish,
    so it is torsion-free, and on the flat model it satisfies the three
    constraint conditions (verified in the test suite on sampled
    fields)."""

    def __init__(self, model: FlatModel):
        self.model = model

    def covariant_derivative(self, x: VectorField, y: VectorField) -> VectorField:
        if x.model != self.model or y.model != self.model:
            raise ModelMismatchError("fields over a different model")
        return VectorField(self.model, [x.apply(comp) for comp in y.components])


@dataclass
class SymCovTensor:
    """Symmetrized k-th covariant derivative of a function; for the flat
    connection the entry at a sorted index multiset is the corresponding
    iterated partial derivative."""

    model: FlatModel
    degree: int
    entries: Dict[Word, Poly]

    def entry(self, word: Sequence[int]) -> Poly:
        key = tuple(sorted(word))
        return self.entries.get(key, Poly.zero(self.model.n_total))


def sym_cov_derivative(model: FlatModel, f: Poly, k: int) -> SymCovTensor:
    if k < 1:
        raise ValueError("derivative order must be positive")
    model.check_poly(f)
    entries: Dict[Word, Poly] = {}
    for word in itertools.combinations_with_replacement(range(1, model.n_total + 1), k):
        value = f.partial_word(word)
        if not value.is_zero():
            entries[word] = value
    return SymCovTensor(model, k, entries)


# ---------------------------------------------------------------------------
# Hochschild coboundary
# ---------------------------------------------------------------------------


def _leibniz_splits(word: Word) -> Iterator[Tuple[Word, Word, int]]:
    """All splittings of an iterated-derivative word over a product of two
    functions: sub-multiset, complement, multinomial multiplicity."""
    letters = sorted(set(word))
    mults = [word.count(v) for v in letters]
    for choice in itertools.product(*(range(m + 1) for m in mults)):
        left: Tuple[int, ...] = ()
        right: Tuple[int, ...] = ()
        multiplicity = 1
        for v, m, j in zip(letters, mults, choice):
            left += (v,) * j
            right += (v,) * (m - j)
            multiplicity *= comb(m, j)
        yield left, right, multiplicity


def hochschild_delta(op: MultiDiffOp) -> MultiDiffOp:
    """The Hochschild coboundary of a multi-differential operator.

    Computed from the operator-level formula

        (delta D)(f_0, .., f_n) = f_0 D(f_1, .., f_n)
            + sum_{i=0}^{n-1} (-1)^{i+1} D(f_0, .., f_i f_{i+1}, .., f_n)
            + (-1)^{n+1} D(f_0, .., f_{n-1}) f_n

    expanded on symbols via the Leibniz rule.  The expansion passes
    through terms with an empty derivative slot (plain multiplication by
    one argument); these cancel in the total because the operator
    vanishes on constants, which is asserted.
    """
    n = op.arity
    model = op.model
    augmented: Dict[Slots, Poly] = {}

    def accumulate(key: Slots, value: Poly) -> None:
        acc = augmented.get(key)
        total = value if acc is None else acc + value
        if total.is_zero():
            augmented.pop(key, None)
        else:
            augmented[key] = total

    for slots, coeff in op.symbol.terms.items():
        accumulate(((),) + slots, coeff)
        sign_last = -1 if (n + 1) % 2 else 1
        accumulate(slots + ((),), coeff * sign_last)
        for i in range(n):
            sign = -1 if (i + 1) % 2 else 1
            for left, right, mult in _leibniz_splits(slots[i]):
                key = slots[:i] + (left, right) + slots[i + 1:]
                accumulate(key, coeff * (sign * mult))

    proper: Dict[Slots, Poly] = {}
    for key, value in augmented.items():
        if any(len(w) == 0 for w in key):
            raise AssertionError(
                f"coboundary of a normalized operator kept a constant slot: {key}")
        proper[key] = value
    return MultiDiffOp(SymbolChain(model, n + 1, proper))


# ---------------------------------------------------------------------------
# functional evaluation windows and the chain-map check
# ---------------------------------------------------------------------------


def monomial_argument_tuples(model: FlatModel, arity: int,
                             max_total_degree: int) -> Iterator[Tuple[Exponent, ...]]:
    """All tuples of monomial exponents with the given total degree bound."""
    nvars = model.n_total
    for total in range(max_total_degree + 1):
        for split in _degree_splits(total, arity):
            pools = [monomials_of_degree(nvars, d) for d in split]
            yield from itertools.product(*pools)


def _degree_splits(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _degree_splits(total - head, parts - 1):
            yield (head,) + tail


def apply_to_monomials(op: MultiDiffOp, args: Sequence[Exponent]) -> Dict[Exponent, Fraction]:
    """Fast evaluation on monomial arguments; returns the result as a raw
    exponent-to-coefficient map."""
    result: Dict[Exponent, Fraction] = {}
    for slots, coeff in op.symbol.terms.items():
        factor = 1
        residual = [0] * op.model.n_total
        dead = False
        for word, arg in zip(slots, args):
            exps = list(arg)
            for letter in word:
                e = exps[letter - 1]
                if e == 0:
                    dead = True
                    break
                factor *= e
                exps[letter - 1] = e - 1
            if dead:
                break
            for pos, e in enumerate(exps):
                residual[pos] += e
        if dead:
            continue
        for exp, q in coeff.terms.items():
            key = tuple(r + e for r, e in zip(residual, exp))
            total = result.get(key, Fraction(0)) + q * factor
            if total:
                result[key] = total
            else:
                result.pop(key, None)
    return result


def operators_equal_on_window(a: MultiDiffOp, b: MultiDiffOp,
                              max_total_degree: int) -> bool:
    """Compare two operators by evaluating on every tuple of monomials up
    to the given total degree."""
    if a.arity != b.arity or a.model != b.model:
        return False
    for args in monomial_argument_tuples(a.model, a.arity, max_total_degree):
        if apply_to_monomials(a, args) != apply_to_monomials(b, args):
            return False
    return True


def sufficiency_degree(chain: SymbolChain) -> int:
    """Evaluation-degree window that separates operators of the given
    order and coefficient degree: max operator order + coefficient
    degree + 1."""
    return chain.max_total_order() + max(chain.max_coeff_degree(), 0) + 1


def chain_map_check(phi: SymbolChain) -> bool:
    """Verify Op(D phi) = delta(Op(phi)) as operators, by evaluating both
    sides on all monomial tuples up to the sufficiency degree."""
    lhs = MultiDiffOp(differential_d(phi))
    rhs = hochschild_delta(MultiDiffOp(phi))
    return operators_equal_on_window(lhs, rhs, sufficiency_degree(phi))


# ---------------------------------------------------------------------------
# operator-level constraint membership
# ---------------------------------------------------------------------------


def op_membership(op: MultiDiffOp, tag: SubspaceTag) -> bool:
    """Constraint membership of an operator, decided on the symbol side
    (the symbol calculus restricts to the tagged subspaces)."""
    if tag not in (SubspaceTag.WOBS, SubspaceTag.NULL):
        raise UnsupportedTagError("operators carry only wobs/null tags")
    return chain_membership(op.symbol, tag)


def op_membership_functional(op: MultiDiffOp, tag: SubspaceTag,
                             max_degree: int = 4) -> bool:
    """Independent functional oracle for operator membership: test the
    defining conditions on the monomial bases of the function classes
    up to the given per-argument degree.

    Observable operators send observable arguments to observables and
    send any tuple with a null argument (others observable) to nulls;
    null operators send observable tuples to nulls.
    """
    if tag not in (SubspaceTag.WOBS, SubspaceTag.NULL):
        raise UnsupportedTagError("operators carry only wobs/null tags")
    model = op.model
    wobs_monomials: List[Poly] = []
    for degree in range(1, max_degree + 1):
        wobs_monomials.extend(model.function_slice_basis(FunctionClass.WOBS, degree))
    for args in itertools.product(wobs_monomials, repeat=op.arity):
        value = op.apply(list(args))
        value_class = model.classify_function(value)
        if tag is SubspaceTag.NULL:
            if not FunctionClass.NULL.contains(value_class):
                return False
            continue
        if not FunctionClass.WOBS.contains(value_class):
            return False
        if any(model.classify_function(f) is FunctionClass.NULL for f in args):
            if not FunctionClass.NULL.contains(value_class):
                return False
    return True
