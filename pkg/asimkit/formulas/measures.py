"""Structural measures: degree, implication depth, box depth, vocabulary, free variables."""

from typing import FrozenSet, Iterable

from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml

# Unary letter indices; R and = are always implicitly present.
Vocabulary = FrozenSet[int]


def make_vocabulary(indices: Iterable[int] = ()) -> Vocabulary:
    """Build a vocabulary, rejecting non-positive letter indices."""
    letters = frozenset(indices)
    for n in letters:
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"letter index must be a positive integer, got {n!r}")
    return letters


def degree(phi: fol.FOFormula) -> int:
    """Greatest number of nested quantifiers."""
    match phi:
        case fol.Pred() | fol.Rel() | fol.Eq():
            return 0
        case fol.Neg(body):
            return degree(body)
        case fol.And(left, right) | fol.Or(left, right) | fol.Imp(left, right):
            return max(degree(left), degree(right))
        case fol.Forall(_, body) | fol.Exists(_, body):
            return degree(body) + 1
    raise TypeError(f"not a first-order formula: {phi!r}")


def impl_depth(i: ipl.IntFormula) -> int:
    """Maximum nesting of implications."""
    match i:
        case ipl.Bottom() | ipl.Prop():
            return 0
        case ipl.And(left, right) | ipl.Or(left, right):
            return max(impl_depth(left), impl_depth(right))
        case ipl.Imp(left, right):
            return 1 + max(impl_depth(left), impl_depth(right))
    raise TypeError(f"not an intuitionistic formula: {i!r}")


def box_depth(m: ml.ModalFormula) -> int:
    match m:
        case ml.Prop():
            return 0
        case ml.Neg(body):
            return box_depth(body)
        case ml.And(left, right):
            return max(box_depth(left), box_depth(right))
        case ml.Box(body):
            return 1 + box_depth(body)
    raise TypeError(f"not a modal formula: {m!r}")


def vocabulary_of(formula) -> Vocabulary:
    """Unary letter indices occurring in a formula of any of the three languages."""
    match formula:
        case fol.Pred(letter, _):
            return frozenset({letter})
        case ipl.Prop(index) | ml.Prop(index):
            return frozenset({index})
        case fol.Rel() | fol.Eq() | ipl.Bottom():
            return frozenset()
        case fol.Neg(body) | ml.Neg(body) | ml.Box(body) | fol.Forall(_, body) | fol.Exists(_, body):
            return vocabulary_of(body)
        case (fol.And(left, right) | fol.Or(left, right) | fol.Imp(left, right)
              | ipl.And(left, right) | ipl.Or(left, right) | ipl.Imp(left, right)
              | ml.And(left, right)):
            return vocabulary_of(left) | vocabulary_of(right)
    raise TypeError(f"not a formula: {formula!r}")


def free_variables(phi: fol.FOFormula) -> FrozenSet[str]:
    match phi:
        case fol.Pred(_, var):
            return frozenset({var})
        case fol.Rel(left, right) | fol.Eq(left, right):
            return frozenset({left, right})
        case fol.Neg(body):
            return free_variables(body)
        case fol.And(left, right) | fol.Or(left, right) | fol.Imp(left, right):
            return free_variables(left) | free_variables(right)
        case fol.Forall(var, body) | fol.Exists(var, body):
            return free_variables(body) - {var}
    raise TypeError(f"not a first-order formula: {phi!r}")


def size(formula) -> int:
    """Number of AST nodes."""
    match formula:
        case fol.Pred() | fol.Rel() | fol.Eq() | ipl.Bottom() | ipl.Prop() | ml.Prop():
            return 1
        case fol.Neg(body) | ml.Neg(body) | ml.Box(body) | fol.Forall(_, body) | fol.Exists(_, body):
            return 1 + size(body)
        case (fol.And(left, right) | fol.Or(left, right) | fol.Imp(left, right)
              | ipl.And(left, right) | ipl.Or(left, right) | ipl.Imp(left, right)
              | ml.And(left, right)):
            return 1 + size(left) + size(right)
    raise TypeError(f"not a formula: {formula!r}")
