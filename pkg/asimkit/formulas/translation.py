"""Standard translations into first-order logic.

``st`` maps intuitionistic formulas and ``tr`` maps modal formulas to formulas with
the single free variable given. Each implication (resp. box) introduces a fresh
bound variable ``y0, y1, ...`` numbered in pre-order, skipping names already in use.
"""

from itertools import count
from typing import Iterator

from asimkit.config import DEFAULT_VARIABLE, FRESH_VARIABLE_PREFIX
from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml


def _fresh_names(avoid: set[str]) -> Iterator[str]:
    for n in count():
        name = f"{FRESH_VARIABLE_PREFIX}{n}"
        if name not in avoid:
            yield name


def st(i: ipl.IntFormula, x: str = DEFAULT_VARIABLE) -> fol.FOFormula:
    """Standard x-translation of an intuitionistic formula."""
    fresh = _fresh_names({x})

    def translate(node: ipl.IntFormula, var: str) -> fol.FOFormula:
        match node:
            case ipl.Prop(index):
                return fol.Pred(index, var)
            case ipl.Bottom():
                return fol.Neg(fol.Eq(var, var))
            case ipl.And(left, right):
                return fol.And(translate(left, var), translate(right, var))
            case ipl.Or(left, right):
                return fol.Or(translate(left, var), translate(right, var))
            case ipl.Imp(left, right):
                y = next(fresh)
                return fol.Forall(y, fol.Imp(
                    fol.Rel(var, y),
                    fol.Imp(translate(left, y), translate(right, y)),
                ))
        raise TypeError(f"not an intuitionistic formula: {node!r}")

    return translate(i, x)


def tr(m: ml.ModalFormula, x: str = DEFAULT_VARIABLE) -> fol.FOFormula:
    """Standard x-translation of a modal formula."""
    fresh = _fresh_names({x})

    def translate(node: ml.ModalFormula, var: str) -> fol.FOFormula:
        match node:
            case ml.Prop(index):
                return fol.Pred(index, var)
            case ml.And(left, right):
                return fol.And(translate(left, var), translate(right, var))
            case ml.Neg(body):
                return fol.Neg(translate(body, var))
            case ml.Box(body):
                y = next(fresh)
                return fol.Forall(y, fol.Imp(fol.Rel(var, y), translate(body, y)))
        raise TypeError(f"not a modal formula: {node!r}")

    return translate(m, x)
