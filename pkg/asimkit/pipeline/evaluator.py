"""Truth evaluation on finite models.

- ``fo_eval`` / ``holds_at``: classical satisfaction, quantifiers range over the worlds
- ``forces``: Kripke forcing for intuitionistic formulas
- ``modal_sat``: modal satisfaction, box ranges over R-successors

The implication clause of forcing looks at R-successors only, so forcing agrees
with evaluating the standard translation on every finite model, reflexive or not.
"""

import logging
from typing import Mapping

from asimkit.data.models import Model, PointedModel
from asimkit.errors import EvaluationError
from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml
from asimkit.formulas.measures import free_variables, vocabulary_of

logger = logging.getLogger(__name__)

Assignment = Mapping[str, str]


def _satisfies(model: Model, env: dict, phi: fol.FOFormula) -> bool:
    match phi:
        case fol.Pred(letter, var):
            return model.holds(letter, env[var])
        case fol.Rel(left, right):
            return env[right] in model.successors(env[left])
        case fol.Eq(left, right):
            return env[left] == env[right]
        case fol.Neg(body):
            return not _satisfies(model, env, body)
        case fol.And(left, right):
            return _satisfies(model, env, left) and _satisfies(model, env, right)
        case fol.Or(left, right):
            return _satisfies(model, env, left) or _satisfies(model, env, right)
        case fol.Imp(left, right):
            return not _satisfies(model, env, left) or _satisfies(model, env, right)
        case fol.Forall(var, body):
            return all(_satisfies(model, {**env, var: w}, body) for w in model.worlds)
        case fol.Exists(var, body):
            return any(_satisfies(model, {**env, var: w}, body) for w in model.worlds)
    raise TypeError(f"not a first-order formula: {phi!r}")


def fo_eval(model: Model, assignment: Assignment, phi: fol.FOFormula) -> bool:
    """Classical satisfaction of ``phi`` in ``model`` under ``assignment``."""
    extra = vocabulary_of(phi) - model.vocab
    if extra:
        raise EvaluationError(
            f"formula uses letters {sorted(extra)} outside the model vocabulary {sorted(model.vocab)}"
        )
    unbound = free_variables(phi) - set(assignment)
    if unbound:
        raise EvaluationError(f"free variables {sorted(unbound)} have no assigned world")
    for var, world in assignment.items():
        if world not in model:
            raise EvaluationError(f"variable {var} is assigned to unknown world {world!r}")
    return _satisfies(model, dict(assignment), phi)


def holds_at(pointed: PointedModel, phi: fol.FOFormula) -> bool:
    """Truth of a formula with exactly one free variable at the point."""
    free = free_variables(phi)
    if len(free) != 1:
        raise EvaluationError(
            f"pointed truth needs exactly one free variable, formula has {sorted(free)}"
        )
    (var,) = free
    return fo_eval(pointed.model, {var: pointed.point}, phi)


def forces(model: Model, world: str, i: ipl.IntFormula) -> bool:
    if world not in model:
        raise EvaluationError(f"unknown world {world!r}")
    return _forces(model, world, i)


def _forces(model: Model, world: str, i: ipl.IntFormula) -> bool:
    match i:
        case ipl.Bottom():
            return False
        case ipl.Prop(index):
            return model.holds(index, world)
        case ipl.And(left, right):
            return _forces(model, world, left) and _forces(model, world, right)
        case ipl.Or(left, right):
            return _forces(model, world, left) or _forces(model, world, right)
        case ipl.Imp(left, right):
            return all(
                not _forces(model, v, left) or _forces(model, v, right)
                for v in model.successors(world)
            )
    raise TypeError(f"not an intuitionistic formula: {i!r}")


def truth_set(model: Model, i: ipl.IntFormula) -> frozenset[str]:
    """Worlds of ``model`` forcing ``i``, computed bottom-up."""
    match i:
        case ipl.Bottom():
            return frozenset()
        case ipl.Prop(index):
            return model.extension(index)
        case ipl.And(left, right):
            return truth_set(model, left) & truth_set(model, right)
        case ipl.Or(left, right):
            return truth_set(model, left) | truth_set(model, right)
        case ipl.Imp(left, right):
            bad = truth_set(model, left) - truth_set(model, right)
            return frozenset(w for w in model.worlds if not model.successors(w) & bad)
    raise TypeError(f"not an intuitionistic formula: {i!r}")


def modal_sat(model: Model, world: str, m: ml.ModalFormula) -> bool:
    if world not in model:
        raise EvaluationError(f"unknown world {world!r}")
    return _modal_sat(model, world, m)


def _modal_sat(model: Model, world: str, m: ml.ModalFormula) -> bool:
    match m:
        case ml.Prop(index):
            return model.holds(index, world)
        case ml.And(left, right):
            return _modal_sat(model, world, left) and _modal_sat(model, world, right)
        case ml.Neg(body):
            return not _modal_sat(model, world, body)
        case ml.Box(body):
            return all(_modal_sat(model, v, body) for v in model.successors(world))
    raise TypeError(f"not a modal formula: {m!r}")
