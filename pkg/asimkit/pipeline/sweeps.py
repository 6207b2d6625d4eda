"""Property sweeps over enumerated model families.

Each sweep returns a dict with the number of cases ``checked`` and a list of
``discrepancies`` (human-readable, empty when the property holds).
"""

import itertools
import logging
from typing import Iterable, Sequence

import numpy as np

from asimkit.config import LIFT_MAX_K
from asimkit.data.intuitionistic import int_axioms, validate_intuitionistic
from asimkit.data.models import Model, PointedModel, is_isomorphic
from asimkit.data.relations import Direction, DirectedPair, DirectedRelation
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml
from asimkit.formulas.printer import render
from asimkit.formulas.translation import st, tr
from asimkit.pipeline.evaluator import fo_eval, forces, holds_at, modal_sat, truth_set
from asimkit.pipeline.invariance import Repertoire, synthesize
from asimkit.pipeline.k_asimulation import (
    brute_force_k_asim,
    check_k_asimulation_tuples,
    lift_asimulation,
    stratified_k_asim,
)
from asimkit.pipeline.signatures import SignatureTable
from asimkit.pipeline.simulation import (
    bisim_to_asim,
    check_asimulation,
    check_bisimulation,
    greatest_asimulation,
    greatest_bisimulation,
)

logger = logging.getLogger(__name__)


def _result(name: str, checked: int, discrepancies: list[str]) -> dict:
    if discrepancies:
        logger.warning("%s: %d discrepancies in %d cases", name, len(discrepancies), checked)
    else:
        logger.info("%s: %d cases, no discrepancies", name, checked)
    return {"checked": checked, "discrepancies": discrepancies}


def modal_formulas(sigma: Iterable[int], depth: int) -> list[ml.ModalFormula]:
    """A small deterministic stock of modal formulas up to box depth ``depth``."""
    formulas: list[ml.ModalFormula] = [ml.Prop(n) for n in sorted(sigma)]
    for _ in range(depth):
        layer = formulas + [ml.Neg(f) for f in formulas]
        formulas = list(dict.fromkeys(layer + [ml.Box(f) for f in layer]))
    head = formulas[:4]
    formulas += [ml.And(a, ml.Neg(b)) for a, b in itertools.product(head, head) if a != b]
    return list(dict.fromkeys(formulas))


def isomorphism_free(models: Sequence[Model]) -> dict:
    discrepancies = []
    checked = 0
    for first, second in itertools.combinations(models, 2):
        if len(first.worlds) != len(second.worlds):
            continue
        checked += 1
        if is_isomorphic(first, second):
            discrepancies.append(f"{first.label()} ~ {second.label()}")
    return _result("isomorphism_free", checked, discrepancies)


def st_adequacy(models: Sequence[Model], formulas: Sequence[ipl.IntFormula]) -> dict:
    """Forcing agrees with evaluating the standard translation, world by world."""
    discrepancies = []
    checked = 0
    translated = [(i, st(i)) for i in formulas]
    for model in models:
        for w in model.worlds:
            pointed = PointedModel(model, w)
            for i, phi in translated:
                checked += 1
                if forces(model, w, i) != holds_at(pointed, phi):
                    discrepancies.append(f"{render(i)} at {pointed.label()}")
    return _result("st_adequacy", checked, discrepancies)


def tr_adequacy(models: Sequence[Model], formulas: Sequence[ml.ModalFormula]) -> dict:
    discrepancies = []
    checked = 0
    translated = [(m, tr(m)) for m in formulas]
    for model in models:
        for w in model.worlds:
            pointed = PointedModel(model, w)
            for m, phi in translated:
                checked += 1
                if modal_sat(model, w, m) != holds_at(pointed, phi):
                    discrepancies.append(f"{render(m)} at {pointed.label()}")
    return _result("tr_adequacy", checked, discrepancies)


def persistence(models: Sequence[Model], formulas: Sequence[ipl.IntFormula]) -> dict:
    """On intuitionistic models every forced formula stays forced along R."""
    discrepancies = []
    checked = 0
    for model in models:
        if not validate_intuitionistic(model).ok:
            continue
        for i in formulas:
            forced = truth_set(model, i)
            for u, v in sorted(model.rel):
                checked += 1
                if u in forced and v not in forced:
                    discrepancies.append(f"{render(i)} lost from {u} to {v} in {model.label()}")
    return _result("persistence", checked, discrepancies)


def axiom_agreement(models: Sequence[Model]) -> dict:
    """validate_intuitionistic passes exactly when every axiom sentence holds."""
    discrepancies = []
    for model in models:
        axioms = int_axioms(model.vocab)
        if validate_intuitionistic(model).ok != all(fo_eval(model, {}, ax) for ax in axioms):
            discrepancies.append(model.label())
    return _result("axiom_agreement", len(models), discrepancies)


def _by_model_pair(family: Sequence[PointedModel]):
    """Group ordered pointed pairs by their ordered model pair."""
    groups: dict = {}
    for source in family:
        for target in family:
            key = (id(source.model), id(target.model))
            groups.setdefault(key, []).append((source, target))
    return groups.values()


def oracle_agreement(family: Sequence[PointedModel], ks: Sequence[int]) -> dict:
    """Stratified k-asimulation existence agrees with the tuple-level search."""
    discrepancies = []
    checked = 0
    top = max(ks)
    for pairs in _by_model_pair(family):
        chain = stratified_k_asim(pairs[0][0].model, pairs[0][1].model, top)
        for source, target in pairs:
            root = DirectedPair(Direction.LR, source.point, target.point)
            for k in ks:
                checked += 1
                if (root in chain[k]) != brute_force_k_asim(source, target, k):
                    discrepancies.append(f"k={k}: {source.label()} -> {target.label()}")
    return _result("oracle_agreement", checked, discrepancies)


def preservation(family: Sequence[PointedModel], repertoire: Repertoire, depth: int) -> dict:
    """Related pointed models carry every depth-bounded formula from source to target.

    Asimulations preserve every representative; k-asimulations those of depth <= k.
    """
    depths = np.array([e.depth for e in repertoire.upto(depth)])
    matrix = repertoire.truth_matrix(family, depth)
    column = {id(p): i for i, p in enumerate(family)}
    discrepancies = []
    checked = 0
    for pairs in _by_model_pair(family):
        lm, rm = pairs[0][0].model, pairs[0][1].model
        greatest = greatest_asimulation(lm, rm)
        chain = stratified_k_asim(lm, rm, depth)
        for source, target in pairs:
            root = DirectedPair(Direction.LR, source.point, target.point)
            lost = matrix[:, column[id(source)]] & ~matrix[:, column[id(target)]]
            if root in greatest:
                checked += 1
                if lost.any():
                    discrepancies.append(f"asim: {source.label()} -> {target.label()}")
            for k in range(depth + 1):
                if root in chain[k]:
                    checked += 1
                    if (lost & (depths <= k)).any():
                        discrepancies.append(f"k={k}: {source.label()} -> {target.label()}")
    return _result("preservation", checked, discrepancies)


def construction_lemmas(models: Sequence[Model], max_k: int = LIFT_MAX_K) -> dict:
    """Lifting of greatest asimulations and the E-union-converse construction of bisimulations."""
    discrepancies = []
    checked = 0
    for lm, rm in itertools.product(models, repeat=2):
        greatest = greatest_asimulation(lm, rm)
        roots = greatest.pairs(Direction.LR)
        lifted = {k: lift_asimulation(greatest, k + 1, lm, rm) for k in range(max_k + 1)} if roots else {}
        for a, b in roots:
            left, right = PointedModel(lm, a), PointedModel(rm, b)
            checked += 1
            if not check_asimulation(left, right, greatest):
                discrepancies.append(f"gfp unsound: {left.label()} -> {right.label()}")
            for k, tuples in lifted.items():
                checked += 1
                if not check_k_asimulation_tuples(left, right, tuples, k):
                    discrepancies.append(f"lift k={k}: {left.label()} -> {right.label()}")

        bisim = greatest_bisimulation(lm, rm)
        asim = bisim_to_asim(bisim)
        for a, b in sorted(bisim):
            left, right = PointedModel(lm, a), PointedModel(rm, b)
            checked += 3
            if not check_bisimulation(left, right, bisim):
                discrepancies.append(f"bisim gfp unsound: {left.label()} -> {right.label()}")
            if not check_asimulation(left, right, asim):
                discrepancies.append(f"E u E^-1: {left.label()} -> {right.label()}")
            if not check_asimulation(right, left, asim.swap_sides()):
                discrepancies.append(f"E u E^-1 reversed: {right.label()} -> {left.label()}")
    return _result("construction_lemmas", checked, discrepancies)


def fixpoint_algebra(models: Sequence[Model], k: int = 3, max_entries: int = 8) -> dict:
    """Chains descend, existence is antitone in k, and checked relations sit inside the gfp.

    The containment is tested on every relation over model pairs with at most
    ``max_entries`` possible directed entries.
    """
    discrepancies = []
    checked = 0
    for lm, rm in itertools.product(models, repeat=2):
        chain = stratified_k_asim(lm, rm, k)
        checked += 1
        if not chain.is_descending():
            discrepancies.append(f"chain not descending: {lm.label()}, {rm.label()}")
        greatest = greatest_asimulation(lm, rm)
        if not greatest <= chain.top:
            discrepancies.append(f"gfp outside S_{k}: {lm.label()}, {rm.label()}")

        possible = [DirectedPair(Direction.LR, a, b) for a in lm.worlds for b in rm.worlds]
        possible += [DirectedPair(Direction.RL, b, a) for a in lm.worlds for b in rm.worlds]
        if len(possible) > max_entries:
            continue
        for r in range(1, len(possible) + 1):
            for subset in itertools.combinations(possible, r):
                relation = DirectedRelation(frozenset(subset))
                for a, b in relation.pairs(Direction.LR):
                    checked += 1
                    ok = check_asimulation(PointedModel(lm, a), PointedModel(rm, b), relation).ok
                    if ok and not relation <= greatest:
                        discrepancies.append(f"checked relation outside gfp: {lm.label()}, {rm.label()}")
    return _result("fixpoint_algebra", checked, discrepancies)


def synthesis_roundtrip(repertoire: Repertoire, family: Sequence[PointedModel], k: int = 1) -> dict:
    """Synthesising from st(i) gives back a formula with the same signature as i."""
    table = SignatureTable(family)
    discrepancies = []
    entries = repertoire.upto(k)
    for entry in entries:
        result = synthesize(st(entry.representative), k, family, repertoire)
        if result is None or table.signature(result) != table.signature(entry.representative):
            discrepancies.append(render(entry.representative))
    return _result("synthesis_roundtrip", len(entries), discrepancies)
