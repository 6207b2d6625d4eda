"""k-asimulations: the stratified chain, tuple-form checking, lifting and the oracle.

Tuple entries (dir, (a_0..a_m), (b_0..b_m)) are constrained only through their
last coordinates and the length bound m < k. Existence of a tuple-form
k-asimulation therefore reduces to membership of the root in the k-th layer of
a descending chain S_0 ⊇ S_1 ⊇ ... of directed pair relations. The brute-force
search below works on tuples directly and is used to cross-check that reduction.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from asimkit.config import BRUTE_FORCE_MAX_K, BRUTE_FORCE_MAX_WORLDS
from asimkit.data.models import Model, PointedModel
from asimkit.data.relations import Direction, DirectedPair, DirectedRelation, TupleEntry, TupleRelation
from asimkit.errors import BudgetExceededError, RelationError
from asimkit.pipeline.simulation import (
    OK,
    CheckResult,
    Violation,
    ViolationKind,
    atom_respecting,
    missing_letter,
    shared_vocabulary,
    sides,
    unanswered_successor,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StratifiedFamily:
    """Layers S_0 .. S_k; S_j holds the entries that survive j rounds of challenges."""

    layers: tuple[DirectedRelation, ...]

    @property
    def k(self) -> int:
        return len(self.layers) - 1

    def __getitem__(self, j: int) -> DirectedRelation:
        return self.layers[j]

    def __len__(self) -> int:
        return len(self.layers)

    @property
    def top(self) -> DirectedRelation:
        return self.layers[-1]

    def is_descending(self) -> bool:
        return all(later <= earlier for earlier, later in zip(self.layers, self.layers[1:]))


def stratified_k_asim(
    left: Model, right: Model, k: int, sigma: Iterable[int] | None = None
) -> StratifiedFamily:
    if k < 0:
        raise ValueError("k must be non-negative")
    sigma = shared_vocabulary(left, right, sigma)
    base = atom_respecting(left, right, sigma)
    layers = [base]
    for j in range(k):
        previous = layers[-1]
        if j and previous == layers[-2]:
            layers.append(previous)
            continue
        layers.append(DirectedRelation(frozenset(
            e for e in base if unanswered_successor(e, left, right, previous) is None
        )))
        logger.debug("Layer S_%d has %d entries", j + 1, len(layers[-1]))
    return StratifiedFamily(tuple(layers))


def exists_k_asimulation(
    left: PointedModel, right: PointedModel, k: int, sigma: Iterable[int] | None = None
) -> bool:
    family = stratified_k_asim(left.model, right.model, k, sigma)
    return DirectedPair(Direction.LR, left.point, right.point) in family.top


def k_asimulation_witness(
    left: PointedModel, right: PointedModel, k: int, sigma: Iterable[int] | None = None
) -> TupleRelation | None:
    """An explicit tuple-form k-asimulation read off the stratified chain, or None.

    Only entries reachable from the root are included; an entry of length m+1
    has its last pair in S_{k-m}.
    """
    lm, rm = left.model, right.model
    family = stratified_k_asim(lm, rm, k, sigma)
    if DirectedPair(Direction.LR, left.point, right.point) not in family.top:
        return None
    root = TupleEntry(Direction.LR, (left.point,), (right.point,))
    entries = {root}
    frontier = [root]
    while frontier:
        entry = frontier.pop()
        if entry.m >= k:
            continue
        answers = family[k - entry.m - 1]
        source, target = sides(entry.direction, lm, rm)
        reverse = entry.direction.reverse
        for t2 in sorted(target.successors(entry.target[-1])):
            s2 = next(
                s2 for s2 in sorted(source.successors(entry.source[-1]))
                if DirectedPair(reverse, t2, s2) in answers
                and DirectedPair(entry.direction, s2, t2) in answers
            )
            for extended in (
                TupleEntry(reverse, entry.target + (t2,), entry.source + (s2,)),
                TupleEntry(entry.direction, entry.source + (s2,), entry.target + (t2,)),
            ):
                if extended not in entries:
                    entries.add(extended)
                    frontier.append(extended)
    return TupleRelation(frozenset(entries))


def _validate_tuples(relation: TupleRelation, left: Model, right: Model) -> None:
    for entry in relation:
        source, target = sides(entry.direction, left, right)
        if not all(w in source for w in entry.source) or not all(w in target for w in entry.target):
            raise RelationError(
                f"tuple entry {entry.direction.value}:({entry.source},{entry.target}) "
                f"references worlds outside the models"
            )


def check_k_asimulation_tuples(
    left: PointedModel,
    right: PointedModel,
    relation: TupleRelation,
    k: int,
    sigma: Iterable[int] | None = None,
) -> CheckResult:
    """Check the tuple-form conditions: root, atoms on last coordinates, steps while m < k."""
    lm, rm = left.model, right.model
    sigma = shared_vocabulary(lm, rm, sigma)
    _validate_tuples(relation, lm, rm)
    root = TupleEntry(Direction.LR, (left.point,), (right.point,))
    if root not in relation:
        return CheckResult(Violation(ViolationKind.ROOT_MISSING, root))
    for entry in relation:
        source, target = sides(entry.direction, lm, rm)
        s, t = entry.source[-1], entry.target[-1]
        letter = missing_letter(source, s, target, t, sigma)
        if letter is not None:
            return CheckResult(Violation(ViolationKind.ATOM_FORWARD, entry, letter=letter))
        if entry.m >= k:
            continue
        reverse = entry.direction.reverse
        for t2 in sorted(target.successors(t)):
            if not any(
                TupleEntry(reverse, entry.target + (t2,), entry.source + (s2,)) in relation
                and TupleEntry(entry.direction, entry.source + (s2,), entry.target + (t2,)) in relation
                for s2 in sorted(source.successors(s))
            ):
                return CheckResult(Violation(ViolationKind.STEP_BACK, entry, successor=t2))
    return OK


def lift_asimulation(
    relation: DirectedRelation, max_len: int, left: Model, right: Model
) -> TupleRelation:
    """Every directed sequence pair of length <= max_len whose last coordinates are related."""
    entries = set()
    for entry in relation:
        source, target = sides(entry.direction, left, right)
        for length in range(1, max_len + 1):
            for prefix_s in itertools.product(source.worlds, repeat=length - 1):
                for prefix_t in itertools.product(target.worlds, repeat=length - 1):
                    entries.add(TupleEntry(
                        entry.direction, prefix_s + (entry.source,), prefix_t + (entry.target,)
                    ))
    return TupleRelation(frozenset(entries))


def brute_force_k_asim_witness(
    left: PointedModel, right: PointedModel, k: int, sigma: Iterable[int] | None = None
) -> TupleRelation | None:
    """Search tuple relations directly: closure construction from the root, no stratification."""
    lm, rm = left.model, right.model
    if len(lm.worlds) > BRUTE_FORCE_MAX_WORLDS or len(rm.worlds) > BRUTE_FORCE_MAX_WORLDS:
        raise BudgetExceededError(f"brute-force search allows at most {BRUTE_FORCE_MAX_WORLDS} worlds per side")
    if k > BRUTE_FORCE_MAX_K:
        raise BudgetExceededError(f"brute-force search allows k <= {BRUTE_FORCE_MAX_K}")
    sigma = shared_vocabulary(lm, rm, sigma)

    def extensions(entry: TupleEntry, t2: str, s2: str) -> tuple[TupleEntry, TupleEntry]:
        return (
            TupleEntry(entry.direction.reverse, entry.target + (t2,), entry.source + (s2,)),
            TupleEntry(entry.direction, entry.source + (s2,), entry.target + (t2,)),
        )

    @lru_cache(maxsize=None)
    def satisfiable(entry: TupleEntry) -> bool:
        source, target = sides(entry.direction, lm, rm)
        s, t = entry.source[-1], entry.target[-1]
        if missing_letter(source, s, target, t, sigma) is not None:
            return False
        if entry.m >= k:
            return True
        return all(
            any(all(map(satisfiable, extensions(entry, t2, s2))) for s2 in sorted(source.successors(s)))
            for t2 in sorted(target.successors(t))
        )

    root = TupleEntry(Direction.LR, (left.point,), (right.point,))
    if not satisfiable(root):
        return None
    entries = set()

    def collect(entry: TupleEntry) -> None:
        if entry in entries:
            return
        entries.add(entry)
        if entry.m >= k:
            return
        source, target = sides(entry.direction, lm, rm)
        for t2 in sorted(target.successors(entry.target[-1])):
            for s2 in sorted(source.successors(entry.source[-1])):
                pair = extensions(entry, t2, s2)
                if all(map(satisfiable, pair)):
                    for extended in pair:
                        collect(extended)
                    break

    collect(root)
    return TupleRelation(frozenset(entries))


def brute_force_k_asim(
    left: PointedModel, right: PointedModel, k: int, sigma: Iterable[int] | None = None
) -> bool:
    """True iff some tuple relation passes ``check_k_asimulation_tuples``."""
    witness = brute_force_k_asim_witness(left, right, k, sigma)
    return witness is not None and check_k_asimulation_tuples(left, right, witness, k, sigma).ok
