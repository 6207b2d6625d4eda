"""Asimulations and bisimulations between pointed models.

An asimulation entry (dir, s, t) relates a world s of the source side to a
world t of the target side. It must carry every letter true at s over to t, and
every R-successor t' of t must be answered by an R-successor s' of s with both
(reverse dir, t', s') and (dir, s', t') in the relation.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from asimkit.data.models import Model, PointedModel
from asimkit.data.relations import BisimRelation, Direction, DirectedPair, DirectedRelation
from asimkit.errors import RelationError

logger = logging.getLogger(__name__)


class ViolationKind(str, Enum):
    ROOT_MISSING = "RootMissing"
    ATOM_FORWARD = "AtomForward"
    STEP_BACK = "StepBack"
    STEP_FORTH = "StepForth"


@dataclass(frozen=True)
class Violation:
    """A re-checkable reason a relation fails.

    ``entry`` is the offending relation entry, ``letter`` the letter that is not
    carried over, ``successor`` the unanswered successor world.
    """

    kind: ViolationKind
    entry: tuple
    letter: int | None = None
    successor: str | None = None

    def to_dict(self) -> dict:
        entry = list(self.entry)
        if isinstance(entry[0], Direction):
            entry[0] = entry[0].value
        entry = [list(part) if isinstance(part, tuple) else part for part in entry]
        result = {"kind": self.kind.value, "entry": entry}
        if self.letter is not None:
            result["letter"] = f"P{self.letter}"
        if self.successor is not None:
            result["successor"] = self.successor
        return result

    def __str__(self) -> str:
        detail = ""
        if self.letter is not None:
            detail = f" (P{self.letter})"
        elif self.successor is not None:
            detail = f" (successor {self.successor})"
        return f"{self.kind.value} at {self.to_dict()['entry']}{detail}"


@dataclass(frozen=True)
class CheckResult:
    violation: Violation | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        if self.ok:
            return {"verdict": "ok"}
        return {"verdict": "violation", **self.violation.to_dict()}


OK = CheckResult()


def shared_vocabulary(left: Model, right: Model, sigma: Iterable[int] | None = None) -> frozenset[int]:
    return frozenset(sigma) if sigma is not None else left.vocab | right.vocab


def sides(direction: Direction, left: Model, right: Model) -> tuple[Model, Model]:
    """(source model, target model) for entries tagged ``direction``."""
    return (left, right) if direction is Direction.LR else (right, left)


def missing_letter(source: Model, s: str, target: Model, t: str, sigma: Iterable[int]) -> int | None:
    """Least letter of ``sigma`` true at s but false at t, if any."""
    for n in sorted(sigma):
        if source.holds(n, s) and not target.holds(n, t):
            return n
    return None


def atom_respecting(left: Model, right: Model, sigma: Iterable[int]) -> DirectedRelation:
    """Every directed pair satisfying the atom-forward condition."""
    entries = set()
    for direction in Direction:
        source, target = sides(direction, left, right)
        for s in source.worlds:
            for t in target.worlds:
                if missing_letter(source, s, target, t, sigma) is None:
                    entries.add(DirectedPair(direction, s, t))
    return DirectedRelation(frozenset(entries))


def unanswered_successor(
    entry: DirectedPair, left: Model, right: Model, answers: DirectedRelation
) -> str | None:
    """First target-side successor whose challenge has no answer inside ``answers``."""
    source, target = sides(entry.direction, left, right)
    reverse = entry.direction.reverse
    source_succ = sorted(source.successors(entry.source))
    for t2 in sorted(target.successors(entry.target)):
        if not any(
            DirectedPair(reverse, t2, s2) in answers and DirectedPair(entry.direction, s2, t2) in answers
            for s2 in source_succ
        ):
            return t2
    return None


def _validate_entries(relation: DirectedRelation, left: Model, right: Model) -> None:
    for entry in relation:
        source, target = sides(entry.direction, left, right)
        if entry.source not in source or entry.target not in target:
            raise RelationError(
                f"relation entry {entry.direction.value}:({entry.source},{entry.target}) "
                f"references worlds outside the models"
            )


def check_asimulation(
    left: PointedModel,
    right: PointedModel,
    relation: DirectedRelation,
    sigma: Iterable[int] | None = None,
) -> CheckResult:
    """Check that ``relation`` is an asimulation from ``left`` to ``right``."""
    sigma = shared_vocabulary(left.model, right.model, sigma)
    _validate_entries(relation, left.model, right.model)
    root = DirectedPair(Direction.LR, left.point, right.point)
    if root not in relation:
        return CheckResult(Violation(ViolationKind.ROOT_MISSING, root))
    for entry in relation:
        source, target = sides(entry.direction, left.model, right.model)
        letter = missing_letter(source, entry.source, target, entry.target, sigma)
        if letter is not None:
            return CheckResult(Violation(ViolationKind.ATOM_FORWARD, entry, letter=letter))
        successor = unanswered_successor(entry, left.model, right.model, relation)
        if successor is not None:
            return CheckResult(Violation(ViolationKind.STEP_BACK, entry, successor=successor))
    return OK


def greatest_asimulation(left: Model, right: Model, sigma: Iterable[int] | None = None) -> DirectedRelation:
    """Largest relation whose entries all satisfy atom-forward and the back-step inside itself."""
    sigma = shared_vocabulary(left, right, sigma)
    current = atom_respecting(left, right, sigma)
    rounds = 0
    while True:
        removed = [e for e in current if unanswered_successor(e, left, right, current) is not None]
        if not removed:
            break
        rounds += 1
        current = DirectedRelation(current.entries - frozenset(removed))
        logger.debug("Asimulation refinement round %d removed %d entries", rounds, len(removed))
    return current


def exists_asimulation(left: PointedModel, right: PointedModel, sigma: Iterable[int] | None = None) -> bool:
    greatest = greatest_asimulation(left.model, right.model, sigma)
    return DirectedPair(Direction.LR, left.point, right.point) in greatest


# ---------------------------------------------------------------------------
# Bisimulation
# ---------------------------------------------------------------------------

def _letters_differ(left: Model, a: str, right: Model, b: str, sigma: Iterable[int]) -> int | None:
    for n in sorted(sigma):
        if left.holds(n, a) != right.holds(n, b):
            return n
    return None


def check_bisimulation(
    left: PointedModel,
    right: PointedModel,
    relation: BisimRelation,
    sigma: Iterable[int] | None = None,
) -> CheckResult:
    """Check atoms (both ways), zig and zag for a left-to-right relation."""
    lm, rm = left.model, right.model
    sigma = shared_vocabulary(lm, rm, sigma)
    for a, b in relation:
        if a not in lm or b not in rm:
            raise RelationError(f"bisimulation pair ({a},{b}) references worlds outside the models")
    root = (left.point, right.point)
    if root not in relation:
        return CheckResult(Violation(ViolationKind.ROOT_MISSING, root))
    for a, b in sorted(relation):
        letter = _letters_differ(lm, a, rm, b, sigma)
        if letter is not None:
            return CheckResult(Violation(ViolationKind.ATOM_FORWARD, (a, b), letter=letter))
        for a2 in sorted(lm.successors(a)):
            if not any((a2, b2) in relation for b2 in rm.successors(b)):
                return CheckResult(Violation(ViolationKind.STEP_FORTH, (a, b), successor=a2))
        for b2 in sorted(rm.successors(b)):
            if not any((a2, b2) in relation for a2 in lm.successors(a)):
                return CheckResult(Violation(ViolationKind.STEP_BACK, (a, b), successor=b2))
    return OK


def greatest_bisimulation(left: Model, right: Model, sigma: Iterable[int] | None = None) -> BisimRelation:
    """Coarsest relation with equal letters, zig and zag, by iterated refinement."""
    sigma = shared_vocabulary(left, right, sigma)
    current = {
        (a, b) for a in left.worlds for b in right.worlds
        if _letters_differ(left, a, right, b, sigma) is None
    }
    while True:
        removed = {
            (a, b) for a, b in current
            if not all(any((a2, b2) in current for b2 in right.successors(b)) for a2 in left.successors(a))
            or not all(any((a2, b2) in current for a2 in left.successors(a)) for b2 in right.successors(b))
        }
        if not removed:
            return frozenset(current)
        logger.debug("Bisimulation refinement removed %d pairs", len(removed))
        current -= removed


def bisim_to_asim(relation: BisimRelation) -> DirectedRelation:
    """The relation together with its converse, as direction-tagged entries."""
    entries = set()
    for a, b in relation:
        entries.add(DirectedPair(Direction.LR, a, b))
        entries.add(DirectedPair(Direction.RL, b, a))
    return DirectedRelation(frozenset(entries))
