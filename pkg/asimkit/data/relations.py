"""Direction-tagged relations between two models.

Direction tags are relative to an ordered pair (left, right) of models: ``LR``
entries go from a left world to a right world, ``RL`` entries the other way.
Tags make the relations well defined even when both sides are the same model.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple

from asimkit.errors import RelationError


class Direction(str, Enum):
    LR = "LR"
    RL = "RL"

    @property
    def reverse(self) -> "Direction":
        return Direction.RL if self is Direction.LR else Direction.LR


class DirectedPair(NamedTuple):
    direction: Direction
    source: str
    target: str


class TupleEntry(NamedTuple):
    direction: Direction
    source: tuple[str, ...]
    target: tuple[str, ...]

    @property
    def m(self) -> int:
        """Number of coordinates before the last one."""
        return len(self.source) - 1


def _sort_key(entry):
    return (entry.direction.value, entry.source, entry.target)


@dataclass(frozen=True)
class DirectedRelation:
    entries: frozenset[DirectedPair]

    @classmethod
    def of(cls, pairs: Iterable[tuple]) -> "DirectedRelation":
        return cls(frozenset(DirectedPair(Direction(d), s, t) for d, s, t in pairs))

    def __contains__(self, item) -> bool:
        return item in self.entries

    def __iter__(self) -> Iterator[DirectedPair]:
        return iter(sorted(self.entries, key=_sort_key))

    def __len__(self) -> int:
        return len(self.entries)

    def __le__(self, other: "DirectedRelation") -> bool:
        return self.entries <= other.entries

    def __or__(self, other: "DirectedRelation") -> "DirectedRelation":
        return DirectedRelation(self.entries | other.entries)

    def pairs(self, direction: Direction) -> list[tuple[str, str]]:
        return [(e.source, e.target) for e in self if e.direction is direction]

    def swap_sides(self) -> "DirectedRelation":
        """The same relation re-tagged for the reversed (left, right) order."""
        return DirectedRelation(frozenset(
            DirectedPair(e.direction.reverse, e.source, e.target) for e in self.entries
        ))


@dataclass(frozen=True)
class TupleRelation:
    entries: frozenset[TupleEntry]

    def __post_init__(self):
        for entry in self.entries:
            if not entry.source or len(entry.source) != len(entry.target):
                raise RelationError(
                    f"tuple entry {entry.source} -> {entry.target} has mismatched or empty sequences"
                )

    @classmethod
    def of(cls, triples: Iterable[tuple]) -> "TupleRelation":
        return cls(frozenset(
            TupleEntry(Direction(d), tuple(s), tuple(t)) for d, s, t in triples
        ))

    def __contains__(self, item) -> bool:
        return item in self.entries

    def __iter__(self) -> Iterator[TupleEntry]:
        return iter(sorted(self.entries, key=lambda e: (len(e.source),) + _sort_key(e)))

    def __len__(self) -> int:
        return len(self.entries)


# A bisimulation carrier: plain pairs from left worlds to right worlds.
BisimRelation = frozenset
