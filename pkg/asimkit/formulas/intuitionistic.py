"""Abstract syntax of intuitionistic propositional formulas.

Connectives are exactly bottom, indexed letters, conjunction, disjunction and
implication. Negation is not primitive; ``neg(i)`` builds ``i -> false``.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Prop:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"proposition index must be a positive integer, got {self.index!r}")


@dataclass(frozen=True)
class And:
    left: "IntFormula"
    right: "IntFormula"


@dataclass(frozen=True)
class Or:
    left: "IntFormula"
    right: "IntFormula"


@dataclass(frozen=True)
class Imp:
    left: "IntFormula"
    right: "IntFormula"


IntFormula = Union[Bottom, Prop, And, Or, Imp]

BINARY = (And, Or, Imp)


def top() -> Imp:
    """The canonical always-forced formula ``false -> false``."""
    return Imp(Bottom(), Bottom())


def neg(body: IntFormula) -> Imp:
    return Imp(body, Bottom())


def conjunction(items: Iterable[IntFormula]) -> IntFormula:
    """Left-nested conjunction; the empty conjunction is ``top()``."""
    items = list(items)
    if not items:
        return top()
    return reduce(And, items)


def disjunction(items: Iterable[IntFormula]) -> IntFormula:
    """Left-nested disjunction; the empty disjunction is ``Bottom()``."""
    items = list(items)
    if not items:
        return Bottom()
    return reduce(Or, items)
