"""Abstract syntax of modal propositional formulas (letters, and, not, box)."""

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Prop:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"proposition index must be a positive integer, got {self.index!r}")


@dataclass(frozen=True)
class And:
    left: "ModalFormula"
    right: "ModalFormula"


@dataclass(frozen=True)
class Neg:
    body: "ModalFormula"


@dataclass(frozen=True)
class Box:
    body: "ModalFormula"


ModalFormula = Union[Prop, And, Neg, Box]


def disjunction(left: ModalFormula, right: ModalFormula) -> ModalFormula:
    return Neg(And(Neg(left), Neg(right)))


def implication(left: ModalFormula, right: ModalFormula) -> ModalFormula:
    return Neg(And(left, Neg(right)))
