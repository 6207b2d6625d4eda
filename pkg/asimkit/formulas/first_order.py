"""Abstract syntax of first-order formulas over the vocabulary {R, P1, P2, ..., =}.

Only unary letters ``P<n>`` and the single binary letter ``R`` occur; variables
are plain identifier strings.
"""

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union


# Same shape as the VAR token of the first-order grammar.
_VARIABLE = re.compile(r"[a-z_][A-Za-z0-9_]*")
KEYWORDS = frozenset({"forall", "exists"})


def _check_variable(name) -> None:
    if not isinstance(name, str) or not _VARIABLE.fullmatch(name) or name in KEYWORDS:
        raise ValueError(f"not a variable name: {name!r}")


@dataclass(frozen=True)
class Pred:
    letter: int
    var: str

    def __post_init__(self):
        if not isinstance(self.letter, int) or self.letter < 1:
            raise ValueError(f"predicate index must be a positive integer, got {self.letter!r}")
        _check_variable(self.var)


@dataclass(frozen=True)
class Rel:
    left: str
    right: str

    def __post_init__(self):
        _check_variable(self.left)
        _check_variable(self.right)


@dataclass(frozen=True)
class Eq:
    left: str
    right: str

    def __post_init__(self):
        _check_variable(self.left)
        _check_variable(self.right)


@dataclass(frozen=True)
class Neg:
    body: "FOFormula"


@dataclass(frozen=True)
class And:
    left: "FOFormula"
    right: "FOFormula"


@dataclass(frozen=True)
class Or:
    left: "FOFormula"
    right: "FOFormula"


@dataclass(frozen=True)
class Imp:
    left: "FOFormula"
    right: "FOFormula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "FOFormula"

    def __post_init__(self):
        _check_variable(self.var)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "FOFormula"

    def __post_init__(self):
        _check_variable(self.var)


FOFormula = Union[Pred, Rel, Eq, Neg, And, Or, Imp, Forall, Exists]

ATOMIC = (Pred, Rel, Eq)
BINARY = (And, Or, Imp)
QUANTIFIERS = (Forall, Exists)


def negate(phi: FOFormula) -> Neg:
    return Neg(phi)


def conjoin(items: Iterable[FOFormula]) -> FOFormula:
    items = list(items)
    if not items:
        raise ValueError("cannot conjoin an empty sequence of formulas")
    return reduce(And, items)
