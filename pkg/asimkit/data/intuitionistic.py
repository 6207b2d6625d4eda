"""Intuitionistic models: reflexive, transitive frames with persistent letters."""

from dataclasses import dataclass, field
from typing import Iterable

from asimkit.data.models import Model
from asimkit.formulas.first_order import And, Forall, FOFormula, Imp, Pred, Rel


@dataclass(frozen=True)
class IntuitionisticReport:
    """Outcome of checking a model against the intuitionistic frame conditions.

    Every failure carries its witnesses: non-reflexive worlds, triples (u, v, w)
    with uRv, vRw and not uRw, and triples (letter, u, v) with uRv, P(u), not P(v).
    """

    non_reflexive: tuple[str, ...] = ()
    non_transitive: tuple[tuple[str, str, str], ...] = ()
    non_persistent: tuple[tuple[int, str, str], ...] = ()
    letters: tuple[int, ...] = field(default=())

    @property
    def reflexive(self) -> bool:
        return not self.non_reflexive

    @property
    def transitive(self) -> bool:
        return not self.non_transitive

    def persistent(self, letter: int | None = None) -> bool:
        if letter is None:
            return not self.non_persistent
        return all(p != letter for p, _, _ in self.non_persistent)

    @property
    def ok(self) -> bool:
        return self.reflexive and self.transitive and self.persistent()

    def to_dict(self) -> dict:
        return {
            "intuitionistic": self.ok,
            "reflexive": {"ok": self.reflexive, "witnesses": list(self.non_reflexive)},
            "transitive": {"ok": self.transitive, "witnesses": [list(t) for t in self.non_transitive]},
            "persistent": {
                f"P{n}": {
                    "ok": self.persistent(n),
                    "witnesses": [[u, v] for p, u, v in self.non_persistent if p == n],
                }
                for n in self.letters
            },
        }


def validate_intuitionistic(model: Model) -> IntuitionisticReport:
    """Exhaustively check reflexivity, transitivity and persistence of every vocabulary letter."""
    worlds = model.worlds
    non_reflexive = tuple(w for w in worlds if w not in model.successors(w))
    non_transitive = tuple(
        (u, v, w)
        for u in worlds
        for v in sorted(model.successors(u))
        for w in sorted(model.successors(v))
        if w not in model.successors(u)
    )
    letters = tuple(sorted(model.vocab))
    non_persistent = tuple(
        (n, u, v)
        for n in letters
        for u, v in sorted(model.rel)
        if model.holds(n, u) and not model.holds(n, v)
    )
    return IntuitionisticReport(non_reflexive, non_transitive, non_persistent, letters)


def int_axioms(sigma: Iterable[int]) -> list[FOFormula]:
    """The sentences axiomatising intuitionistic models over ``sigma``.

    Reflexivity, transitivity, then one persistence sentence per letter in
    increasing index order.
    """
    axioms: list[FOFormula] = [
        Forall("y", Rel("y", "y")),
        Forall("y", Forall("z", Forall("w", Imp(
            And(Rel("y", "z"), Rel("z", "w")),
            Rel("y", "w"),
        )))),
    ]
    for n in sorted(set(sigma)):
        axioms.append(Forall("y", Forall("z", Imp(
            And(Pred(n, "y"), Rel("y", "z")),
            Pred(n, "z"),
        ))))
    return axioms
