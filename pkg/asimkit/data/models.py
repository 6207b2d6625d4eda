"""Finite Kripke-style models over {R, P1, P2, ...} and pointed models."""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import networkx as nx
from networkx.drawing.nx_pydot import to_pydot

from asimkit.errors import ModelFormatError
from asimkit.formulas.measures import Vocabulary


@dataclass(frozen=True, eq=False)
class Model:
    """A finite structure: worlds, the interpretation of R, and letter extensions.

    ``vocab`` is explicit so that a letter may be everywhere false yet belong to
    the model's vocabulary.
    """

    worlds: tuple[str, ...]
    rel: frozenset[tuple[str, str]]
    val: Mapping[int, frozenset[str]]
    vocab: Vocabulary
    name: str = ""
    graph: nx.DiGraph = field(init=False, repr=False)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ModelFormatError("a model needs at least one world")
        if len(set(worlds)) != len(worlds):
            dupes = sorted({w for w in worlds if worlds.count(w) > 1})
            raise ModelFormatError(f"duplicate worlds: {dupes}")
        domain = set(worlds)

        rel = frozenset((u, v) for u, v in self.rel)
        for u, v in sorted(rel):
            if u not in domain or v not in domain:
                raise ModelFormatError(f"relation entry ({u}, {v}) references an unknown world")

        vocab = frozenset(self.vocab)
        val: dict[int, frozenset[str]] = {n: frozenset() for n in sorted(vocab)}
        for letter, extension in self.val.items():
            extension = frozenset(extension)
            missing = sorted(extension - domain)
            if missing:
                raise ModelFormatError(f"P{letter} holds at unknown worlds {missing}")
            if extension and letter not in vocab:
                raise ModelFormatError(f"P{letter} has a nonempty extension but is not in the vocabulary")
            if letter in vocab:
                val[letter] = extension

        graph = nx.DiGraph()
        for w in worlds:
            graph.add_node(w, letters=frozenset(n for n, ext in val.items() if w in ext))
        graph.add_edges_from(sorted(rel))

        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "val", MappingProxyType(val))
        object.__setattr__(self, "vocab", vocab)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "_succ", {w: frozenset(graph.successors(w)) for w in worlds})

    def __contains__(self, world: str) -> bool:
        return world in self._succ

    def successors(self, world: str) -> frozenset[str]:
        return self._succ[world]

    def holds(self, letter: int, world: str) -> bool:
        return world in self.val.get(letter, ())

    def letters_at(self, world: str) -> frozenset[int]:
        return self.graph.nodes[world]["letters"]

    def extension(self, letter: int) -> frozenset[str]:
        return self.val.get(letter, frozenset())

    def pointed_models(self) -> list["PointedModel"]:
        return [PointedModel(self, w) for w in self.worlds]

    def restrict(self, sigma: Iterable[int]) -> "Model":
        """The same frame with only the letters in ``sigma``."""
        sigma = frozenset(sigma)
        if sigma == self.vocab:
            return self
        missing = sorted(sigma - self.vocab)
        if missing:
            raise ModelFormatError(f"{self.label()} has no letters {missing}")
        return Model(self.worlds, self.rel, {n: self.val[n] for n in sigma}, sigma, self.name)

    def label(self) -> str:
        return self.name or f"model@{id(self):x}"

    def __repr__(self) -> str:
        return f"Model({self.label()}, worlds={list(self.worlds)})"


@dataclass(frozen=True)
class PointedModel:
    model: Model
    point: str

    def __post_init__(self):
        if self.point not in self.model:
            raise ModelFormatError(f"point {self.point!r} is not a world of {self.model.label()}")

    def label(self) -> str:
        return f"({self.model.label()},{self.point})"


def make_model(
    worlds: Iterable[str],
    rel: Iterable[tuple[str, str]] = (),
    val: Mapping[int, Iterable[str]] | None = None,
    vocab: Iterable[int] | None = None,
    name: str = "",
) -> Model:
    """Convenience constructor; the vocabulary defaults to the letters given in ``val``."""
    val = {n: frozenset(ext) for n, ext in (val or {}).items()}
    letters = frozenset(vocab) if vocab is not None else frozenset(val)
    return Model(tuple(worlds), frozenset(rel), val, letters, name)


def is_isomorphic(first: Model, second: Model) -> bool:
    """Isomorphism of models: same vocabulary, letter-preserving digraph isomorphism."""
    if first.vocab != second.vocab or len(first.worlds) != len(second.worlds):
        return False
    return nx.is_isomorphic(
        first.graph, second.graph,
        node_match=lambda a, b: a["letters"] == b["letters"],
    )


def restrict_family(family: Iterable[PointedModel], sigma: Iterable[int]) -> list[PointedModel]:
    """Restrict every model of a pointed family to ``sigma``.

    Pointed models that shared a model still share its restriction; members
    already over ``sigma`` are returned as they are.
    """
    sigma = frozenset(sigma)
    restricted: dict[int, Model] = {}
    result = []
    for pointed in family:
        key = id(pointed.model)
        if key not in restricted:
            restricted[key] = pointed.model.restrict(sigma)
        model = restricted[key]
        result.append(pointed if model is pointed.model else PointedModel(model, pointed.point))
    return result


def _dot_id(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def to_dot(model: Model) -> str:
    """Graphviz DOT text for a model; nodes are labelled with their true letters."""
    graph = nx.DiGraph()
    for w in model.worlds:
        letters = ",".join(f"P{n}" for n in sorted(model.letters_at(w)))
        graph.add_node(_dot_id(w), label=_dot_id(f"{w}\n{letters}" if letters else w))
    graph.add_edges_from((_dot_id(u), _dot_id(v)) for u, v in sorted(model.rel))
    dot = to_pydot(graph)
    dot.set_name(_dot_id(model.label()))
    return dot.to_string()
