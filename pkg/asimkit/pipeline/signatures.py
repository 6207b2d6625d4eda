"""Truth signatures of intuitionistic formulas over a family of pointed models.

All worlds of all distinct models in the family are laid out side by side; the
accessibility relations form one block-diagonal boolean matrix. A formula's
extension is then a boolean vector, and implication is a single matrix test:
a world forces i -> j iff none of its successors is in ext(i) minus ext(j).
"""

from typing import Dict, Sequence

import numpy as np

from asimkit.data.models import Model, PointedModel
from asimkit.formulas import intuitionistic as ipl


class SignatureTable:
    def __init__(self, family: Sequence[PointedModel]):
        self.family = tuple(family)
        models: list[Model] = []
        offsets: Dict[int, int] = {}
        total = 0
        for pointed in self.family:
            if id(pointed.model) not in offsets:
                offsets[id(pointed.model)] = total
                models.append(pointed.model)
                total += len(pointed.model.worlds)
        self.size = total

        index: Dict[tuple[int, str], int] = {}
        for model in models:
            base = offsets[id(model)]
            for i, w in enumerate(model.worlds):
                index[(id(model), w)] = base + i

        self.adjacency = np.zeros((total, total), dtype=bool)
        letters = sorted(set().union(*(m.vocab for m in models))) if models else []
        self.letters = {n: np.zeros(total, dtype=bool) for n in letters}
        for model in models:
            for u, v in model.rel:
                self.adjacency[index[(id(model), u)], index[(id(model), v)]] = True
            for n, extension in model.val.items():
                for w in extension:
                    self.letters[n][index[(id(model), w)]] = True

        self.points = np.array([index[(id(p.model), p.point)] for p in self.family], dtype=np.int64)
        self._cache: Dict[ipl.IntFormula, np.ndarray] = {}

    def extension(self, i: ipl.IntFormula) -> np.ndarray:
        """Boolean vector over all worlds: which of them force ``i``."""
        cached = self._cache.get(i)
        if cached is not None:
            return cached
        match i:
            case ipl.Bottom():
                vector = np.zeros(self.size, dtype=bool)
            case ipl.Prop(index):
                vector = self.letters.get(index, np.zeros(self.size, dtype=bool))
            case ipl.And(left, right):
                vector = self.extension(left) & self.extension(right)
            case ipl.Or(left, right):
                vector = self.extension(left) | self.extension(right)
            case ipl.Imp(left, right):
                vector = self.implication(self.extension(left), self.extension(right))
            case _:
                raise TypeError(f"not an intuitionistic formula: {i!r}")
        self._cache[i] = vector
        return vector

    def implication(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        return ~(self.adjacency & (left & ~right)).any(axis=1)

    def at_points(self, vector: np.ndarray) -> np.ndarray:
        """Restrict a world vector to the family's points, in family order."""
        return vector[self.points]

    def signature(self, i: ipl.IntFormula) -> bytes:
        return self.key(self.at_points(self.extension(i)))

    @staticmethod
    def key(points: np.ndarray) -> bytes:
        return np.packbits(points).tobytes()
