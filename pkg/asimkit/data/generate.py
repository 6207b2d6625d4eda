"""Model generation: the worked-example documents and canonical model enumeration.

Enumeration yields one model per isomorphism class:
- relation bitmasks are kept only when minimal under every world permutation
- valuations are kept only when minimal under the automorphisms of the relation
"""

import itertools
import json
import logging
import os
from typing import Any, Dict, Iterable, Iterator, List

import numpy as np

from asimkit.config import CANONICAL_MAX_WORLDS, MODEL_ENUMERATION_CAP, WORLD_NAME_PREFIX
from asimkit.data.intuitionistic import validate_intuitionistic
from asimkit.data.models import Model, PointedModel
from asimkit.errors import BudgetExceededError

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Worked examples
# ---------------------------------------------------------------------------

# Two-model example: phi = exists y. (R(x,y) & P1(y)) is true at (M,a), false at
# (N,d), yet (M,a) k-asimulates into (N,d) for every k.
MODEL_M = {
    "vocab": [1],
    "worlds": ["a", "b", "c"],
    "rel": [["a", "b"], ["a", "c"]],
    "val": {"P1": ["c"]},
    "point": "a",
}

MODEL_N = {
    "vocab": [1],
    "worlds": ["d", "e"],
    "rel": [["d", "e"]],
    "val": {"P1": ["d"]},
    "point": "d",
}

# Intuitionistic counterexample pair: same phi, reflexive-transitive frames.
MODEL_M1 = {
    "vocab": [1],
    "worlds": ["a", "b", "c"],
    "rel": [["a", "a"], ["a", "b"], ["a", "c"], ["b", "b"], ["c", "c"]],
    "val": {"P1": ["c"]},
    "point": "a",
}

MODEL_N1 = {
    "vocab": [1],
    "worlds": ["d", "e"],
    "rel": [["d", "d"], ["d", "e"], ["e", "e"]],
    "val": {},
    "point": "d",
}

RELATION_B = {
    "pairs": [
        {"dir": "LR", "from": "a", "to": "d"},
        {"dir": "LR", "from": "b", "to": "e"},
        {"dir": "RL", "from": "e", "to": "b"},
    ]
}

RELATION_C = {
    "pairs": [
        {"dir": "LR", "from": "a", "to": "d"},
        {"dir": "LR", "from": "b", "to": "d"},
        {"dir": "RL", "from": "d", "to": "b"},
        {"dir": "LR", "from": "b", "to": "e"},
        {"dir": "RL", "from": "e", "to": "b"},
    ]
}

RELATION_A_TUPLES = {
    "pairs": [
        {"dir": "LR", "fromSeq": ["a"], "toSeq": ["d"]},
        {"dir": "RL", "fromSeq": ["d", "e"], "toSeq": ["a", "b"]},
        {"dir": "LR", "fromSeq": ["a", "b"], "toSeq": ["d", "e"]},
    ]
}

WORKED_EXAMPLES: Dict[str, Dict[str, Any]] = {
    "m.json": MODEL_M,
    "n.json": MODEL_N,
    "m1.json": MODEL_M1,
    "n1.json": MODEL_N1,
    "b.json": RELATION_B,
    "c.json": RELATION_C,
    "a_tuples.json": RELATION_A_TUPLES,
}


def save_dataset(output_dir: str = ".") -> None:
    """Write every worked-example document to ``output_dir``."""
    os.makedirs(output_dir, exist_ok=True)
    for filename, document in WORKED_EXAMPLES.items():
        with open(os.path.join(output_dir, filename), "w") as f:
            json.dump(document, f, indent=2)
            f.write("\n")
    logger.info("Dataset: %d documents written to %s", len(WORKED_EXAMPLES), output_dir)


# ---------------------------------------------------------------------------
# Canonical enumeration
# ---------------------------------------------------------------------------

def _permuted_masks(masks: np.ndarray, n: int, perm: tuple[int, ...]) -> np.ndarray:
    """Relabel relation bitmasks (bit i*n+j encodes iRj) by world permutation ``perm``."""
    out = np.zeros_like(masks)
    for i in range(n):
        for j in range(n):
            bit = (masks >> (i * n + j)) & 1
            out |= bit << (perm[i] * n + perm[j])
    return out


def canonical_relations(n: int) -> np.ndarray:
    """Bitmasks of the n-world digraphs that are minimal in their isomorphism class."""
    if n > CANONICAL_MAX_WORLDS:
        raise BudgetExceededError(
            f"canonical enumeration supports at most {CANONICAL_MAX_WORLDS} worlds, got {n}"
        )
    masks = np.arange(1 << (n * n), dtype=np.int64)
    keep = np.ones(masks.shape, dtype=bool)
    for perm in itertools.permutations(range(n)):
        keep &= masks <= _permuted_masks(masks, n, perm)
    return masks[keep]


def _automorphisms(mask: int, n: int) -> list[tuple[int, ...]]:
    probe = np.array([mask], dtype=np.int64)
    return [
        perm for perm in itertools.permutations(range(n))
        if int(_permuted_masks(probe, n, perm)[0]) == mask
    ]


def _permuted_valuations(codes: np.ndarray, n: int, letters: int, perm: tuple[int, ...]) -> np.ndarray:
    out = np.zeros_like(codes)
    for slot in range(letters):
        for w in range(n):
            bit = (codes >> (slot * n + w)) & 1
            out |= bit << (slot * n + perm[w])
    return out


def canonical_valuations(mask: int, n: int, letters: int) -> np.ndarray:
    """Valuation codes (bit slot*n+w: letter slot true at w) minimal under the automorphisms."""
    codes = np.arange(1 << (n * letters), dtype=np.int64)
    keep = np.ones(codes.shape, dtype=bool)
    for perm in _automorphisms(mask, n):
        keep &= codes <= _permuted_valuations(codes, n, letters, perm)
    return codes[keep]


def _decode(n: int, mask: int, code: int, sigma: List[int]) -> Model:
    worlds = tuple(f"{WORLD_NAME_PREFIX}{i}" for i in range(n))
    rel = frozenset(
        (worlds[i], worlds[j]) for i in range(n) for j in range(n) if mask >> (i * n + j) & 1
    )
    val = {
        letter: frozenset(worlds[w] for w in range(n) if code >> (slot * n + w) & 1)
        for slot, letter in enumerate(sigma)
    }
    return Model(worlds, rel, val, frozenset(sigma), name=f"n{n}-r{mask}-v{code}")


def enumerate_models(
    max_worlds: int,
    sigma: Iterable[int],
    intuitionistic_only: bool = False,
    limit: int = MODEL_ENUMERATION_CAP,
) -> Iterator[Model]:
    """Yield every model with at most ``max_worlds`` worlds over ``sigma``, up to isomorphism.

    Order is by world count, then relation bitmask, then valuation code, so the
    stream is deterministic. Raises BudgetExceededError once more than ``limit``
    models would be yielded.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    letters = sorted(set(sigma))
    yielded = 0
    for n in range(1, max_worlds + 1):
        per_size = 0
        for mask in canonical_relations(n):
            mask = int(mask)
            for code in canonical_valuations(mask, n, len(letters)):
                model = _decode(n, mask, int(code), letters)
                if intuitionistic_only and not validate_intuitionistic(model).ok:
                    continue
                if yielded >= limit:
                    raise BudgetExceededError(f"model enumeration exceeded the cap of {limit} models")
                yielded += 1
                per_size += 1
                yield model
        logger.debug("Enumerated %d models with %d worlds", per_size, n)
    logger.info("Enumerated %d models up to %d worlds over %s", yielded, max_worlds, letters)


def sample_models(
    max_worlds: int,
    sigma: Iterable[int],
    stride: int = 1,
    full_worlds: int | None = None,
    intuitionistic_only: bool = False,
) -> List[Model]:
    """Enumerated models, thinned above ``full_worlds`` worlds.

    Models with at most ``full_worlds`` worlds are all kept; larger ones are
    sampled deterministically, every ``stride``-th model of each size.
    """
    full_worlds = max_worlds if full_worlds is None else full_worlds
    models: List[Model] = []
    seen_per_size: Dict[int, int] = {}
    for model in enumerate_models(max_worlds, sigma, intuitionistic_only):
        n = len(model.worlds)
        index = seen_per_size.get(n, 0)
        seen_per_size[n] = index + 1
        if n <= full_worlds or index % stride == 0:
            models.append(model)
    return models


def enumerate_pointed_models(
    max_worlds: int,
    sigma: Iterable[int],
    intuitionistic_only: bool = False,
    stride: int = 1,
    full_worlds: int | None = None,
) -> List[PointedModel]:
    """Every point of every model from ``sample_models``, in enumeration order."""
    models = sample_models(max_worlds, sigma, stride, full_worlds, intuitionistic_only)
    return [pointed for model in models for pointed in model.pointed_models()]
