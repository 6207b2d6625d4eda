"""Loading and dumping of model and relation documents (JSON)."""

import json
import logging
import os
import re
from importlib import resources
from typing import Any, Mapping

from asimkit.config import DIRECTION_CODES, MODEL_FIELDS, OPTIONAL_MODEL_FIELDS, PAIR_FIELDS, RELATION_FIELDS
from asimkit.data.models import Model, PointedModel
from asimkit.data.relations import BisimRelation, Direction, DirectedPair, DirectedRelation, TupleEntry, TupleRelation
from asimkit.errors import ModelFormatError, RelationError

logger = logging.getLogger(__name__)

_LETTER_KEY = re.compile(r"^P([1-9][0-9]*)$")


def _as_mapping(document, error_cls) -> Mapping[str, Any]:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise error_cls(f"document is not valid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise error_cls("document must be a JSON object")
    return document


def _string_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ModelFormatError(f"{what} must be a list of strings")
    return value


def load_model(document, name: str = "") -> Model | PointedModel:
    """Build a model from a document; a ``point`` field yields a pointed model."""
    doc = _as_mapping(document, ModelFormatError)
    unknown = sorted(set(doc) - set(MODEL_FIELDS) - set(OPTIONAL_MODEL_FIELDS))
    if unknown:
        raise ModelFormatError(f"unknown fields in model document: {unknown}")
    missing = [f for f in MODEL_FIELDS if f not in doc]
    if missing:
        raise ModelFormatError(f"model document lacks fields: {missing}")

    vocab = doc["vocab"]
    if not isinstance(vocab, list) or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in vocab):
        raise ModelFormatError("vocab must be a list of positive integers")

    worlds = _string_list(doc["worlds"], "worlds")
    seen: set[str] = set()
    for w in worlds:
        if w in seen:
            raise ModelFormatError(f"duplicate world {w!r}")
        seen.add(w)

    rel = []
    if not isinstance(doc["rel"], list):
        raise ModelFormatError("rel must be a list of [source, target] pairs")
    for entry in doc["rel"]:
        pair = _string_list(entry, "each rel entry")
        if len(pair) != 2:
            raise ModelFormatError(f"rel entry {entry} must have exactly two worlds")
        dangling = [w for w in pair if w not in seen]
        if dangling:
            raise ModelFormatError(f"rel entry {entry} has dangling reference to {dangling}")
        rel.append((pair[0], pair[1]))

    if not isinstance(doc["val"], Mapping):
        raise ModelFormatError("val must map letters like 'P1' to lists of worlds")
    val: dict[int, frozenset[str]] = {}
    for key, extension in doc["val"].items():
        match = _LETTER_KEY.match(key)
        if not match:
            raise ModelFormatError(f"val key {key!r} is not a letter name like 'P1'")
        extension = _string_list(extension, f"val[{key}]")
        dangling = [w for w in extension if w not in seen]
        if dangling:
            raise ModelFormatError(f"val[{key}] has dangling reference to {dangling}")
        val[int(match.group(1))] = frozenset(extension)

    model = Model(tuple(worlds), frozenset(rel), val, frozenset(vocab), name)
    if "point" not in doc:
        return model
    point = doc["point"]
    if not isinstance(point, str) or point not in seen:
        raise ModelFormatError(f"point {point!r} is not a world of the model")
    return PointedModel(model, point)


def read_model(path: str) -> Model | PointedModel:
    with open(path) as f:
        text = f.read()
    return load_model(text, name=os.path.splitext(os.path.basename(path))[0])


def dump_model(model: Model | PointedModel) -> dict:
    point = None
    if isinstance(model, PointedModel):
        model, point = model.model, model.point
    doc = {
        "vocab": sorted(model.vocab),
        "worlds": list(model.worlds),
        "rel": [[u, v] for u, v in sorted(model.rel)],
        "val": {f"P{n}": sorted(ext) for n, ext in sorted(model.val.items()) if ext},
    }
    if point is not None:
        doc["point"] = point
    return doc


def load_family(directory: str) -> list[PointedModel]:
    """Read every ``*.json`` model in a directory, in file-name order.

    Documents without a point contribute one pointed model per world. Relation
    documents (those with a ``pairs`` field) are skipped.
    """
    family: list[PointedModel] = []
    for filename in sorted(os.listdir(directory)):
        if not filename.endswith(".json"):
            continue
        with open(os.path.join(directory, filename)) as f:
            document = _as_mapping(f.read(), ModelFormatError)
        if "pairs" in document:
            logger.debug("Skipping relation document %s", filename)
            continue
        loaded = load_model(document, name=os.path.splitext(filename)[0])
        if isinstance(loaded, PointedModel):
            family.append(loaded)
        else:
            family.extend(loaded.pointed_models())
    logger.info("Loaded %d pointed models from %s", len(family), directory)
    return family


def _pairs(document) -> list[Mapping[str, Any]]:
    doc = _as_mapping(document, RelationError)
    unknown = sorted(set(doc) - set(RELATION_FIELDS))
    if unknown:
        raise RelationError(f"unknown fields in relation document: {unknown}")
    pairs = doc.get("pairs")
    if not isinstance(pairs, list):
        raise RelationError("relation document needs a 'pairs' list")
    for pair in pairs:
        if not isinstance(pair, Mapping):
            raise RelationError(f"relation entry {pair!r} is not an object")
        extra = sorted(set(pair) - set(PAIR_FIELDS))
        if extra:
            raise RelationError(f"unknown fields in relation entry: {extra}")
    return pairs


def _direction(pair: Mapping[str, Any], default: str | None = None) -> Direction:
    code = pair.get("dir", default)
    if code not in DIRECTION_CODES:
        raise RelationError(f"direction must be one of {DIRECTION_CODES}, got {code!r}")
    return Direction(code)


def load_relation(document) -> DirectedRelation | TupleRelation:
    """Parse a relation document; entries with ``fromSeq``/``toSeq`` make a tuple relation."""
    pairs = _pairs(document)
    is_tuple = [("fromSeq" in p or "toSeq" in p) for p in pairs]
    if any(is_tuple) and not all(is_tuple):
        raise RelationError("relation mixes world pairs and sequence pairs")
    if pairs and all(is_tuple):
        entries = []
        for p in pairs:
            source, target = p.get("fromSeq"), p.get("toSeq")
            if not isinstance(source, list) or not isinstance(target, list):
                raise RelationError("fromSeq and toSeq must both be lists of worlds")
            entries.append(TupleEntry(_direction(p), tuple(source), tuple(target)))
        return TupleRelation(frozenset(entries))
    entries = []
    for p in pairs:
        if not isinstance(p.get("from"), str) or not isinstance(p.get("to"), str):
            raise RelationError(f"relation entry {dict(p)} needs string 'from' and 'to'")
        entries.append(DirectedPair(_direction(p), p["from"], p["to"]))
    return DirectedRelation(frozenset(entries))


def load_bisim_relation(document) -> BisimRelation:
    """Parse a one-directional relation document (every entry left to right)."""
    pairs = _pairs(document)
    result = set()
    for p in pairs:
        if _direction(p, default="LR") is not Direction.LR:
            raise RelationError("bisimulation entries must all go from left to right")
        if not isinstance(p.get("from"), str) or not isinstance(p.get("to"), str):
            raise RelationError(f"relation entry {dict(p)} needs string 'from' and 'to'")
        result.add((p["from"], p["to"]))
    return frozenset(result)


def read_relation(path: str) -> DirectedRelation | TupleRelation:
    with open(path) as f:
        return load_relation(f.read())


def read_bisim_relation(path: str) -> BisimRelation:
    with open(path) as f:
        return load_bisim_relation(f.read())


def dump_relation(relation: DirectedRelation | TupleRelation | BisimRelation) -> dict:
    if isinstance(relation, DirectedRelation):
        pairs = [{"dir": e.direction.value, "from": e.source, "to": e.target} for e in relation]
    elif isinstance(relation, TupleRelation):
        pairs = [
            {"dir": e.direction.value, "fromSeq": list(e.source), "toSeq": list(e.target)}
            for e in relation
        ]
    else:
        pairs = [{"dir": "LR", "from": s, "to": t} for s, t in sorted(relation)]
    return {"pairs": pairs}


def dataset_dir() -> str:
    """Directory of the packaged worked-example documents."""
    return str(resources.files("asimkit") / "dataset")


def load_worked_examples(data_dir: str | None = None) -> dict:
    """Load the worked-example models and relations.

    Returns:
        Dict with pointed models ``M``, ``N``, ``M1``, ``N1`` and relations
        ``B``, ``C``, ``A_tuples``.
    """
    data_dir = data_dir or dataset_dir()
    loaded = {
        "M": read_model(os.path.join(data_dir, "m.json")),
        "N": read_model(os.path.join(data_dir, "n.json")),
        "M1": read_model(os.path.join(data_dir, "m1.json")),
        "N1": read_model(os.path.join(data_dir, "n1.json")),
        "B": read_relation(os.path.join(data_dir, "b.json")),
        "C": read_relation(os.path.join(data_dir, "c.json")),
        "A_tuples": read_relation(os.path.join(data_dir, "a_tuples.json")),
    }
    logger.info("Loaded worked examples from %s", data_dir)
    return loaded
