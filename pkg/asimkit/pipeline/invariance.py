"""Formula repertoires, degree-bounded theories, invariance scans and synthesis.

Everything here is relative to a finite family of pointed models: formulas are
identified when their truth signatures over the probe family agree, and
synthesis is exact on the family it is given, not on all models.
"""

import logging
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Iterator, Sequence

import numpy as np

from asimkit.config import PROBE_MAX_WORLDS, REPERTOIRE_BUDGET, REPERTOIRE_CLOSURE_ROUNDS
from asimkit.data.generate import enumerate_pointed_models
from asimkit.data.intuitionistic import validate_intuitionistic
from asimkit.data.loader import dump_model, dump_relation
from asimkit.data.models import PointedModel, restrict_family
from asimkit.data.relations import Direction, DirectedPair, DirectedRelation, TupleRelation
from asimkit.errors import RepertoireError, ScanError
from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas.measures import free_variables, vocabulary_of
from asimkit.formulas.printer import render
from asimkit.formulas.translation import st
from asimkit.pipeline.evaluator import forces, holds_at
from asimkit.pipeline.k_asimulation import k_asimulation_witness, stratified_k_asim
from asimkit.pipeline.signatures import SignatureTable
from asimkit.pipeline.simulation import greatest_asimulation, greatest_bisimulation

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Repertoire
# ---------------------------------------------------------------------------

CONNECTIVES = {"and": ipl.And, "or": ipl.Or, "imp": ipl.Imp}


@dataclass(frozen=True)
class RepertoireEntry:
    """A class representative. ``recipe`` rebuilds it from earlier entries:
    ``("false",)``, ``("letter", n)`` or ``(connective, left_index, right_index)``."""

    representative: ipl.IntFormula
    depth: int
    signature: bytes
    recipe: tuple = field(default=(), repr=False, compare=False)


@dataclass(frozen=True)
class Repertoire:
    """One representative per signature class, in generation order.

    Entries are ordered by depth. ``exhausted`` is set when the generation
    budget or the closure round cap cut the enumeration short; the entries are
    then a partial repertoire.
    """

    entries: tuple[RepertoireEntry, ...]
    sigma: frozenset[int]
    depth: int
    exhausted: bool
    table: SignatureTable = field(repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_signature", {e.signature: e for e in self.entries})

    def __iter__(self) -> Iterator[RepertoireEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def upto(self, k: int) -> list[RepertoireEntry]:
        return [e for e in self.entries if e.depth <= k]

    def find(self, signature: bytes) -> RepertoireEntry | None:
        return self._by_signature.get(signature)

    def generators(self) -> list[RepertoireEntry]:
        """Entries that are not a conjunction or disjunction of other entries."""
        return [e for e in self.entries if e.recipe[:1] not in (("and",), ("or",))]

    def require(self, sigma: Iterable[int], k: int) -> None:
        sigma = frozenset(sigma)
        if sigma != self.sigma:
            raise RepertoireError(
                f"repertoire is over {sorted(self.sigma)}, requested vocabulary {sorted(sigma)}"
            )
        if k > self.depth:
            raise RepertoireError(f"repertoire reaches depth {self.depth}, requested {k}")

    def world_vectors(self, table: SignatureTable, k: int | None = None) -> np.ndarray:
        """Forcing of each representative of depth <= k at every world of ``table``.

        Recipes only point backwards, so one pass in entry order suffices.
        """
        count = len(self.entries) if k is None else len(self.upto(k))
        vectors = np.zeros((count, table.size), dtype=bool)
        for row, entry in enumerate(self.entries[:count]):
            match entry.recipe:
                case ("false",):
                    pass
                case ("letter", n):
                    if n in table.letters:
                        vectors[row] = table.letters[n]
                case ("and", a, b):
                    vectors[row] = vectors[a] & vectors[b]
                case ("or", a, b):
                    vectors[row] = vectors[a] | vectors[b]
                case ("imp", a, b):
                    vectors[row] = table.implication(vectors[a], vectors[b])
                case _:
                    vectors[row] = table.extension(entry.representative)
        return vectors

    def truth_matrix(self, family: Sequence[PointedModel], k: int | None = None) -> np.ndarray:
        """Rows are the representatives of depth <= k, columns the family members."""
        table = SignatureTable(family)
        return self.world_vectors(table, k)[:, table.points]


class _RepertoireBuilder:
    """Signature classes found so far, with their world vectors over the probe."""

    def __init__(self, table: SignatureTable, budget: int, closure_rounds: int | None):
        self.table = table
        self.budget = budget
        self.closure_rounds = closure_rounds
        self.entries: list[RepertoireEntry] = []
        self.vectors: list[np.ndarray] = []
        self.sizes: list[int] = []
        self.index: dict[bytes, int] = {}
        self.generators: list[int] = []
        self.generated = 0
        self.exhausted = False

    def _size(self, recipe: tuple) -> int:
        if len(recipe) == 3:
            return 1 + self.sizes[recipe[1]] + self.sizes[recipe[2]]
        return 1

    def _build(self, recipe: tuple) -> ipl.IntFormula:
        match recipe:
            case ("false",):
                return ipl.Bottom()
            case ("letter", n):
                return ipl.Prop(n)
            case (connective, a, b):
                left, right = self.entries[a].representative, self.entries[b].representative
                return CONNECTIVES[connective](left, right)
        raise ValueError(f"bad recipe {recipe!r}")

    def offer(self, candidates: Iterable[tuple[tuple, np.ndarray]], layer: int) -> list[int]:
        """Classify a batch of (recipe, world vector) candidates, smallest first.

        Returns the class index of every candidate taken; candidates beyond the
        budget are dropped and mark the repertoire exhausted.
        """
        room = self.budget - self.generated
        batch = list(islice(candidates, room + 1))
        if len(batch) > room:
            self.exhausted = True
            batch = batch[:room]
        self.generated += len(batch)
        batch.sort(key=lambda candidate: self._size(candidate[0]))
        classes = []
        for recipe, vector in batch:
            signature = self.table.key(self.table.at_points(vector))
            found = self.index.get(signature)
            if found is None:
                found = len(self.entries)
                self.index[signature] = found
                self.entries.append(RepertoireEntry(self._build(recipe), layer, signature, recipe))
                self.vectors.append(vector)
                self.sizes.append(self._size(recipe))
            classes.append(found)
        return classes

    def _add_generators(self, classes: list[int]) -> None:
        for c in classes:
            if c not in self.generators:
                self.generators.append(c)

    def seed(self, sigma: frozenset[int]) -> None:
        nothing = np.zeros(self.table.size, dtype=bool)
        candidates = [(("false",), nothing)]
        candidates += [(("letter", n), self.table.letters.get(n, nothing)) for n in sorted(sigma)]
        self._add_generators(self.offer(candidates, 0))

    def implications(self, layer: int) -> None:
        """Offer i -> j for every pair of known classes where one side has depth layer-1."""
        count = len(self.entries)
        deeper = [self.entries[c].depth == layer - 1 for c in range(count)]
        candidates = (
            (("imp", a, b), self.table.implication(self.vectors[a], self.vectors[b]))
            for a in range(count)
            for b in range(count)
            if deeper[a] or deeper[b]
        )
        self._add_generators(self.offer(candidates, layer))

    def _meet(self, members: list[int], layer: int) -> int | None:
        target = np.logical_and.reduce([self.vectors[g] for g in members])
        kept = list(members)
        for g in reversed(members):
            rest = [h for h in kept if h != g]
            if rest and np.array_equal(np.logical_and.reduce([self.vectors[h] for h in rest]), target):
                kept = rest
        current = kept[0]
        for g in kept[1:]:
            found = self.offer([(("and", current, g), self.vectors[current] & self.vectors[g])], layer)
            if not found:
                return None
            current = found[0]
        return current

    def close(self, layer: int) -> None:
        """Add every conjunction and disjunction of the generators found so far.

        Sets of worlds closed under intersection and union are exactly the unions
        of the sets "meet of every generator true at w", one for each world w, so
        those meets are built first and then joined until nothing new appears.
        """
        matrix = np.array([self.vectors[g] for g in self.generators])
        meets: dict[tuple[int, ...], int] = {}
        for w in range(self.table.size):
            members = tuple(self.generators[g] for g in np.flatnonzero(matrix[:, w]))
            if not members or members in meets:
                continue
            found = self._meet(list(members), layer)
            if found is None:
                return
            meets[members] = found
        irreducible = sorted(set(meets.values()))

        joined = set(irreducible)
        frontier = list(irreducible)
        rounds = 0
        while frontier and not self.exhausted:
            if rounds == self.closure_rounds:
                self.exhausted = True
                break
            rounds += 1
            candidates = (
                (("or", x, j), self.vectors[x] | self.vectors[j])
                for x in frontier
                for j in irreducible
                if (self.vectors[j] & ~self.vectors[x]).any()
            )
            frontier = sorted(set(self.offer(candidates, layer)) - joined)
            joined.update(frontier)

    def repertoire(self, sigma: frozenset[int], depth: int) -> Repertoire:
        return Repertoire(tuple(self.entries), sigma, depth, self.exhausted, self.table)


def enumerate_int_formulas(
    sigma: Iterable[int],
    depth: int,
    probe: Sequence[PointedModel] | None = None,
    budget: int = REPERTOIRE_BUDGET,
    closure_rounds: int | None = REPERTOIRE_CLOSURE_ROUNDS,
) -> Repertoire:
    """Generate intuitionistic formulas over ``sigma`` up to implication depth ``depth``.

    Layer 0 holds false and the letters; layer d adds the implications whose
    deeper side has depth d-1. Each layer is then closed under conjunction and
    disjunction. Within a batch candidates are tried smallest first; the first
    formula of each signature class becomes its representative.

    The closure is complete when every world of the probe is one of its points,
    as in the default probe. ``closure_rounds`` caps the rounds of disjunction
    per layer; hitting the cap, like hitting ``budget``, marks the result
    exhausted.
    """
    sigma = frozenset(sigma)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if probe is None:
        probe = enumerate_pointed_models(PROBE_MAX_WORLDS, sigma)
    if not probe:
        raise RepertoireError("probe family is empty")
    builder = _RepertoireBuilder(SignatureTable(probe), budget, closure_rounds)

    for layer in range(depth + 1):
        if layer == 0:
            builder.seed(sigma)
        else:
            builder.implications(layer)
        if not builder.exhausted:
            builder.close(layer)
        logger.debug("Repertoire layer %d: %d classes so far", layer, len(builder.entries))
        if builder.exhausted:
            break

    if builder.exhausted:
        logger.warning("Repertoire generation stopped after %d candidates; repertoire is partial",
                       builder.generated)
    logger.info("Repertoire over %s to depth %d: %d classes from %d candidates",
                sorted(sigma), depth, len(builder.entries), builder.generated)
    return builder.repertoire(sigma, depth)


# ---------------------------------------------------------------------------
# Theories and the <= relations
# ---------------------------------------------------------------------------

def _theory_entries(pointed: PointedModel, k: int, repertoire: Repertoire) -> list[RepertoireEntry]:
    forced = repertoire.truth_matrix([pointed], k)[:, 0]
    return [repertoire.entries[row] for row in np.flatnonzero(forced)]


def theory_at(
    pointed: PointedModel, sigma: Iterable[int], k: int, repertoire: Repertoire
) -> frozenset[ipl.IntFormula]:
    """Representatives of depth <= k forced at the point, equivalently whose standard translation holds there."""
    repertoire.require(sigma, k)
    return frozenset(e.representative for e in _theory_entries(pointed, k, repertoire))


def leq_k(
    source: PointedModel, target: PointedModel, sigma: Iterable[int], k: int, repertoire: Repertoire
) -> bool:
    repertoire.require(sigma, k)
    matrix = repertoire.truth_matrix([source, target], k)
    return not (matrix[:, 0] & ~matrix[:, 1]).any()


@dataclass(frozen=True)
class TheoryInclusion:
    """Inclusion of theories, established only up to ``depth_bound``."""

    holds: bool
    depth_bound: int

    def __bool__(self) -> bool:
        return self.holds

    def __str__(self) -> str:
        return f"{str(self.holds).lower()} (up to depth {self.depth_bound})"


def leq_sigma(
    source: PointedModel,
    target: PointedModel,
    sigma: Iterable[int],
    depth_bound: int,
    repertoire: Repertoire,
) -> TheoryInclusion:
    return TheoryInclusion(leq_k(source, target, sigma, depth_bound, repertoire), depth_bound)


# ---------------------------------------------------------------------------
# Invariance scanning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanMode:
    """Which relation a scan quantifies over: asim, kasim (with k), bisim or int."""

    kind: str
    k: int | None = None

    KINDS = ("asim", "kasim", "bisim", "int")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown scan mode {self.kind!r}")
        if (self.kind == "kasim") != (self.k is not None):
            raise ValueError("a k bound is given exactly for kasim mode")
        if self.k is not None and self.k < 0:
            raise ValueError("k must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "ScanMode":
        kind, _, bound = text.partition(":")
        if kind == "kasim":
            if not bound.isdigit():
                raise ValueError(f"kasim mode needs a bound like kasim:2, got {text!r}")
            return cls("kasim", int(bound))
        if bound:
            raise ValueError(f"mode {kind!r} takes no bound")
        return cls(kind)

    def __str__(self) -> str:
        return f"kasim:{self.k}" if self.kind == "kasim" else self.kind


ASIM = ScanMode("asim")
BISIM = ScanMode("bisim")
INT_ASIM = ScanMode("int")


def kasim(k: int) -> ScanMode:
    return ScanMode("kasim", k)


@dataclass(frozen=True)
class Verdict:
    """Scan outcome. A counterexample names a source where phi holds, a target where
    it fails, and the relation linking them."""

    mode: ScanMode
    source: PointedModel | None = None
    target: PointedModel | None = None
    evidence: DirectedRelation | TupleRelation | frozenset | None = None
    theory_inclusion: TheoryInclusion | None = None

    @property
    def passed(self) -> bool:
        return self.source is None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        if self.passed:
            return {"verdict": "pass", "mode": str(self.mode)}
        result = {
            "verdict": "counterexample",
            "mode": str(self.mode),
            "source": dump_model(self.source),
            "target": dump_model(self.target),
            "relation": dump_relation(self.evidence),
            "truthAtSource": True,
            "truthAtTarget": False,
        }
        if self.theory_inclusion is not None:
            result["theoryIncluded"] = self.theory_inclusion.holds
            result["theoryDepth"] = self.theory_inclusion.depth_bound
        return result


class _RelationCache:
    """Per model pair fixpoints, shared by every pointed pair drawn from the same models."""

    def __init__(self, mode: ScanMode):
        self.mode = mode
        self._store: dict = {}

    def evidence(self, source: PointedModel, target: PointedModel):
        key = (id(source.model), id(target.model))
        if key not in self._store:
            lm, rm = source.model, target.model
            if self.mode.kind == "kasim":
                self._store[key] = stratified_k_asim(lm, rm, self.mode.k).top
            elif self.mode.kind == "bisim":
                self._store[key] = greatest_bisimulation(lm, rm)
            else:
                self._store[key] = greatest_asimulation(lm, rm)
        relation = self._store[key]
        if self.mode.kind == "bisim":
            return relation if (source.point, target.point) in relation else None
        if DirectedPair(Direction.LR, source.point, target.point) not in relation:
            return None
        if self.mode.kind == "kasim":
            return k_asimulation_witness(source, target, self.mode.k)
        return relation


def _require_unary(phi: fol.FOFormula) -> None:
    free = free_variables(phi)
    if len(free) != 1:
        raise ScanError(f"formula must have exactly one free variable, has {sorted(free)}")


def intuitionistic_members(family: Sequence[PointedModel]) -> list[PointedModel]:
    verdicts: dict[int, bool] = {}
    members = []
    for pointed in family:
        key = id(pointed.model)
        if key not in verdicts:
            verdicts[key] = validate_intuitionistic(pointed.model).ok
        if verdicts[key]:
            members.append(pointed)
    return members


def invariance_scan(
    phi: fol.FOFormula,
    family: Sequence[PointedModel],
    mode: ScanMode,
    repertoire: Repertoire | None = None,
    depth: int | None = None,
) -> Verdict:
    """Look for a pair (source, target) related under ``mode`` with phi true at source, false at target.

    Relations are computed over the letters of phi only, so a family may mix
    vocabularies as long as each covers those letters. Pairs are scanned with
    sources in family order, then targets in family order; the first
    counterexample is returned. With a repertoire and ``depth``, the
    counterexample also records whether the source's theory up to that depth is
    included in the target's.
    """
    if not family:
        raise ScanError("family is empty")
    _require_unary(phi)
    letters = vocabulary_of(phi)
    for pointed in family:
        if not letters <= pointed.model.vocab:
            raise ScanError(
                f"formula letters {sorted(letters)} exceed the vocabulary of {pointed.label()}"
            )
    scanned = restrict_family(family, letters)
    original = {id(r): p for r, p in zip(scanned, family)}
    if mode.kind == "int":
        scanned = intuitionistic_members(scanned)
        if not scanned:
            raise ScanError("family has no intuitionistic models")

    truth = [holds_at(p, phi) for p in scanned]
    cache = _RelationCache(mode)
    for i, source in enumerate(scanned):
        if not truth[i]:
            continue
        for j, target in enumerate(scanned):
            if truth[j]:
                continue
            evidence = cache.evidence(source, target)
            if evidence is None:
                continue
            source, target = original[id(source)], original[id(target)]
            logger.info("Counterexample under %s: %s -> %s", mode, source.label(), target.label())
            inclusion = None
            if repertoire is not None and depth is not None:
                inclusion = leq_sigma(source, target, repertoire.sigma, depth, repertoire)
            return Verdict(mode, source, target, evidence, inclusion)
    logger.info("No counterexample under %s among %d pointed models", mode, len(scanned))
    return Verdict(mode)


# ---------------------------------------------------------------------------
# Complete conjunctions and synthesis
# ---------------------------------------------------------------------------

def complete_int_conjunction(pointed: PointedModel, k: int, repertoire: Repertoire) -> ipl.IntFormula:
    """Conjunction of every representative of depth <= k true at the point (top when none)."""
    return ipl.conjunction(e.representative for e in _theory_entries(pointed, k, repertoire))


def complete_conjunction(
    phi: fol.FOFormula, pointed: PointedModel, k: int, repertoire: Repertoire
) -> fol.FOFormula:
    _require_unary(phi)
    if k < 1:
        raise RepertoireError("complete conjunctions are taken at depth k >= 1")
    if not vocabulary_of(phi) <= repertoire.sigma or k > repertoire.depth:
        raise RepertoireError(
            f"repertoire over {sorted(repertoire.sigma)} to depth {repertoire.depth} "
            f"does not cover the formula at depth {k}"
        )
    if not holds_at(pointed, phi):
        raise RepertoireError(f"formula is false at {pointed.label()}")
    (var,) = free_variables(phi)
    conjuncts = [st(e.representative, var) for e in _theory_entries(pointed, k, repertoire)]
    return fol.conjoin(conjuncts) if conjuncts else st(ipl.top(), var)


def entails_on_family(premise: fol.FOFormula, conclusion: fol.FOFormula, family: Sequence[PointedModel]) -> bool:
    """Every pointed model of the family satisfying the premise satisfies the conclusion."""
    return all(not holds_at(p, premise) or holds_at(p, conclusion) for p in family)


def int_countermodel(
    premises: Sequence[ipl.IntFormula], conclusion: ipl.IntFormula, family: Sequence[PointedModel]
) -> PointedModel | None:
    """First intuitionistic pointed model of the family forcing the premises but not the conclusion."""
    for pointed in intuitionistic_members(family):
        model, world = pointed.model, pointed.point
        if all(forces(model, world, i) for i in premises) and not forces(model, world, conclusion):
            return pointed
    return None


def _minimise_conjuncts(rows: np.ndarray, matrix: np.ndarray, negatives: np.ndarray) -> list[int]:
    """Drop rows greedily, latest first, while the rest still fail at every negative point."""
    falsified = ~matrix[rows][:, negatives]
    counts = falsified.sum(axis=0)
    kept = []
    for position in reversed(range(len(rows))):
        if (counts[falsified[position]] > 1).all():
            counts -= falsified[position]
        else:
            kept.append(int(rows[position]))
    return sorted(kept)


def synthesize(
    phi: fol.FOFormula,
    k: int,
    family: Sequence[PointedModel],
    repertoire: Repertoire,
    intuitionistic_only: bool = False,
) -> ipl.IntFormula | None:
    """An intuitionistic formula whose translation agrees with phi on the family, or None.

    The candidate is the disjunction, over family members where phi holds, of
    their complete conjunctions of depth <= k. It exists iff that candidate is
    false wherever phi is false; conjuncts and disjuncts are then pruned greedily.
    """
    _require_unary(phi)
    if not vocabulary_of(phi) <= repertoire.sigma or k > repertoire.depth:
        raise RepertoireError(
            f"repertoire over {sorted(repertoire.sigma)} to depth {repertoire.depth} "
            f"does not cover the formula at depth {k}"
        )
    if intuitionistic_only:
        family = intuitionistic_members(family)
    if not family:
        raise ScanError("family is empty")
    for pointed in family:
        if not repertoire.sigma <= pointed.model.vocab:
            raise ScanError(
                f"{pointed.label()} lacks letters of the repertoire vocabulary {sorted(repertoire.sigma)}"
            )

    truth = np.array([holds_at(p, phi) for p in family], dtype=bool)
    negatives = ~truth
    matrix = repertoire.truth_matrix(family, k)

    disjuncts: list[tuple[int, ...]] = []
    coverage: list[np.ndarray] = []
    for index in np.flatnonzero(truth):
        rows = np.flatnonzero(matrix[:, index])
        if (matrix[rows].all(axis=0) & negatives).any():
            logger.info("No synthesis: %s has no separating conjunction", family[index].label())
            return None
        kept = tuple(_minimise_conjuncts(rows, matrix, negatives))
        if kept in disjuncts:
            continue
        disjuncts.append(kept)
        coverage.append(matrix[list(kept)].all(axis=0) & truth)

    chosen = list(range(len(disjuncts)))
    for i in range(len(disjuncts)):
        others = [j for j in chosen if j != i]
        covered = np.zeros(len(family), dtype=bool)
        for j in others:
            covered |= coverage[j]
        if not (truth & ~covered).any():
            chosen = others

    result = ipl.disjunction(
        ipl.conjunction(repertoire.entries[row].representative for row in disjuncts[i]) for i in chosen
    )
    translated = st(result)
    if any(holds_at(p, translated) != bool(t) for p, t in zip(family, truth)):
        logger.warning("Synthesised %s disagrees with the formula on the family", render(result))
        return None
    logger.info("Synthesised %s (relative to %d pointed models)", render(result), len(family))
    return result
