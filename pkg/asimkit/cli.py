"""Command-line interface.

Exit codes: 0 success, pass or true; 1 a negative but valid result (violation,
counterexample, false, no synthesis); 2 usage, parse or data errors. ``mc``
prints a truth value and always exits 0 on valid input.
"""

import argparse
import json
import logging
import os
import sys
from typing import Sequence

import pandas as pd

from asimkit.config import (
    EXIT_ERROR,
    EXIT_NEGATIVE,
    EXIT_OK,
    REPRODUCTION_MAX_WORLDS,
    REPRODUCTION_SAMPLE_STRIDE,
    VERSION,
)
from asimkit.data.generate import WORKED_EXAMPLES, enumerate_models, enumerate_pointed_models, save_dataset
from asimkit.data.intuitionistic import validate_intuitionistic
from asimkit.data.loader import (
    dump_model,
    dump_relation,
    load_family,
    read_bisim_relation,
    read_model,
    read_relation,
)
from asimkit.data.models import Model, PointedModel, to_dot
from asimkit.data.relations import TupleRelation
from asimkit.errors import AsimkitError, EvaluationError, ModelFormatError
from asimkit.formulas import first_order as fol
from asimkit.formulas.grammar import parse_fo, parse_int, parse_modal
from asimkit.formulas.measures import box_depth, degree, free_variables, impl_depth, make_vocabulary, vocabulary_of
from asimkit.formulas.printer import render
from asimkit.formulas.translation import st, tr
from asimkit.pipeline.evaluator import fo_eval, forces, modal_sat
from asimkit.pipeline.invariance import ScanMode, enumerate_int_formulas, invariance_scan, synthesize
from asimkit.pipeline.k_asimulation import check_k_asimulation_tuples, k_asimulation_witness
from asimkit.pipeline.runner import run_pipeline
from asimkit.pipeline.simulation import (
    bisim_to_asim,
    check_asimulation,
    check_bisimulation,
    exists_asimulation,
    greatest_asimulation,
    greatest_bisimulation,
)
from asimkit.pipeline.validation import summary_table

logger = logging.getLogger(__name__)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _pointed(path: str, at: str | None) -> PointedModel:
    loaded = read_model(path)
    model = loaded.model if isinstance(loaded, PointedModel) else loaded
    if at is not None:
        return PointedModel(model, at)
    if isinstance(loaded, PointedModel):
        return loaded
    raise ModelFormatError(f"{path} has no point; give one with --at")


def _family(args, sigma: frozenset[int]) -> list[PointedModel]:
    if args.models:
        return load_family(args.models)
    return enumerate_pointed_models(args.enumerate, sigma)


def _sigma(args, phi) -> frozenset[int]:
    if getattr(args, "vocab", None):
        return frozenset(int(n) for n in args.vocab.split(","))
    return vocabulary_of(phi)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_parse(args) -> int:
    if args.language == "int":
        formula = parse_int(args.formula, sugar=args.sugar)
        measure = {"implDepth": impl_depth(formula)}
    elif args.language == "modal":
        formula = parse_modal(args.formula, sugar=args.sugar)
        measure = {"boxDepth": box_depth(formula)}
    else:
        formula = parse_fo(args.formula)
        measure = {
            "degree": degree(formula),
            "freeVariables": sorted(free_variables(formula)),
        }
    payload = {"formula": render(formula), "vocabulary": sorted(vocabulary_of(formula)), **measure}
    _emit(args, payload, render(formula))
    return EXIT_OK


def cmd_translate(args) -> int:
    if args.translation == "st":
        result = st(parse_int(args.formula, sugar=args.sugar), args.var)
    else:
        result = tr(parse_modal(args.formula, sugar=args.sugar), args.var)
    _emit(args, {"formula": render(result), "degree": degree(result)}, render(result))
    return EXIT_OK


def cmd_mc(args) -> int:
    pointed = _pointed(args.model, args.at)
    model, world = pointed.model, pointed.point
    if args.fo is not None:
        phi = parse_fo(args.fo)
        if len(free_variables(phi)) > 1:
            raise EvaluationError(f"formula has free variables {sorted(free_variables(phi))}; at most one is allowed")
        value = fo_eval(model, {v: world for v in free_variables(phi)}, phi)
    elif args.int is not None:
        value = forces(model, world, parse_int(args.int, sugar=args.sugar))
    else:
        value = modal_sat(model, world, parse_modal(args.modal, sugar=args.sugar))
    _emit(args, {"world": world, "value": value}, str(value).lower())
    return EXIT_OK


def cmd_validate_int(args) -> int:
    loaded = read_model(args.model)
    model = loaded.model if isinstance(loaded, PointedModel) else loaded
    report = validate_intuitionistic(model)
    lines = [f"intuitionistic: {str(report.ok).lower()}"]
    if not report.reflexive:
        lines.append(f"not reflexive at: {', '.join(report.non_reflexive)}")
    for u, v, w in report.non_transitive:
        lines.append(f"not transitive: {u} R {v} R {w} but not {u} R {w}")
    for n, u, v in report.non_persistent:
        lines.append(f"P{n} not persistent: true at {u}, false at successor {v}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_asim(args) -> int:
    left = _pointed(args.left, args.left_at)
    right = _pointed(args.right, args.right_at)
    if args.action == "check":
        if not args.relation:
            raise AsimkitError("asim check needs --relation")
        relation = read_relation(args.relation)
        if isinstance(relation, TupleRelation):
            if args.k is None:
                raise AsimkitError("tuple relations are checked against a bound; give --k")
            result = check_k_asimulation_tuples(left, right, relation, args.k)
        else:
            result = check_asimulation(left, right, relation)
        _emit(args, result.to_dict(), "ok" if result.ok else f"violation: {result.violation}")
        return EXIT_OK if result.ok else EXIT_NEGATIVE
    if args.action == "greatest":
        relation = greatest_asimulation(left.model, right.model)
        document = dump_relation(relation)
        _emit(args, document, json.dumps(document, indent=2))
        return EXIT_OK
    if args.k is None:
        exists = exists_asimulation(left, right)
        payload = {"exists": exists}
    else:
        witness = k_asimulation_witness(left, right, args.k)
        exists = witness is not None
        payload = {"exists": exists, "k": args.k}
        if exists:
            payload["witness"] = dump_relation(witness)
    _emit(args, payload, str(exists).lower())
    return EXIT_OK if exists else EXIT_NEGATIVE


def cmd_bisim(args) -> int:
    left = _pointed(args.left, args.left_at)
    right = _pointed(args.right, args.right_at)
    if args.action == "greatest":
        document = dump_relation(greatest_bisimulation(left.model, right.model))
        _emit(args, document, json.dumps(document, indent=2))
        return EXIT_OK
    if not args.relation:
        raise AsimkitError(f"bisim {args.action} needs --relation")
    if args.action == "to-asim":
        relation = bisim_to_asim(read_bisim_relation(args.relation))
        result = check_asimulation(left, right, relation)
        document = dump_relation(relation)
        text = json.dumps(document, indent=2)
        if not result.ok:
            text += f"\nnot an asimulation: {result.violation}"
        _emit(args, {**document, "asimulation": result.ok}, text)
        return EXIT_OK if result.ok else EXIT_NEGATIVE
    result = check_bisimulation(left, right, read_bisim_relation(args.relation))
    _emit(args, result.to_dict(), "ok" if result.ok else f"violation: {result.violation}")
    return EXIT_OK if result.ok else EXIT_NEGATIVE


def cmd_scan(args) -> int:
    phi = parse_fo(args.fo)
    if args.negate:
        phi = fol.negate(phi)
    mode = ScanMode.parse(args.mode)
    family = _family(args, _sigma(args, phi))
    repertoire = None
    if args.depth is not None and family:
        repertoire = enumerate_int_formulas(vocabulary_of(phi), args.depth)
    verdict = invariance_scan(phi, family, mode, repertoire=repertoire, depth=args.depth)
    if verdict.passed:
        text = f"pass ({len(family)} pointed models, mode {mode})"
    else:
        text = f"counterexample: {verdict.source.label()} -> {verdict.target.label()}"
        if verdict.theory_inclusion is not None:
            text += f"\ntheory of source included in target: {verdict.theory_inclusion}"
    _emit(args, verdict.to_dict(), text)
    return EXIT_OK if verdict.passed else EXIT_NEGATIVE


def cmd_synth(args) -> int:
    phi = parse_fo(args.fo)
    family = _family(args, _sigma(args, phi))
    repertoire = enumerate_int_formulas(vocabulary_of(phi), args.depth)
    result = synthesize(phi, args.depth, family, repertoire, intuitionistic_only=args.intuitionistic)
    print(f"relative to {len(family)} pointed models and {len(repertoire)} formula classes", file=sys.stderr)
    rendered = render(result) if result is not None else None
    _emit(args, {"result": rendered}, rendered if rendered is not None else "none")
    return EXIT_OK if result is not None else EXIT_NEGATIVE


def cmd_enum_models(args) -> int:
    sigma = make_vocabulary(int(n) for n in args.vocab.split(",")) if args.vocab else make_vocabulary()
    models = list(enumerate_models(args.max_worlds, sigma, args.intuitionistic))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for model in models:
            with open(os.path.join(args.out, f"{model.name}.json"), "w") as f:
                json.dump(dump_model(model), f, indent=2)
    if args.json:
        print(json.dumps([dump_model(m) for m in models]))
    else:
        table = pd.DataFrame([
            {
                "name": m.name,
                "worlds": len(m.worlds),
                "edges": len(m.rel),
                "valuation": " ".join(f"P{n}={','.join(sorted(ext)) or '-'}" for n, ext in sorted(m.val.items())),
            }
            for m in models
        ], columns=["name", "worlds", "edges", "valuation"])
        print(table.to_string(index=False))
        print(f"{len(models)} models")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    loaded = read_model(args.model)
    model: Model = loaded.model if isinstance(loaded, PointedModel) else loaded
    dot = to_dot(model)
    _emit(args, {"dot": dot}, dot.rstrip("\n"))
    return EXIT_OK


def cmd_write_examples(args) -> int:
    save_dataset(args.out)
    _emit(args, {"written": sorted(WORKED_EXAMPLES)}, f"{len(WORKED_EXAMPLES)} documents written to {args.out}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    result = run_pipeline(max_worlds=args.max_worlds, stride=args.stride, output_dir=args.out)
    passed = all(result["validation_results"].values())
    if args.json:
        print(json.dumps(result["final_report"], default=str))
    else:
        print(summary_table(result["validation_results"], result["summary_stats"]).to_string(index=False))
    return EXIT_OK if passed else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs")

    parser = argparse.ArgumentParser(
        prog="asimkit",
        description="Asimulations, k-asimulations and bisimulations for intuitionistic formulas",
    )
    parser.add_argument("--version", action="version", version=f"asimkit {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="Parse and re-render a formula")
    p.add_argument("language", choices=["int", "modal", "fo"])
    p.add_argument("formula")
    p.add_argument("--sugar", action="store_true", help="Accept ~i as i -> false in int formulas")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("translate", parents=[common], help="Standard translation into first-order logic")
    p.add_argument("translation", choices=["st", "tr"])
    p.add_argument("formula")
    p.add_argument("--var", default="x")
    p.add_argument("--sugar", action="store_true")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("mc", parents=[common], help="Evaluate a formula at a world")
    p.add_argument("model")
    p.add_argument("--at", help="World (defaults to the document's point)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fo")
    group.add_argument("--int")
    group.add_argument("--modal")
    p.add_argument("--sugar", action="store_true")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("validate-int", parents=[common], help="Check the intuitionistic frame conditions")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate_int)

    for name, func, actions in (
        ("asim", cmd_asim, ["check", "exists", "greatest"]),
        ("bisim", cmd_bisim, ["check", "greatest", "to-asim"]),
    ):
        p = sub.add_parser(name, parents=[common], help=f"{name}ulation checks")
        p.add_argument("action", choices=actions)
        p.add_argument("--left", required=True)
        p.add_argument("--right", required=True)
        p.add_argument("--left-at")
        p.add_argument("--right-at")
        p.add_argument("--relation", required=False)
        if name == "asim":
            p.add_argument("--k", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("scan", parents=[common], help="Search a family for an invariance counterexample")
    p.add_argument("--mode", required=True, help="asim, kasim:K, bisim or int")
    p.add_argument("--fo", required=True)
    p.add_argument("--negate", action="store_true", help="Scan the negation of the formula")
    p.add_argument("--depth", type=int, help="Also compare theories up to this depth")
    p.add_argument("--vocab", help="Letters for --enumerate, e.g. 1,2")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--models", help="Directory of model documents")
    source.add_argument("--enumerate", type=int, metavar="N", help="All models with at most N worlds")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("synth", parents=[common], help="Find an intuitionistic equivalent on a family")
    p.add_argument("--fo", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--intuitionistic", action="store_true", help="Restrict the family to intuitionistic models")
    p.add_argument("--vocab")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--models")
    source.add_argument("--enumerate", type=int, metavar="N")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("enum-models", parents=[common], help="Enumerate models up to isomorphism")
    p.add_argument("--max-worlds", type=int, required=True)
    p.add_argument("--vocab", help="Letters, e.g. 1,2")
    p.add_argument("--intuitionistic", action="store_true")
    p.add_argument("--out", help="Write one model document per model here")
    p.set_defaults(func=cmd_enum_models)

    p = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering of a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("write-examples", parents=[common], help="Write the worked-example documents")
    p.add_argument("--out", default=".", help="Target directory")
    p.set_defaults(func=cmd_write_examples)

    p = sub.add_parser("reproduce", parents=[common], help="Run every acceptance check")
    p.add_argument("--max-worlds", type=int, default=REPRODUCTION_MAX_WORLDS)
    p.add_argument("--stride", type=int, default=REPRODUCTION_SAMPLE_STRIDE)
    p.add_argument("--out", help="Directory for the final report")
    p.set_defaults(func=cmd_reproduce)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logger.debug("Running %s", args.command)
    try:
        return args.func(args)
    except (AsimkitError, ValueError, OSError) as exc:
        print(f"asimkit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
