"""Pipeline orchestrator: reproduces the worked examples and runs every property sweep."""

import json
import logging
import os

from asimkit.config import (
    FINAL_REPORT_FILENAME,
    PROBE_MAX_WORLDS,
    REPRODUCTION_DEPTH,
    REPRODUCTION_MAX_WORLDS,
    REPRODUCTION_SAMPLE_STRIDE,
)
from asimkit.data.generate import sample_models
from asimkit.data.loader import load_worked_examples
from asimkit.pipeline import sweeps as sw
from asimkit.pipeline.invariance import enumerate_int_formulas
from asimkit.pipeline.report import build_final_report
from asimkit.pipeline.validation import compute_summary_stats, compute_validation_results
from asimkit.pipeline.worked_examples import reproduce_worked_examples

logger = logging.getLogger(__name__)

SIGMA = frozenset({1})
ORACLE_KS = (0, 1, 2)


def run_pipeline(
    data_dir: str | None = None,
    max_worlds: int = REPRODUCTION_MAX_WORLDS,
    stride: int = REPRODUCTION_SAMPLE_STRIDE,
    output_dir: str | None = None,
    depth: int = REPRODUCTION_DEPTH,
) -> dict:
    """Execute the full reproduction pipeline over models with one letter.

    Args:
        data_dir: Directory of worked-example documents (packaged copy by default).
        max_worlds: Largest model size in the enumerated family.
        stride: Sampling stride for models with more than PROBE_MAX_WORLDS worlds.
        output_dir: Where to save the final report, if given.
        depth: Implication depth of the repertoire.

    Returns:
        Dict containing every intermediate result, ``validation_results``,
        ``summary_stats`` and ``final_report``.
    """
    examples = load_worked_examples(data_dir)

    # Families
    models = sample_models(max_worlds, SIGMA, stride=stride, full_worlds=PROBE_MAX_WORLDS)
    family = [p for m in models for p in m.pointed_models()]
    probe_models = [m for m in models if len(m.worlds) <= PROBE_MAX_WORLDS]
    probe = [p for m in probe_models for p in m.pointed_models()]
    logger.info("Family: %d models, %d pointed models", len(models), len(family))

    # Repertoire
    repertoire = enumerate_int_formulas(SIGMA, depth, probe)
    # Every class up to depth 1, plus the deeper generators
    formulas = list(dict.fromkeys(e.representative for e in repertoire.upto(1) + repertoire.generators()))

    # Worked examples
    worked = reproduce_worked_examples(examples, repertoire, probe)

    # Sweeps
    sweeps = {
        "isomorphism_free": sw.isomorphism_free(models),
        "st_adequacy": sw.st_adequacy(models, formulas),
        "tr_adequacy": sw.tr_adequacy(models, sw.modal_formulas(SIGMA, depth)),
        "persistence": sw.persistence(models, formulas),
        "axiom_agreement": sw.axiom_agreement(models),
        "oracle_agreement": sw.oracle_agreement(family, ORACLE_KS),
        "preservation": sw.preservation(family, repertoire, depth),
        "construction_lemmas": sw.construction_lemmas(probe_models),
        "fixpoint_algebra": sw.fixpoint_algebra(models),
        "synthesis_roundtrip": sw.synthesis_roundtrip(repertoire, probe),
    }

    summary_stats = compute_summary_stats(models, family, repertoire, sweeps)
    validation_results = compute_validation_results(examples, worked, sweeps)
    final_report = build_final_report(worked, sweeps, summary_stats, validation_results, max_worlds, stride)

    # Save artifact
    if output_dir:
        os.makedirs(output_dir, exist_ok=True)
        report_path = os.path.join(output_dir, FINAL_REPORT_FILENAME)
        with open(report_path, "w") as f:
            json.dump(final_report, f, indent=2, default=str)
        logger.info("Saved %s to %s", FINAL_REPORT_FILENAME, report_path)

    return {
        # Inputs
        "examples": examples,
        "models": models,
        "family": family,
        "probe": probe,
        "repertoire": repertoire,
        # Results
        "worked": worked,
        "sweeps": sweeps,
        # Validation & output
        "validation_results": validation_results,
        "summary_stats": summary_stats,
        "final_report": final_report,
    }
