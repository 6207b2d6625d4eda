"""Reproduction of the worked examples: the two-model example and its
intuitionistic counterpart."""

import logging

from asimkit.data.intuitionistic import validate_intuitionistic
from asimkit.data.models import PointedModel
from asimkit.formulas.grammar import parse_fo
from asimkit.pipeline.evaluator import holds_at
from asimkit.pipeline.invariance import ASIM, INT_ASIM, Repertoire, invariance_scan, kasim, synthesize
from asimkit.pipeline.k_asimulation import check_k_asimulation_tuples, exists_k_asimulation
from asimkit.pipeline.simulation import check_asimulation

logger = logging.getLogger(__name__)

# True at a point iff some successor satisfies P1.
SEPARATING_FORMULA = "exists y. (R(x,y) & P1(y))"
EXAMPLE_K_RANGE = range(0, 6)
SCAN_K_RANGE = range(0, 4)


def reproduce_worked_examples(examples: dict, repertoire: Repertoire, probe: list[PointedModel]) -> dict:
    """Run every check attached to the worked examples.

    Args:
        examples: Output of ``load_worked_examples``.
        repertoire: Repertoire over {P1} used for the synthesis check.
        probe: Extra pointed models added to the synthesis family.

    Returns:
        Dict of raw results keyed by check.
    """
    m, n = examples["M"], examples["N"]
    m1, n1 = examples["M1"], examples["N1"]
    phi = parse_fo(SEPARATING_FORMULA)

    tuple_checks = {
        k: check_k_asimulation_tuples(m, n, examples["A_tuples"], k) for k in EXAMPLE_K_RANGE
    }
    k_asim = {k: exists_k_asimulation(m, n, k) for k in EXAMPLE_K_RANGE}
    logger.info("Two-model example: tuple relation accepted for k in %s",
                [k for k, r in tuple_checks.items() if r.ok])

    pair = [m, n]
    scan_asim = invariance_scan(phi, pair, ASIM)
    scan_kasim = {k: invariance_scan(phi, pair, kasim(k)) for k in SCAN_K_RANGE}

    b_check = check_asimulation(m, n, examples["B"])
    m1_report = validate_intuitionistic(m1.model)
    n1_report = validate_intuitionistic(n1.model)
    c_check = check_asimulation(m1, n1, examples["C"])
    scan_int = invariance_scan(phi, [m1, n1], INT_ASIM)

    family = pair + list(probe)
    synthesis = {k: synthesize(phi, k, family, repertoire) for k in range(repertoire.depth + 1)}

    return {
        "phi": phi,
        "phi_at_m": holds_at(m, phi),
        "phi_at_n": holds_at(n, phi),
        "tuple_checks": tuple_checks,
        "k_asim_exists": k_asim,
        "scan_asim": scan_asim,
        "scan_kasim": scan_kasim,
        "b_check": b_check,
        "m1_report": m1_report,
        "n1_report": n1_report,
        "c_check": c_check,
        "scan_int": scan_int,
        "separating_synthesis": synthesis,
    }
