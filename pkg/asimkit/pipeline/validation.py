"""Acceptance checks and summary statistics for a reproduction run."""

import pandas as pd

from asimkit.data.relations import DirectedRelation, TupleRelation


def _counterexample_is(verdict, source, target) -> bool:
    return not verdict.passed and verdict.source == source and verdict.target == target


def compute_validation_results(examples: dict, worked: dict, sweeps: dict) -> dict[str, bool]:
    """Run all acceptance checks. Returns dict of check_name -> passed."""
    m, n, m1, n1 = examples["M"], examples["N"], examples["M1"], examples["N1"]
    scan_kasim = worked["scan_kasim"].values()
    return {
        "tuple_relation_accepted_all_k": all(r.ok for r in worked["tuple_checks"].values()),
        "k_asimulation_exists_all_k": all(worked["k_asim_exists"].values()),
        "separating_formula_values": worked["phi_at_m"] and not worked["phi_at_n"],
        "asim_scan_counterexample": _counterexample_is(worked["scan_asim"], m, n)
        and isinstance(worked["scan_asim"].evidence, DirectedRelation),
        "kasim_scan_counterexample": all(
            _counterexample_is(v, m, n) and isinstance(v.evidence, TupleRelation) for v in scan_kasim
        ),
        "relation_b_is_asimulation": worked["b_check"].ok,
        "m1_n1_intuitionistic": worked["m1_report"].ok and worked["n1_report"].ok,
        "relation_c_is_asimulation": worked["c_check"].ok,
        "int_scan_counterexample": _counterexample_is(worked["scan_int"], m1, n1),
        "st_adequacy": not sweeps["st_adequacy"]["discrepancies"],
        "tr_adequacy": not sweeps["tr_adequacy"]["discrepancies"],
        "persistence": not sweeps["persistence"]["discrepancies"],
        "axiom_agreement": not sweeps["axiom_agreement"]["discrepancies"],
        "enumeration_isomorphism_free": not sweeps["isomorphism_free"]["discrepancies"],
        "oracle_agreement": not sweeps["oracle_agreement"]["discrepancies"],
        "preservation": not sweeps["preservation"]["discrepancies"],
        "construction_lemmas": not sweeps["construction_lemmas"]["discrepancies"],
        "fixpoint_algebra": not sweeps["fixpoint_algebra"]["discrepancies"],
        "synthesis_roundtrip": not sweeps["synthesis_roundtrip"]["discrepancies"],
        "separating_formula_not_synthesised": all(
            r is None for r in worked["separating_synthesis"].values()
        ),
    }


def compute_summary_stats(models: list, family: list, repertoire, sweeps: dict) -> dict:
    """Family, repertoire and sweep sizes."""
    return {
        "model_count": len(models),
        "pointed_model_count": len(family),
        "max_worlds": max((len(m.worlds) for m in models), default=0),
        "repertoire_classes": len(repertoire),
        "repertoire_depth": repertoire.depth,
        "repertoire_exhausted": repertoire.exhausted,
        "cases_checked": {name: s["checked"] for name, s in sweeps.items()},
        "total_discrepancies": sum(len(s["discrepancies"]) for s in sweeps.values()),
    }


def summary_table(validation_results: dict[str, bool], summary_stats: dict) -> pd.DataFrame:
    """One row per acceptance check, with the number of cases behind it where known."""
    cases = summary_stats.get("cases_checked", {})
    rows = [
        {"check": name, "passed": bool(passed), "cases": cases.get(name)}
        for name, passed in validation_results.items()
    ]
    table = pd.DataFrame(rows, columns=["check", "passed", "cases"])
    table["cases"] = table["cases"].astype("Int64")
    return table
