"""Final report generation."""

from datetime import datetime

from asimkit.config import VERSION
from asimkit.formulas.printer import render


def _verdict_summary(verdict) -> dict:
    if verdict.passed:
        return {"verdict": "pass", "mode": str(verdict.mode)}
    return {
        "verdict": "counterexample",
        "mode": str(verdict.mode),
        "source": verdict.source.label(),
        "target": verdict.target.label(),
        "evidence_size": len(verdict.evidence),
    }


def build_final_report(
    worked: dict,
    sweeps: dict,
    summary_stats: dict,
    validation_results: dict,
    max_worlds: int,
    stride: int,
) -> dict:
    """Build the structured final report."""
    return {
        "metadata": {
            "tool": "asimkit",
            "version": VERSION,
            "family": {"max_worlds": max_worlds, "sample_stride": stride, "vocabulary": [1]},
            "execution_timestamp": datetime.now().isoformat(),
        },
        "worked_examples": {
            "separating_formula": render(worked["phi"]),
            "truth": {"M,a": worked["phi_at_m"], "N,d": worked["phi_at_n"]},
            "tuple_relation_by_k": {str(k): r.ok for k, r in worked["tuple_checks"].items()},
            "k_asimulation_by_k": {str(k): v for k, v in worked["k_asim_exists"].items()},
            "scans": {
                "asim": _verdict_summary(worked["scan_asim"]),
                **{f"kasim:{k}": _verdict_summary(v) for k, v in worked["scan_kasim"].items()},
                "int": _verdict_summary(worked["scan_int"]),
            },
            "relation_checks": {
                "B": worked["b_check"].to_dict(),
                "C": worked["c_check"].to_dict(),
            },
            "intuitionistic": {
                "M1": worked["m1_report"].to_dict(),
                "N1": worked["n1_report"].to_dict(),
            },
            "separating_synthesis": {
                str(k): (render(r) if r is not None else None)
                for k, r in worked["separating_synthesis"].items()
            },
        },
        "sweeps": {
            name: {"checked": s["checked"], "discrepancies": s["discrepancies"][:20]}
            for name, s in sweeps.items()
        },
        "summary": summary_stats,
        "validation": validation_results,
        "all_passed": all(validation_results.values()),
    }
