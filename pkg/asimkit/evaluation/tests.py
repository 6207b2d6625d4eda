"""Acceptance tests over the output of a reproduction run.

Usage:
    from asimkit.pipeline.runner import run_pipeline
    from asimkit.evaluation.tests import set_context, run_all_tests
    set_context(run_pipeline(output_dir="out") | {"_data_dir": "out"})
    run_all_tests()
"""

import os
import unittest

import pandas as pd

from asimkit.config import FINAL_REPORT_FILENAME
from asimkit.data.relations import DirectedRelation, TupleRelation
from asimkit.pipeline.validation import summary_table

CTX: dict = {}


def set_context(variables: dict) -> None:
    """Set the test context with pipeline output variables."""
    global CTX
    CTX = variables


def _get(key: str):
    """Retrieve a variable from the test context."""
    if key not in CTX:
        raise KeyError(f"'{key}' not found in test context")
    return CTX[key]


# ---------------------------------------------------------------------------
# Test classes
# ---------------------------------------------------------------------------

class TestWorkedExampleData(unittest.TestCase):

    def test_models_loaded(self):
        examples = _get("examples")
        for key in ("M", "N", "M1", "N1"):
            self.assertIn(key, examples)
        self.assertEqual(examples["M"].point, "a")
        self.assertEqual(examples["N"].point, "d")

    def test_relations_loaded(self):
        examples = _get("examples")
        self.assertIsInstance(examples["B"], DirectedRelation)
        self.assertIsInstance(examples["C"], DirectedRelation)
        self.assertIsInstance(examples["A_tuples"], TupleRelation)
        self.assertEqual(len(examples["A_tuples"]), 3)


class TestFamily(unittest.TestCase):

    def test_family_not_empty(self):
        self.assertGreater(len(_get("models")), 0)
        self.assertGreaterEqual(len(_get("family")), len(_get("models")))

    def test_probe_inside_family(self):
        family_ids = {id(p.model) for p in _get("family")}
        self.assertTrue(all(id(p.model) in family_ids for p in _get("probe")))


class TestRepertoire(unittest.TestCase):

    def test_classes_distinct(self):
        signatures = [e.signature for e in _get("repertoire")]
        self.assertEqual(len(signatures), len(set(signatures)))

    def test_not_exhausted(self):
        self.assertFalse(_get("repertoire").exhausted, "Repertoire budget must cover the run")


class TestWorkedExamples(unittest.TestCase):

    def test_truth_values(self):
        worked = _get("worked")
        self.assertTrue(worked["phi_at_m"])
        self.assertFalse(worked["phi_at_n"])

    def test_tuple_relation_every_k(self):
        checks = _get("worked")["tuple_checks"]
        self.assertEqual(sorted(checks), list(range(6)))
        self.assertTrue(all(r.ok for r in checks.values()))

    def test_k_asimulation_every_k(self):
        self.assertTrue(all(_get("worked")["k_asim_exists"].values()))

    def test_scans_find_the_pair(self):
        worked = _get("worked")
        m, n = _get("examples")["M"], _get("examples")["N"]
        for verdict in [worked["scan_asim"], *worked["scan_kasim"].values()]:
            self.assertFalse(verdict.passed)
            self.assertEqual((verdict.source, verdict.target), (m, n))

    def test_intuitionistic_example(self):
        worked = _get("worked")
        self.assertTrue(worked["m1_report"].ok and worked["n1_report"].ok)
        self.assertTrue(worked["c_check"].ok)
        self.assertFalse(worked["scan_int"].passed)

    def test_no_synthesis_for_separating_formula(self):
        synthesis = _get("worked")["separating_synthesis"]
        self.assertTrue(all(r is None for r in synthesis.values()))


class TestSweeps(unittest.TestCase):
    """Every property sweep must run cases and find nothing."""

    def test_every_sweep_checked_cases(self):
        for name, sweep in _get("sweeps").items():
            self.assertGreater(sweep["checked"], 0, name)

    def test_no_discrepancies(self):
        for name, sweep in _get("sweeps").items():
            self.assertEqual(sweep["discrepancies"], [], name)


class TestValidationResults(unittest.TestCase):

    def test_is_dict(self):
        self.assertIsInstance(_get("validation_results"), dict)

    def test_all_checks_pass(self):
        failed = [name for name, ok in _get("validation_results").items() if not ok]
        self.assertEqual(failed, [])


class TestSummaryStats(unittest.TestCase):

    def test_required_keys(self):
        ss = _get("summary_stats")
        for key in ["model_count", "pointed_model_count", "repertoire_classes",
                    "cases_checked", "total_discrepancies"]:
            self.assertIn(key, ss)
        self.assertEqual(ss["total_discrepancies"], 0)

    def test_summary_table(self):
        table = summary_table(_get("validation_results"), _get("summary_stats"))
        self.assertIsInstance(table, pd.DataFrame)
        self.assertEqual(list(table.columns), ["check", "passed", "cases"])
        self.assertTrue(table["passed"].all())


class TestFinalReport(unittest.TestCase):

    def test_sections(self):
        fr = _get("final_report")
        for key in ("metadata", "worked_examples", "sweeps", "summary", "validation"):
            self.assertIn(key, fr)

    def test_all_passed(self):
        self.assertTrue(_get("final_report")["all_passed"])


class TestArtifactGeneration(unittest.TestCase):
    """Verify the run saved its report to disk."""

    def test_report_saved_to_disk(self):
        data_dir = CTX.get("_data_dir", "")
        if not data_dir:
            self.skipTest("_data_dir not set in context")
        report_path = os.path.join(data_dir, FINAL_REPORT_FILENAME)
        self.assertTrue(os.path.exists(report_path), f"{FINAL_REPORT_FILENAME} must be saved to the output directory")


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

ALL_TEST_CLASSES = [
    TestWorkedExampleData, TestFamily, TestRepertoire, TestWorkedExamples,
    TestSweeps, TestValidationResults, TestSummaryStats, TestFinalReport,
    TestArtifactGeneration,
]


def run_all_tests(verbosity: int = 2) -> unittest.TestResult:
    """Run all test classes and return the result."""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for tc in ALL_TEST_CLASSES:
        suite.addTests(loader.loadTestsFromTestCase(tc))

    result = unittest.TextTestRunner(verbosity=verbosity).run(suite)
    print(f"\nRan {result.testsRun} tests: {len(result.failures)} failures, {len(result.errors)} errors")
    return result
