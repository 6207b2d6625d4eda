"""Tests for the command-line interface: output and exit codes."""

import contextlib
import io
import json
import os
import tempfile
import unittest

from asimkit.cli import run
from asimkit.data.loader import dataset_dir

DATA = dataset_dir()
PHI = "exists y. (R(x,y) & P1(y))"


def path(name: str) -> str:
    return os.path.join(DATA, name)


def invoke(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue().strip(), err.getvalue()


class TestFormulaCommands(unittest.TestCase):

    def test_translate(self):
        code, out, _ = invoke("translate", "st", "--var", "x", "p1 -> p2")
        self.assertEqual(code, 0)
        self.assertEqual(out, "forall y0. (R(x,y0) -> (P1(y0) -> P2(y0)))")

    def test_translate_modal_json(self):
        code, out, _ = invoke("translate", "tr", "[] p1", "--json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {"formula": "forall y0. (R(x,y0) -> P1(y0))", "degree": 1})

    def test_parse(self):
        code, out, _ = invoke("parse", "int", "p1 -> p2 -> p3")
        self.assertEqual((code, out), (0, "p1 -> (p2 -> p3)"))

    def test_parse_measures(self):
        code, out, _ = invoke("parse", "fo", PHI, "--json")
        payload = json.loads(out)
        self.assertEqual(payload["degree"], 1)
        self.assertEqual(payload["freeVariables"], ["x"])
        self.assertEqual(payload["vocabulary"], [1])

    def test_parse_error(self):
        code, out, err = invoke("parse", "int", "~p1")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("column 1", err)

    def test_sugar(self):
        code, out, _ = invoke("parse", "int", "~p1", "--sugar")
        self.assertEqual((code, out), (0, "p1 -> false"))


class TestModelCommands(unittest.TestCase):

    def test_model_check(self):
        self.assertEqual(invoke("mc", path("m.json"), "--fo", PHI)[:2], (0, "true"))
        self.assertEqual(invoke("mc", path("n.json"), "--fo", PHI)[:2], (0, "false"))
        self.assertEqual(invoke("mc", path("m.json"), "--at", "c", "--fo", "P1(x)")[:2], (0, "true"))

    def test_forcing_and_modal(self):
        self.assertEqual(invoke("mc", path("n1.json"), "--int", "p1 -> false")[:2], (0, "true"))
        self.assertEqual(invoke("mc", path("m.json"), "--modal", "[] p1")[:2], (0, "false"))

    def test_model_check_errors(self):
        self.assertEqual(invoke("mc", path("m.json"), "--fo", "R(x,y)")[0], 2)
        self.assertEqual(invoke("mc", path("m.json"), "--at", "z", "--fo", "P1(x)")[0], 2)
        self.assertEqual(invoke("mc", path("missing.json"), "--fo", "P1(x)")[0], 2)

    def test_validate(self):
        code, out, _ = invoke("validate-int", path("m.json"))
        self.assertEqual(code, 1)
        self.assertIn("not reflexive at: a, b, c", out)
        code, out, _ = invoke("validate-int", path("m1.json"), "--json")
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["intuitionistic"])

    def test_enumerate(self):
        code, out, _ = invoke("enum-models", "--max-worlds", "1")
        self.assertEqual(code, 0)
        self.assertTrue(out.endswith("2 models"))

    def test_enumerate_to_directory(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _, _ = invoke("enum-models", "--max-worlds", "2", "--vocab", "1", "--intuitionistic", "--out", tmp)
            self.assertEqual(code, 0)
            self.assertIn("n1-r1-v1.json", os.listdir(tmp))

    def test_enumerate_rejects_bad_letters(self):
        code, _, err = invoke("enum-models", "--max-worlds", "1", "--vocab", "0")
        self.assertEqual(code, 2)
        self.assertIn("positive integer", err)

    def test_export_dot(self):
        code, out, _ = invoke("export-dot", path("n.json"))
        self.assertEqual(code, 0)
        self.assertIn('digraph "n"', out)
        self.assertIn('"d" -> "e";', out)

    def test_write_examples(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, out, _ = invoke("write-examples", "--out", tmp, "--json")
            self.assertEqual(code, 0)
            self.assertEqual(sorted(os.listdir(tmp)), json.loads(out)["written"])
            self.assertEqual(invoke("mc", os.path.join(tmp, "m.json"), "--fo", PHI)[:2], (0, "true"))


class TestRelationCommands(unittest.TestCase):

    def test_exists(self):
        self.assertEqual(invoke("asim", "exists", "--left", path("m.json"), "--right", path("n.json"))[:2], (0, "true"))
        self.assertEqual(invoke("asim", "exists", "--left", path("n.json"), "--right", path("m.json"))[:2], (1, "false"))

    def test_exists_bounded_with_witness(self):
        code, out, _ = invoke(
            "asim", "exists", "--left", path("m.json"), "--right", path("n.json"), "--k", "2", "--json"
        )
        payload = json.loads(out)
        self.assertEqual(code, 0)
        self.assertTrue(payload["exists"])
        self.assertEqual(len(payload["witness"]["pairs"]), 3)

    def test_check(self):
        code, out, _ = invoke(
            "asim", "check", "--left", path("m.json"), "--right", path("n.json"), "--relation", path("b.json")
        )
        self.assertEqual((code, out), (0, "ok"))
        code, _, _ = invoke(
            "asim", "check", "--left", path("m1.json"), "--right", path("n1.json"), "--relation", path("c.json")
        )
        self.assertEqual(code, 0)

    def test_check_violation(self):
        code, out, _ = invoke(
            "asim", "check", "--left", path("m.json"), "--right", path("n.json"),
            "--relation", path("c.json"), "--json",
        )
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)["kind"], "StepBack")

    def test_tuple_relation_needs_bound(self):
        args = ["asim", "check", "--left", path("m.json"), "--right", path("n.json"), "--relation", path("a_tuples.json")]
        self.assertEqual(invoke(*args)[0], 2)
        self.assertEqual(invoke(*args, "--k", "5")[:2], (0, "ok"))

    def test_bisimulation(self):
        code, out, _ = invoke("bisim", "greatest", "--left", path("m.json"), "--right", path("n.json"))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {"pairs": [{"dir": "LR", "from": "b", "to": "e"}]})
        code, _, err = invoke("bisim", "check", "--left", path("m.json"), "--right", path("n.json"))
        self.assertEqual(code, 2)
        self.assertIn("--relation", err)

    def test_bisimulation_to_asimulation(self):
        with tempfile.TemporaryDirectory() as tmp:
            relation = os.path.join(tmp, "e.json")
            with open(relation, "w") as f:
                json.dump({"pairs": [{"from": "b", "to": "e"}]}, f)
            models = ["--left", path("m.json"), "--right", path("n.json"), "--relation", relation]
            code, out, _ = invoke("bisim", "to-asim", *models, "--left-at", "b", "--right-at", "e", "--json")
            self.assertEqual(code, 0)
            payload = json.loads(out)
            self.assertTrue(payload["asimulation"])
            self.assertIn({"dir": "LR", "from": "b", "to": "e"}, payload["pairs"])
            self.assertIn({"dir": "RL", "from": "e", "to": "b"}, payload["pairs"])
            code, out, _ = invoke("bisim", "to-asim", *models)
            self.assertEqual(code, 1)
            self.assertIn("not an asimulation", out)


class TestScanAndSynthesis(unittest.TestCase):

    def test_scan_counterexample(self):
        code, out, _ = invoke("scan", "--mode", "asim", "--fo", PHI, "--models", DATA, "--json")
        self.assertEqual(code, 1)
        payload = json.loads(out)
        self.assertEqual(payload["verdict"], "counterexample")
        self.assertEqual((payload["source"]["point"], payload["target"]["point"]), ("a", "d"))

    def test_scan_intuitionistic(self):
        code, out, _ = invoke("scan", "--mode", "int", "--fo", PHI, "--models", DATA)
        self.assertEqual(code, 1)
        self.assertEqual(out, "counterexample: (m1,a) -> (n1,d)")

    def test_scan_bounded_with_theories(self):
        code, out, _ = invoke("scan", "--mode", "kasim:2", "--fo", PHI, "--models", DATA, "--depth", "1")
        self.assertEqual(code, 1)
        self.assertIn("included in target: true (up to depth 1)", out)

    def test_scan_pass(self):
        code, out, _ = invoke("scan", "--mode", "bisim", "--fo", PHI, "--enumerate", "2", "--json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {"verdict": "pass", "mode": "bisim"})

    def test_scan_bad_mode(self):
        self.assertEqual(invoke("scan", "--mode", "kasim", "--fo", PHI, "--models", DATA)[0], 2)

    def test_synthesis_absent(self):
        code, out, err = invoke("synth", "--fo", PHI, "--depth", "1", "--models", DATA)
        self.assertEqual((code, out), (1, "none"))
        self.assertIn("relative to", err)

    def test_synthesis(self):
        code, out, _ = invoke("synth", "--fo", "P1(x)", "--depth", "1", "--enumerate", "2", "--json")
        self.assertEqual(code, 0)
        result = json.loads(out)["result"]
        self.assertIsNotNone(result)
        self.assertIn("p1", result)

    def test_family_with_mixed_vocabularies(self):
        documents = {
            "one.json": {"vocab": [1], "worlds": ["a", "b"], "rel": [["a", "b"]], "val": {"P1": ["a"]}},
            "two.json": {"vocab": [1, 2], "worlds": ["c"], "rel": [], "val": {"P2": ["c"]}},
        }
        with tempfile.TemporaryDirectory() as tmp:
            for name, document in documents.items():
                with open(os.path.join(tmp, name), "w") as f:
                    json.dump(document, f)
            code, out, _ = invoke("synth", "--fo", "P1(x)", "--depth", "0", "--models", tmp, "--json")
            self.assertEqual((code, json.loads(out)), (0, {"result": "p1"}))
            code, out, _ = invoke("scan", "--mode", "asim", "--fo", "P1(x)", "--models", tmp, "--depth", "0")
            self.assertEqual(code, 0)
            self.assertTrue(out.startswith("pass (3 pointed models"))


class TestUsage(unittest.TestCase):

    def test_unknown_command(self):
        self.assertEqual(invoke("frobnicate")[0], 2)

    def test_unknown_flag(self):
        self.assertEqual(invoke("parse", "int", "p1", "--colour")[0], 2)

    def test_version(self):
        code, out, _ = invoke("--version")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("asimkit "))


if __name__ == "__main__":
    unittest.main()
