"""Tests for repertoires, theories, invariance scans, complete conjunctions and synthesis."""

import os
import unittest

from hypothesis import given, settings
from hypothesis import strategies as hs

from asimkit.data.generate import WORKED_EXAMPLES, enumerate_pointed_models
from asimkit.data.loader import load_model
from asimkit.data.models import PointedModel
from asimkit.errors import RepertoireError, ScanError
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas.grammar import parse_fo, parse_int
from asimkit.formulas.measures import impl_depth
from asimkit.formulas.printer import render
from asimkit.formulas.translation import st, tr
from asimkit.pipeline.evaluator import forces, holds_at
from asimkit.pipeline.invariance import (
    ASIM,
    BISIM,
    INT_ASIM,
    ScanMode,
    complete_conjunction,
    complete_int_conjunction,
    entails_on_family,
    enumerate_int_formulas,
    int_countermodel,
    invariance_scan,
    kasim,
    leq_k,
    leq_sigma,
    synthesize,
    theory_at,
)
from asimkit.pipeline.k_asimulation import check_k_asimulation_tuples
from asimkit.pipeline.simulation import check_asimulation, check_bisimulation
from asimkit.pipeline.sweeps import modal_formulas, preservation, synthesis_roundtrip

PHI = parse_fo("exists y. (R(x,y) & P1(y))")
P1, P2 = ipl.Prop(1), ipl.Prop(2)


def example(name):
    return load_model(WORKED_EXAMPLES[name])


class RepertoireFixture(unittest.TestCase):
    """Shared repertoires: over {1} to depth 2 and over {1, 2} to depth 0."""

    @classmethod
    def setUpClass(cls):
        cls.rep = enumerate_int_formulas([1], 2)
        cls.rep12 = enumerate_int_formulas([1, 2], 0)
        cls.m, cls.n = example("m.json"), example("n.json")
        cls.m1, cls.n1 = example("m1.json"), example("n1.json")
        cls.small = enumerate_pointed_models(2, [1])


class TestRepertoire(RepertoireFixture):

    def test_depth_zero_classes(self):
        rep = enumerate_int_formulas([1], 0)
        self.assertEqual([e.representative for e in rep], [ipl.Bottom(), P1])
        self.assertFalse(rep.exhausted)

    def test_signatures_unique(self):
        signatures = [e.signature for e in self.rep]
        self.assertEqual(len(signatures), len(set(signatures)))

    def test_depth_matches_representative(self):
        for entry in self.rep:
            self.assertEqual(entry.depth, impl_depth(entry.representative))

    def test_depth_monotone(self):
        shallow = {e.signature for e in enumerate_int_formulas([1], 1)}
        self.assertLessEqual(shallow, {e.signature for e in self.rep})
        self.assertLess(len(self.rep.upto(1)), len(self.rep))

    def test_negation_and_top(self):
        top = self.rep.find(self.rep.table.signature(ipl.top()))
        self.assertEqual(top.representative, ipl.top())
        self.assertEqual(top.depth, 1)
        negation = self.rep.find(self.rep.table.signature(ipl.neg(P1)))
        self.assertEqual(negation.representative, parse_int("p1 -> false"))

    def test_budget(self):
        rep = enumerate_int_formulas([1], 2, budget=5)
        self.assertTrue(rep.exhausted)
        self.assertLessEqual(len(rep), 5)

    def test_require(self):
        with self.assertRaises(RepertoireError):
            self.rep.require([1, 2], 1)
        with self.assertRaises(RepertoireError):
            self.rep.require([1], 3)
        self.rep.require([1], 2)

    def test_empty_probe(self):
        with self.assertRaises(RepertoireError):
            enumerate_int_formulas([1], 1, probe=[])

    def assertClosed(self, rep):
        for a in rep:
            for b in rep:
                for connective in (ipl.And, ipl.Or):
                    formula = connective(a.representative, b.representative)
                    self.assertIsNotNone(rep.find(rep.table.signature(formula)), formula)

    def test_closed_under_conjunction_and_disjunction(self):
        # Free distributive lattice on three generators, plus false.
        letters = enumerate_int_formulas([1, 2, 3], 0)
        self.assertEqual(len(letters), 19)
        self.assertFalse(letters.exhausted)
        self.assertClosed(letters)
        shallow = enumerate_int_formulas([1], 1)
        self.assertEqual(len(shallow), 6)
        self.assertClosed(shallow)

    def test_closure_round_cap(self):
        rep = enumerate_int_formulas([1, 2, 3], 0, closure_rounds=1)
        self.assertTrue(rep.exhausted)
        self.assertLess(len(rep), 19)

    def test_truth_matrix_matches_evaluation(self):
        family = self.small[::7]
        matrix = self.rep.truth_matrix(family, 2)
        self.assertEqual(matrix.shape, (len(self.rep), len(family)))
        for row in range(0, len(self.rep), max(1, len(self.rep) // 25)):
            formula = st(self.rep.entries[row].representative)
            for column, pointed in enumerate(family):
                self.assertEqual(bool(matrix[row, column]), holds_at(pointed, formula))

    def test_generators(self):
        generators = self.rep.generators()
        self.assertEqual(generators[:2], list(self.rep)[:2])
        for entry in generators:
            self.assertNotIsInstance(entry.representative, (ipl.And, ipl.Or))


class TestTheories(RepertoireFixture):

    def test_depth_zero(self):
        self.assertEqual(theory_at(self.n, [1], 0, self.rep), {P1})
        self.assertEqual(theory_at(self.m, [1], 0, self.rep), frozenset())

    def test_bottom_never_included(self):
        for pointed in self.small:
            self.assertNotIn(ipl.Bottom(), theory_at(pointed, [1], 2, self.rep))

    def test_inclusions(self):
        self.assertTrue(leq_k(self.m, self.n, [1], 2, self.rep))
        self.assertFalse(leq_k(self.n, self.m, [1], 0, self.rep))
        self.assertTrue(leq_k(self.n, self.n, [1], 2, self.rep))

    def test_labelled_inclusion(self):
        inclusion = leq_sigma(self.m, self.n, [1], 2, self.rep)
        self.assertTrue(inclusion)
        self.assertEqual(inclusion.depth_bound, 2)
        self.assertEqual(str(inclusion), "true (up to depth 2)")
        self.assertFalse(leq_sigma(self.n, self.m, [1], 0, self.rep))

    def test_vocabulary_mismatch(self):
        with self.assertRaises(RepertoireError):
            theory_at(self.m, [1, 2], 1, self.rep)


class TestScanMode(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(ScanMode.parse("kasim:2"), kasim(2))
        self.assertEqual(ScanMode.parse("asim"), ASIM)
        self.assertEqual(str(kasim(3)), "kasim:3")

    def test_bad_modes(self):
        for text in ("kasim", "kasim:x", "asim:1", "simulation"):
            with self.assertRaises(ValueError):
                ScanMode.parse(text)


class TestInvarianceScan(RepertoireFixture):

    def test_asimulation_counterexample(self):
        verdict = invariance_scan(PHI, [self.m, self.n], ASIM)
        self.assertFalse(verdict.passed)
        self.assertEqual((verdict.source, verdict.target), (self.m, self.n))
        self.assertTrue(check_asimulation(verdict.source, verdict.target, verdict.evidence))
        self.assertTrue(holds_at(verdict.source, PHI))
        self.assertFalse(holds_at(verdict.target, PHI))

    def test_counterexample_document(self):
        document = invariance_scan(PHI, [self.m, self.n], ASIM).to_dict()
        self.assertEqual(document["verdict"], "counterexample")
        self.assertEqual(document["source"]["point"], "a")
        self.assertEqual(document["target"]["point"], "d")
        self.assertIn({"dir": "LR", "from": "a", "to": "d"}, document["relation"]["pairs"])

    def test_k_asimulation_counterexample(self):
        for k in range(4):
            verdict = invariance_scan(PHI, [self.m, self.n], kasim(k))
            self.assertEqual((verdict.source, verdict.target), (self.m, self.n))
            self.assertTrue(check_k_asimulation_tuples(self.m, self.n, verdict.evidence, k))

    def test_intuitionistic_counterexample(self):
        verdict = invariance_scan(PHI, [self.m, self.n, self.m1, self.n1], INT_ASIM)
        self.assertEqual((verdict.source, verdict.target), (self.m1, self.n1))
        self.assertTrue(check_asimulation(self.m1, self.n1, verdict.evidence))

    def test_theory_inclusion_recorded(self):
        verdict = invariance_scan(PHI, [self.m, self.n], ASIM, repertoire=self.rep, depth=2)
        self.assertTrue(verdict.theory_inclusion)
        self.assertTrue(verdict.to_dict()["theoryIncluded"])

    def test_translation_passes(self):
        family = enumerate_pointed_models(2, [1, 2], stride=3, full_worlds=1)
        verdict = invariance_scan(st(parse_int("p1 -> p2")), family, ASIM)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.to_dict(), {"verdict": "pass", "mode": "asim"})

    def test_modal_translations_bisimulation_invariant(self):
        family = self.small
        for m in modal_formulas([1], 1):
            self.assertTrue(invariance_scan(tr(m), family, BISIM), m)
        verdict = invariance_scan(PHI, family, BISIM)
        self.assertTrue(verdict.passed)

    def test_negated_formula(self):
        # Its negation is a modal formula too, so bisimulations preserve it as well.
        negated = parse_fo("~(exists y. (R(x,y) & P1(y)))")
        self.assertTrue(invariance_scan(negated, self.small, BISIM).passed)

    def test_bisimulation_counterexample(self):
        # Truth at an unreachable world is invisible to bisimulations.
        phi = parse_fo("x = x & (exists y. P1(y))")
        verdict = invariance_scan(phi, self.small, BISIM)
        self.assertFalse(verdict.passed)
        self.assertTrue(check_bisimulation(verdict.source, verdict.target, verdict.evidence))
        self.assertEqual(verdict.to_dict()["relation"]["pairs"][0]["dir"], "LR")

    def test_preservation_on_small_family(self):
        result = preservation(self.small, self.rep, 2)
        self.assertGreater(result["checked"], 0)
        self.assertEqual(result["discrepancies"], [])

    def test_errors(self):
        with self.assertRaises(ScanError):
            invariance_scan(PHI, [], ASIM)
        with self.assertRaises(ScanError):
            invariance_scan(parse_fo("R(x,y)"), [self.m], ASIM)
        with self.assertRaises(ScanError):
            invariance_scan(parse_fo("P2(x)"), [self.m], ASIM)
        with self.assertRaises(ScanError):
            invariance_scan(PHI, [self.m, self.n], INT_ASIM)


class TestCompleteConjunction(RepertoireFixture):

    def test_shallow_point(self):
        cc = complete_conjunction(PHI, self.m, 1, self.rep)
        self.assertEqual(cc, st(ipl.top()))

    def test_letter_point(self):
        phi = parse_fo("P1(x)")
        cc = complete_conjunction(phi, self.n, 1, self.rep)
        self.assertTrue(holds_at(self.n, cc))
        self.assertTrue(entails_on_family(cc, phi, self.small))
        self.assertEqual(complete_int_conjunction(self.n, 0, self.rep), P1)

    def test_entails_every_true_representative(self):
        phi = parse_fo("P1(x) | ~P1(x)")
        for pointed in self.small[:10]:
            cc = complete_conjunction(phi, pointed, 1, self.rep)
            self.assertTrue(holds_at(pointed, cc))
            for entry in self.rep.upto(1):
                if holds_at(pointed, st(entry.representative)):
                    self.assertTrue(entails_on_family(cc, st(entry.representative), self.small))

    def test_preconditions(self):
        with self.assertRaises(RepertoireError):
            complete_conjunction(PHI, self.m, 0, self.rep)
        with self.assertRaises(RepertoireError):
            complete_conjunction(PHI, self.n, 1, self.rep)
        with self.assertRaises(RepertoireError):
            complete_conjunction(PHI, self.m, 3, self.rep)


class TestSynthesis(RepertoireFixture):

    def test_conjunction_of_letters(self):
        family = enumerate_pointed_models(2, [1, 2], stride=2, full_worlds=1)
        phi = parse_fo("P1(x) & P2(x)")
        result = synthesize(phi, 0, family, self.rep12)
        self.assertIsNotNone(result)
        self.assertEqual(impl_depth(result), 0)
        for pointed in family:
            self.assertEqual(holds_at(pointed, st(result)), holds_at(pointed, phi))

    def test_separating_formula_has_no_synthesis(self):
        family = [self.m, self.n] + self.small
        for k in range(3):
            self.assertIsNone(synthesize(PHI, k, family, self.rep))

    def test_valid_formula(self):
        phi = parse_fo("forall y. (R(x,y) -> (P1(y) -> P1(y)))")
        self.assertEqual(synthesize(phi, 1, self.small, self.rep), ipl.top())

    def test_unsatisfiable_formula(self):
        self.assertEqual(synthesize(parse_fo("P1(x) & ~P1(x)"), 1, self.small, self.rep), ipl.Bottom())

    def test_roundtrip(self):
        result = synthesis_roundtrip(self.rep, self.rep.table.family, k=1)
        self.assertEqual(result["checked"], len(self.rep.upto(1)))
        self.assertEqual(result["discrepancies"], [])

    def test_intuitionistic_only(self):
        family = enumerate_pointed_models(2, [1], intuitionistic_only=True)
        result = synthesize(PHI, 2, family, self.rep, intuitionistic_only=True)
        self.assertIsNotNone(result)
        for pointed in family:
            self.assertEqual(holds_at(pointed, st(result)), holds_at(pointed, PHI))
        self.assertIsNone(synthesize(PHI, 2, [self.m1, self.n1] + family, self.rep, intuitionistic_only=True))
        result = synthesize(parse_fo("P1(x)"), 1, [self.m, self.n] + family, self.rep, intuitionistic_only=True)
        self.assertEqual(result, P1)

    def test_empty_family(self):
        with self.assertRaises(ScanError):
            synthesize(PHI, 1, [], self.rep)

    def test_depth_beyond_repertoire(self):
        with self.assertRaises(RepertoireError):
            synthesize(PHI, 3, self.small, self.rep)


class TestInvarianceOfIntuitionisticFormulas(RepertoireFixture):
    """Translations of intuitionistic formulas pass the scans that should preserve them."""

    def test_synthesized_formula_is_asimulation_invariant(self):
        phis = [
            "P1(x)", "~P1(x)", "P1(x) | ~P1(x)",
            "forall y. (R(x,y) -> P1(y))", "exists y. R(x,y)", "exists y. (R(x,y) & P1(y))",
        ]
        found = 0
        for text in phis:
            phi = parse_fo(text)
            for k in range(3):
                result = synthesize(phi, k, self.small, self.rep)
                if result is None:
                    continue
                found += 1
                self.assertTrue(invariance_scan(st(result), self.small, ASIM).passed, render(result))
        self.assertGreater(found, 0)

    @settings(max_examples=8, deadline=None)
    @given(hs.data())
    def test_bounded_depth_representatives_pass_kasim(self, data):
        k = data.draw(hs.integers(min_value=0, max_value=2))
        entry = data.draw(hs.sampled_from(self.rep.upto(k)))
        verdict = invariance_scan(st(entry.representative), self.small, kasim(k))
        self.assertTrue(verdict.passed, render(entry.representative))

    @unittest.skipUnless(os.environ.get("ASIMKIT_SLOW"), "set ASIMKIT_SLOW=1 for the 3-world sweep")
    def test_preservation_three_worlds(self):
        family = enumerate_pointed_models(3, [1])
        result = preservation(family, self.rep, 2)
        self.assertGreater(result["checked"], 0)
        self.assertEqual(result["discrepancies"], [])


class TestFamilyConsequence(RepertoireFixture):

    def test_entails(self):
        both = parse_fo("P1(x) & (exists y. P1(y))")
        self.assertTrue(entails_on_family(both, parse_fo("P1(x)"), self.small))
        self.assertFalse(entails_on_family(parse_fo("P1(x)"), PHI, self.small))

    def test_countermodel_to_excluded_middle(self):
        family = enumerate_pointed_models(2, [1], intuitionistic_only=True)
        counter = int_countermodel([], parse_int("p1 | (p1 -> false)"), family)
        self.assertIsInstance(counter, PointedModel)
        self.assertFalse(forces(counter.model, counter.point, parse_int("p1 | (p1 -> false)")))

    def test_no_countermodel(self):
        counter = int_countermodel([P1, parse_int("p1 -> p2")], P2, enumerate_pointed_models(2, [1, 2]))
        self.assertIsNone(counter)


if __name__ == "__main__":
    unittest.main()
