"""Tests for formula syntax, rendering, measures and the standard translations."""

import unittest

from hypothesis import given, settings

from asimkit.errors import FormulaArityError, FormulaSyntaxError
from asimkit.evaluation.strategies import fo_formulas, int_formulas, modal_formulas, small_int_formulas
from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml
from asimkit.formulas.grammar import parse_fo, parse_int, parse_modal
from asimkit.formulas.measures import (
    box_depth,
    degree,
    free_variables,
    impl_depth,
    make_vocabulary,
    size,
    vocabulary_of,
)
from asimkit.formulas.printer import render
from asimkit.formulas.translation import st, tr

P1, P2, P3 = ipl.Prop(1), ipl.Prop(2), ipl.Prop(3)


def degree_oracle(phi) -> int:
    """Quantifier nesting computed with an explicit stack instead of recursion."""
    best = 0
    stack = [(phi, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, (fol.Forall, fol.Exists)):
            stack.append((node.body, depth + 1))
        elif isinstance(node, fol.Neg):
            stack.append((node.body, depth))
        elif isinstance(node, (fol.And, fol.Or, fol.Imp)):
            stack.extend([(node.left, depth), (node.right, depth)])
        else:
            best = max(best, depth)
    return best


class TestParseInt(unittest.TestCase):

    def test_implication(self):
        self.assertEqual(parse_int("p1 -> p2"), ipl.Imp(P1, P2))

    def test_false(self):
        self.assertEqual(parse_int("false"), ipl.Bottom())

    def test_nested(self):
        self.assertEqual(parse_int("p1 & (p2 | false)"), ipl.And(P1, ipl.Or(P2, ipl.Bottom())))

    def test_implication_right_associative(self):
        self.assertEqual(parse_int("p1 -> p2 -> p3"), ipl.Imp(P1, ipl.Imp(P2, P3)))

    def test_precedence(self):
        self.assertEqual(
            parse_int("p1 & p2 | p3 -> p1"),
            ipl.Imp(ipl.Or(ipl.And(P1, P2), P3), P1),
        )

    def test_negation_rejected_without_sugar(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_int("~p1")
        self.assertEqual(ctx.exception.column, 1)

    def test_negation_sugar(self):
        self.assertEqual(parse_int("~p1", sugar=True), ipl.Imp(P1, ipl.Bottom()))

    def test_syntax_error_has_column(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_int("p1 & & p2")
        self.assertEqual(ctx.exception.column, 6)

    def test_truncated_input(self):
        with self.assertRaises(FormulaSyntaxError):
            parse_int("p1 ->")

    def test_letter_zero_rejected(self):
        with self.assertRaises(FormulaSyntaxError):
            parse_int("p0")

    def test_syntax_error_is_value_error(self):
        with self.assertRaises(ValueError):
            parse_int("(p1")


class TestParseFirstOrder(unittest.TestCase):

    def test_exists(self):
        self.assertEqual(
            parse_fo("exists y. (R(x,y) & P1(y))"),
            fol.Exists("y", fol.And(fol.Rel("x", "y"), fol.Pred(1, "y"))),
        )

    def test_equality(self):
        self.assertEqual(parse_fo("x = x"), fol.Eq("x", "x"))

    def test_unary_predicate_arity(self):
        with self.assertRaises(FormulaArityError):
            parse_fo("P1(x,y)")

    def test_binary_relation_arity(self):
        with self.assertRaises(FormulaArityError):
            parse_fo("R(x)")

    def test_quantifier_scope_extends_right(self):
        self.assertEqual(
            parse_fo("forall y. R(x,y) -> P1(y)"),
            fol.Forall("y", fol.Imp(fol.Rel("x", "y"), fol.Pred(1, "y"))),
        )

    def test_negated_equality(self):
        self.assertEqual(parse_fo("~(x = x)"), fol.Neg(fol.Eq("x", "x")))

    def test_variable_names_follow_the_grammar(self):
        for bad in ("X", "forall", "exists", "", "1x", "x y", None):
            with self.assertRaises(ValueError):
                fol.Pred(1, bad)
        with self.assertRaises(ValueError):
            fol.Forall("Y", fol.Eq("x", "x"))
        with self.assertRaises(ValueError):
            st(P1, "X")
        phi = fol.Exists("_y2", fol.Rel("x", "_y2"))
        self.assertEqual(parse_fo(render(phi)), phi)


class TestParseModal(unittest.TestCase):

    def test_box(self):
        self.assertEqual(parse_modal("[] p1"), ml.Box(ml.Prop(1)))

    def test_negation(self):
        self.assertEqual(parse_modal("~ p2"), ml.Neg(ml.Prop(2)))

    def test_box_of_conjunction(self):
        self.assertEqual(
            parse_modal("[](p1 & ~p2)"),
            ml.Box(ml.And(ml.Prop(1), ml.Neg(ml.Prop(2)))),
        )

    def test_implication_needs_sugar(self):
        with self.assertRaises(FormulaSyntaxError):
            parse_modal("p1 -> p2")
        self.assertEqual(
            parse_modal("p1 -> p2", sugar=True),
            ml.Neg(ml.And(ml.Prop(1), ml.Neg(ml.Prop(2)))),
        )


class TestRender(unittest.TestCase):

    def test_negation_as_implication(self):
        self.assertEqual(render(ipl.Imp(P1, ipl.Bottom())), "p1 -> false")

    def test_exists(self):
        phi = fol.Exists("y", fol.And(fol.Rel("x", "y"), fol.Pred(1, "y")))
        self.assertEqual(render(phi), "exists y. (R(x,y) & P1(y))")

    def test_box(self):
        self.assertEqual(render(ml.Box(ml.Prop(1))), "[] p1")

    @given(int_formulas())
    def test_int_round_trip(self, formula):
        self.assertEqual(parse_int(render(formula)), formula)

    @given(modal_formulas())
    def test_modal_round_trip(self, formula):
        self.assertEqual(parse_modal(render(formula)), formula)

    @given(fo_formulas())
    def test_fo_round_trip(self, formula):
        self.assertEqual(parse_fo(render(formula)), formula)


class TestMeasures(unittest.TestCase):

    def test_atomic_degree(self):
        self.assertEqual(degree(fol.Pred(1, "x")), 0)

    def test_degree_of_translated_top(self):
        self.assertEqual(degree(st(ipl.top(), "x")), 1)

    def test_degree_of_translated_bottom(self):
        self.assertEqual(degree(st(ipl.Bottom(), "x")), 0)

    def test_impl_depth(self):
        self.assertEqual(impl_depth(P1), 0)
        self.assertEqual(impl_depth(ipl.Imp(P1, P2)), 1)
        self.assertEqual(impl_depth(ipl.And(ipl.Imp(P1, P2), P3)), 1)

    def test_vocabulary(self):
        self.assertEqual(vocabulary_of(parse_fo("exists y. (R(x,y) & P1(y))")), {1})
        self.assertEqual(vocabulary_of(parse_fo("x = x")), frozenset())
        self.assertEqual(vocabulary_of(parse_int("p2 -> p7")), {2, 7})

    def test_box_depth_and_size(self):
        m = parse_modal("[](p1 & ~[]p2)")
        self.assertEqual(box_depth(m), 2)
        self.assertEqual(size(m), 6)

    def test_free_variables(self):
        self.assertEqual(free_variables(parse_fo("forall y. (R(x,y) -> P1(z))")), {"x", "z"})

    def test_make_vocabulary(self):
        self.assertEqual(make_vocabulary([2, 1, 2]), {1, 2})
        for bad in ([0], [-3], ["1"]):
            with self.assertRaises(ValueError):
                make_vocabulary(bad)

    @given(fo_formulas())
    def test_degree_matches_oracle(self, phi):
        self.assertEqual(degree(phi), degree_oracle(phi))


class TestTranslation(unittest.TestCase):

    def test_st_letter(self):
        self.assertEqual(st(P1, "x"), fol.Pred(1, "x"))

    def test_st_bottom(self):
        self.assertEqual(st(ipl.Bottom(), "x"), fol.Neg(fol.Eq("x", "x")))

    def test_st_implication(self):
        self.assertEqual(
            st(ipl.Imp(P1, P2), "x"),
            fol.Forall("y0", fol.Imp(
                fol.Rel("x", "y0"), fol.Imp(fol.Pred(1, "y0"), fol.Pred(2, "y0")),
            )),
        )

    def test_st_rendering(self):
        self.assertEqual(
            render(st(parse_int("p1 -> p2"), "x")),
            "forall y0. (R(x,y0) -> (P1(y0) -> P2(y0)))",
        )

    def test_st_skips_the_free_variable(self):
        phi = st(ipl.Imp(P1, P2), "y0")
        self.assertEqual(phi.var, "y1")
        self.assertEqual(free_variables(phi), {"y0"})

    def test_tr_clauses(self):
        self.assertEqual(tr(ml.Prop(1), "x"), fol.Pred(1, "x"))
        self.assertEqual(tr(ml.Neg(ml.Prop(1)), "x"), fol.Neg(fol.Pred(1, "x")))
        self.assertEqual(
            tr(ml.Box(ml.Prop(1)), "x"),
            fol.Forall("y0", fol.Imp(fol.Rel("x", "y0"), fol.Pred(1, "y0"))),
        )

    def test_st_degree_equals_impl_depth_by_enumeration(self):
        for i in small_int_formulas(3):
            self.assertEqual(degree(st(i, "x")), impl_depth(i), render(i))

    @settings(max_examples=200)
    @given(int_formulas())
    def test_st_invariants(self, i):
        phi = st(i, "x")
        self.assertEqual(free_variables(phi), {"x"})
        self.assertEqual(vocabulary_of(phi), vocabulary_of(i))
        self.assertEqual(degree(phi), impl_depth(i))
        self.assertEqual(parse_fo(render(phi)), phi)

    @given(modal_formulas())
    def test_tr_invariants(self, m):
        phi = tr(m, "x")
        self.assertEqual(free_variables(phi), {"x"})
        self.assertEqual(vocabulary_of(phi), vocabulary_of(m))
        self.assertEqual(degree(phi), box_depth(m))


if __name__ == "__main__":
    unittest.main()
