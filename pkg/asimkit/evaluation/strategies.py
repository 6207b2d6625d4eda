"""Hypothesis strategies for the three formula languages."""

import itertools

import hypothesis.strategies as st

from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml

LETTERS = st.integers(min_value=1, max_value=3)
VARIABLES = st.sampled_from(["x", "y", "z", "y0", "w_1"])


def int_formulas(max_leaves: int = 12):
    leaves = st.one_of(st.just(ipl.Bottom()), LETTERS.map(ipl.Prop))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(ipl.And, sub, sub),
            st.builds(ipl.Or, sub, sub),
            st.builds(ipl.Imp, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def modal_formulas(max_leaves: int = 12):
    return st.recursive(
        LETTERS.map(ml.Prop),
        lambda sub: st.one_of(
            st.builds(ml.And, sub, sub),
            st.builds(ml.Neg, sub),
            st.builds(ml.Box, sub),
        ),
        max_leaves=max_leaves,
    )


def fo_formulas(max_leaves: int = 12):
    leaves = st.one_of(
        st.builds(fol.Pred, LETTERS, VARIABLES),
        st.builds(fol.Rel, VARIABLES, VARIABLES),
        st.builds(fol.Eq, VARIABLES, VARIABLES),
    )
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(fol.Neg, sub),
            st.builds(fol.And, sub, sub),
            st.builds(fol.Or, sub, sub),
            st.builds(fol.Imp, sub, sub),
            st.builds(fol.Forall, VARIABLES, sub),
            st.builds(fol.Exists, VARIABLES, sub),
        ),
        max_leaves=max_leaves,
    )


def small_int_formulas(max_depth: int) -> list:
    """A deterministic stock of formulas of every implication depth up to ``max_depth``."""
    p1, p2 = ipl.Prop(1), ipl.Prop(2)
    layers = [[ipl.Bottom(), p1, p2, ipl.And(p1, p2), ipl.Or(p2, ipl.Bottom())]]
    for _ in range(max_depth):
        previous = layers[-1][:3]
        known = [f for layer in layers for f in layer][:4]
        layer = [ipl.Imp(a, b) for a, b in itertools.product(previous, known)]
        layer += [ipl.And(layer[0], p1), ipl.Or(p2, layer[-1])]
        layers.append(layer)
    return [f for layer in layers for f in layer]
