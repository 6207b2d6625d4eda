"""Formula languages: intuitionistic, modal and first-order syntax, parsing, measures."""

from asimkit.formulas.grammar import parse_fo, parse_int, parse_modal
from asimkit.formulas.measures import (
    Vocabulary,
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

__all__ = [
    "Vocabulary",
    "box_depth",
    "degree",
    "free_variables",
    "impl_depth",
    "make_vocabulary",
    "parse_fo",
    "parse_int",
    "parse_modal",
    "render",
    "size",
    "st",
    "tr",
    "vocabulary_of",
]
