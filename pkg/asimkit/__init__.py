"""Asimulations and invariance checks for intuitionistic propositional formulas."""

from asimkit.config import VERSION

__version__ = VERSION
