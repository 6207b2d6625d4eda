"""Exception hierarchy shared by every asimkit module."""


class AsimkitError(Exception):
    """Base class for all errors raised by asimkit."""


class FormulaSyntaxError(AsimkitError, ValueError):
    """Malformed formula text. ``column`` is 1-based."""

    def __init__(self, message: str, text: str = "", column: int | None = None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}")


class FormulaArityError(FormulaSyntaxError):
    """A predicate letter applied to the wrong number of variables."""


class ModelFormatError(AsimkitError, ValueError):
    """Malformed model document or inconsistent model structure."""


class RelationError(AsimkitError, ValueError):
    """Relation entries that do not fit the models they relate."""


class EvaluationError(AsimkitError):
    """A formula cannot be evaluated under the given model and assignment."""


class BudgetExceededError(AsimkitError):
    """A configured search or enumeration cap was hit."""


class RepertoireError(AsimkitError):
    """Repertoire does not cover the requested vocabulary or depth."""


class ScanError(AsimkitError):
    """Invariance scan called with an unusable family."""
