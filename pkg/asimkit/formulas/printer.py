"""Rendering of formulas in the concrete syntax accepted by ``asimkit.formulas.grammar``.

Parentheses are inserted only where the grammar needs them to rebuild the same
tree, except that binary operands of an implication are always parenthesized.
"""

from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml


def _kind(node) -> str:
    match node:
        case fol.And() | ipl.And() | ml.And():
            return "and"
        case fol.Or() | ipl.Or():
            return "or"
        case fol.Imp() | ipl.Imp():
            return "imp"
        case fol.Forall() | fol.Exists():
            return "quant"
        case fol.Neg() | ml.Neg() | ml.Box():
            return "unary"
        case fol.Eq():
            return "eq"
    return "atom"


def _needs_parens(parent: str, child: str, side: str) -> bool:
    if child in ("atom",):
        return False
    if parent == "quant":
        return child in ("and", "or", "imp")
    if parent == "unary":
        return child in ("and", "or", "imp", "quant", "eq")
    if child == "quant":
        return True
    if parent == "imp":
        return child in ("and", "or", "imp")
    if parent == "or":
        return child == "imp" or (child == "or" and side == "right")
    if parent == "and":
        return child in ("or", "imp") or (child == "and" and side == "right")
    return False


def _operand(parent, child, side: str = "left") -> str:
    text = render(child)
    if _needs_parens(_kind(parent), _kind(child), side):
        return f"({text})"
    return text


def _binary(node, symbol: str) -> str:
    return f"{_operand(node, node.left, 'left')} {symbol} {_operand(node, node.right, 'right')}"


def render(formula) -> str:
    """Render an intuitionistic, modal or first-order formula."""
    match formula:
        case ipl.Bottom():
            return "false"
        case ipl.Prop(index) | ml.Prop(index):
            return f"p{index}"
        case fol.Pred(letter, var):
            return f"P{letter}({var})"
        case fol.Rel(left, right):
            return f"R({left},{right})"
        case fol.Eq(left, right):
            return f"{left} = {right}"
        case fol.Neg(body) | ml.Neg(body):
            return f"~{_operand(formula, body)}"
        case ml.Box(body):
            return f"[] {_operand(formula, body)}"
        case fol.And() | ipl.And() | ml.And():
            return _binary(formula, "&")
        case fol.Or() | ipl.Or():
            return _binary(formula, "|")
        case fol.Imp() | ipl.Imp():
            return _binary(formula, "->")
        case fol.Forall(var, body):
            return f"forall {var}. {_operand(formula, body)}"
        case fol.Exists(var, body):
            return f"exists {var}. {_operand(formula, body)}"
    raise TypeError(f"not a formula: {formula!r}")
