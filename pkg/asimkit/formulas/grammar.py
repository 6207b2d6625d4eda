"""Parsers for the three formula languages, built on lark LALR grammars.

Precedence, tightest first: ``~`` / ``[]``, ``&``, ``|``, ``->`` (right-associative);
quantifiers ``forall v.`` / ``exists v.`` bind loosest. Letters are indexed:
``p1, p2, ...`` in propositional languages, ``P1(x), ...`` and ``R(x,y)`` in
first-order formulas.
"""

from functools import lru_cache

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from asimkit.errors import FormulaArityError, FormulaSyntaxError
from asimkit.formulas import first_order as fol
from asimkit.formulas import intuitionistic as ipl
from asimkit.formulas import modal as ml

INT_GRAMMAR = r"""
    ?start: implication

    ?implication: disjunction
                | disjunction "->" implication      -> imp
    ?disjunction: conjunction
                | disjunction "|" conjunction       -> or_
    ?conjunction: unary
                | conjunction "&" unary             -> and_
    ?unary: NOT unary                               -> neg
          | atom
    ?atom: "false"                                  -> bottom
         | PROP                                     -> prop
         | "(" implication ")"

    NOT: "~"
    PROP: /p[0-9]+(?![A-Za-z0-9_])/

    %import common.WS
    %ignore WS
"""

MODAL_GRAMMAR = r"""
    ?start: implication

    ?implication: disjunction
                | disjunction IMPLIES implication   -> imp
    ?disjunction: conjunction
                | disjunction OR conjunction        -> or_
    ?conjunction: unary
                | conjunction "&" unary             -> and_
    ?unary: "~" unary                               -> neg
          | "[]" unary                              -> box
          | atom
    ?atom: PROP                                     -> prop
         | "(" implication ")"

    IMPLIES: "->"
    OR: "|"
    PROP: /p[0-9]+(?![A-Za-z0-9_])/

    %import common.WS
    %ignore WS
"""

FO_GRAMMAR = r"""
    ?start: formula

    ?formula: "forall" VAR "." formula              -> forall
            | "exists" VAR "." formula              -> exists
            | implication

    ?implication: disjunction
                | disjunction "->" formula          -> imp
    ?disjunction: conjunction
                | disjunction "|" conjunction       -> or_
    ?conjunction: unary
                | conjunction "&" unary             -> and_
    ?unary: "~" unary                               -> neg
          | atom
    ?atom: PRED "(" args ")"                        -> pred
         | REL "(" args ")"                         -> rel
         | VAR "=" VAR                              -> eq
         | "(" formula ")"
    args: VAR ("," VAR)*

    REL: "R"
    PRED: /P[0-9]+(?![A-Za-z0-9_])/
    VAR: /[a-z_][A-Za-z0-9_]*/

    %import common.WS
    %ignore WS
"""

_GRAMMARS = {"int": INT_GRAMMAR, "modal": MODAL_GRAMMAR, "fo": FO_GRAMMAR}


@lru_cache(maxsize=None)
def _parser(language: str) -> Lark:
    return Lark(_GRAMMARS[language], parser="lalr")


def _letter(token: Token, text: str) -> int:
    index = int(token[1:])
    if index < 1:
        raise FormulaSyntaxError(f"letter index must be positive in {token!s}", text, token.column)
    return index


@v_args(inline=True)
class _IntBuilder(Transformer):
    def __init__(self, text: str, sugar: bool):
        super().__init__()
        self.text = text
        self.sugar = sugar

    def bottom(self):
        return ipl.Bottom()

    def prop(self, token):
        return ipl.Prop(_letter(token, self.text))

    def and_(self, left, right):
        return ipl.And(left, right)

    def or_(self, left, right):
        return ipl.Or(left, right)

    def imp(self, left, right):
        return ipl.Imp(left, right)

    def neg(self, token, body):
        if not self.sugar:
            raise FormulaSyntaxError(
                "negation is not primitive; write (i -> false) or parse with sugar",
                self.text, token.column,
            )
        return ipl.neg(body)


@v_args(inline=True)
class _ModalBuilder(Transformer):
    def __init__(self, text: str, sugar: bool):
        super().__init__()
        self.text = text
        self.sugar = sugar

    def _require_sugar(self, token):
        if not self.sugar:
            raise FormulaSyntaxError(
                f"'{token}' is not a modal connective; parse with sugar", self.text, token.column,
            )

    def prop(self, token):
        return ml.Prop(_letter(token, self.text))

    def and_(self, left, right):
        return ml.And(left, right)

    def or_(self, left, token, right):
        self._require_sugar(token)
        return ml.disjunction(left, right)

    def imp(self, left, token, right):
        self._require_sugar(token)
        return ml.implication(left, right)

    def neg(self, body):
        return ml.Neg(body)

    def box(self, body):
        return ml.Box(body)


@v_args(inline=True)
class _FirstOrderBuilder(Transformer):
    def __init__(self, text: str):
        super().__init__()
        self.text = text

    def args(self, *variables):
        return list(variables)

    def pred(self, token, variables):
        if len(variables) != 1:
            raise FormulaArityError(
                f"{token} is unary but is applied to {len(variables)} variables",
                self.text, token.column,
            )
        return fol.Pred(_letter(token, self.text), str(variables[0]))

    def rel(self, token, variables):
        if len(variables) != 2:
            raise FormulaArityError(
                f"R is binary but is applied to {len(variables)} variables", self.text, token.column,
            )
        return fol.Rel(str(variables[0]), str(variables[1]))

    def eq(self, left, right):
        return fol.Eq(str(left), str(right))

    def neg(self, body):
        return fol.Neg(body)

    def and_(self, left, right):
        return fol.And(left, right)

    def or_(self, left, right):
        return fol.Or(left, right)

    def imp(self, left, right):
        return fol.Imp(left, right)

    def forall(self, var, body):
        return fol.Forall(str(var), body)

    def exists(self, var, body):
        return fol.Exists(str(var), body)


def _syntax_error(exc: UnexpectedInput, text: str) -> FormulaSyntaxError:
    column = exc.column if isinstance(exc.column, int) and exc.column > 0 else len(text) + 1
    if isinstance(exc, UnexpectedEOF):
        message = "unexpected end of input"
    elif isinstance(exc, UnexpectedCharacters):
        message = f"unexpected character {text[exc.pos_in_stream]!r}"
    else:
        token = getattr(exc, "token", None)
        if token is None or token.type == "$END":
            message = "unexpected end of input"
        else:
            message = f"unexpected token {str(token)!r}"
    return FormulaSyntaxError(message, text, column)


def _run(language: str, text: str, builder: Transformer):
    try:
        tree = _parser(language).parse(text)
        return builder.transform(tree)
    except UnexpectedInput as exc:
        raise _syntax_error(exc, text) from None
    except VisitError as exc:
        if isinstance(exc.orig_exc, FormulaSyntaxError):
            raise exc.orig_exc from None
        raise FormulaSyntaxError(str(exc.orig_exc), text) from exc.orig_exc


def parse_int(text: str, sugar: bool = False) -> ipl.IntFormula:
    """Parse an intuitionistic formula; ``sugar`` admits ``~i`` as ``i -> false``."""
    return _run("int", text, _IntBuilder(text, sugar))


def parse_modal(text: str, sugar: bool = False) -> ml.ModalFormula:
    """Parse a modal formula; ``sugar`` admits ``|`` and ``->`` as abbreviations."""
    return _run("modal", text, _ModalBuilder(text, sugar))


def parse_fo(text: str) -> fol.FOFormula:
    """Parse a first-order formula over {R, P1, P2, ..., =}."""
    return _run("fo", text, _FirstOrderBuilder(text))
