from __future__ import annotations

import logging
import math
import re
import typing

from rimaps.expr.Expression import Binary
from rimaps.expr.Expression import Constant
from rimaps.expr.Expression import Coordinate
from rimaps.expr.Expression import Expression
from rimaps.expr.Expression import Unary

# expr     := term (('+' | '-') term)*
# term     := unary (('*' | '/') unary)*
# unary    := ('-' | '+') unary | power
# power    := atom (('^' | '**') unary)?
# atom     := NUMBER | NAME | NAME '(' args ')' | '(' expr ')'


class ExpressionParser:
    _LOGGER: logging = logging.getLogger(__name__)
    named_constants: typing.Dict[str, float] = {
        "pi": math.pi,
        "e": math.e,
    }
    _token_pattern = re.compile(r"""
        (?P<space>\s+)
      | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
      | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<op>\*\*|[-+*/^(),])
    """, re.VERBOSE)

    class Token:
        kind: str
        text: str
        position: int

        def __init__(self, kind: str, text: str, position: int):
            self.kind = kind
            self.text = text
            self.position = position

        def __repr__(self):
            return "({}, {!r}, {})".format(self.kind, self.text,
                                           self.position)

    def __init__(self, coords: typing.Sequence[str]):
        if len(set(coords)) != len(coords):
            raise TypeError("Duplicate coordinate names: {}".format(coords))
        self._coords = {name: i for i, name in enumerate(coords)}
        self._tokens: typing.List[ExpressionParser.Token] = []
        self._cursor = 0
        self._text = ""

    @staticmethod
    def parse_expression(text: str,
                         coords: typing.Sequence[str]) -> Expression:
        return ExpressionParser(coords).parse(text)

    def parse(self, text: str) -> Expression:
        if text is None or not text.strip():
            raise ExpressionParser.ParseException("Empty expression", 0)
        self._text = text
        self._tokens = self._tokenize(text)
        self._cursor = 0
        expression = self._expr()
        token = self._peek()
        if token.kind != "end":
            raise ExpressionParser.ParseException(
                "Unexpected '{}'".format(token.text), token.position)
        self._LOGGER.debug("Parsed '{}' as {}".format(text, expression))
        return expression

    def _tokenize(self, text: str) -> typing.List[ExpressionParser.Token]:
        tokens = []
        position = 0
        while position < len(text):
            match = self._token_pattern.match(text, position)
            if match is None:
                raise ExpressionParser.ParseException(
                    "Unexpected character '{}'".format(text[position]),
                    position)
            if match.lastgroup != "space":
                tokens.append(
                    ExpressionParser.Token(match.lastgroup, match.group(),
                                           position))
            position = match.end()
        tokens.append(ExpressionParser.Token("end", "", len(text)))
        return tokens

    def _peek(self) -> ExpressionParser.Token:
        return self._tokens[self._cursor]

    def _next(self) -> ExpressionParser.Token:
        token = self._tokens[self._cursor]
        self._cursor += 1
        return token

    def _accept(self, *texts: str) -> typing.Optional[ExpressionParser.Token]:
        token = self._peek()
        if token.kind == "op" and token.text in texts:
            self._cursor += 1
            return token
        return None

    def _expect(self, text: str) -> ExpressionParser.Token:
        token = self._accept(text)
        if token is None:
            found = self._peek()
            raise ExpressionParser.ParseException(
                "Expected '{}' but found '{}'".format(
                    text, found.text or "end of input"), found.position)
        return token

    def _expr(self) -> Expression:
        node = self._term()
        while True:
            token = self._accept("+", "-")
            if token is None:
                return node
            node = Binary("add" if token.text == "+" else "sub", node,
                          self._term())

    def _term(self) -> Expression:
        node = self._unary()
        while True:
            token = self._accept("*", "/")
            if token is None:
                return node
            node = Binary("mul" if token.text == "*" else "div", node,
                          self._unary())

    def _unary(self) -> Expression:
        if self._accept("-"):
            return Unary("neg", self._unary())
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Expression:
        base = self._atom()
        token = self._accept("^", "**")
        if token is None:
            return base
        start = self._peek().position
        exponent = self._unary()
        return Binary("pow", base, self._fold_exponent(exponent, start))

    def _fold_exponent(self, exponent: Expression, position: int) -> Constant:
        if isinstance(exponent, Constant):
            return exponent
        if not exponent.is_constant():
            raise ExpressionParser.ParseException(
                "Exponent must be constant, got '{}'".format(exponent),
                position)
        try:
            return Constant(exponent.evaluate(()))
        except Expression.DomainException as ex:
            raise ExpressionParser.ParseException(
                "Exponent cannot be evaluated: {}".format(ex), position)

    def _atom(self) -> Expression:
        token = self._next()
        if token.kind == "number":
            return Constant(float(token.text))
        if token.kind == "name":
            if self._peek().text == "(":
                return self._call(token)
            if token.text in self._coords:
                return Coordinate(self._coords[token.text], token.text)
            if token.text in self.named_constants:
                return Constant(self.named_constants[token.text], token.text)
            raise ExpressionParser.UnknownIdentifierException(
                token.text, token.position)
        if token.kind == "op" and token.text == "(":
            node = self._expr()
            self._expect(")")
            return node
        raise ExpressionParser.ParseException(
            "Unexpected '{}'".format(token.text or "end of input"),
            token.position)

    def _call(self, name: ExpressionParser.Token) -> Expression:
        if name.text not in Unary.functions:
            raise ExpressionParser.UnknownIdentifierException(
                name.text, name.position)
        self._expect("(")
        args = []
        if self._peek().text != ")":
            args.append(self._expr())
            while self._accept(","):
                args.append(self._expr())
        self._expect(")")
        if len(args) != 1:
            raise ExpressionParser.ArityException(name.text, 1, len(args),
                                                  name.position)
        return Unary(name.text, args[0])

    class ParseException(ValueError):
        position: int

        def __init__(self, message: str, position: int):
            super().__init__("{} at position {}".format(message, position))
            self.position = position

    class UnknownIdentifierException(ParseException):
        identifier: str

        def __init__(self, identifier: str, position: int):
            super().__init__("Unknown identifier '{}'".format(identifier),
                             position)
            self.identifier = identifier

    class ArityException(ParseException):
        def __init__(self, function: str, expected: int, found: int,
                     position: int):
            super().__init__(
                "Function '{}' takes {} argument(s), got {}".format(
                    function, expected, found), position)
