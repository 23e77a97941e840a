# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

"""
Recursive descent parser for the descriptor language:

    program  := ('let' NAME '=' expr ';')* expr
    expr     := power ('*' power)*
    power    := atom ('^' count)?
    atom     := 'C' '(' INT ',' INT ')'
              | 'prod' '(' 'C' '(' INT ',' NAME ')' 'for' NAME 'in' 'N' ')'
              | 'L' '(' INT ',' '[' counts? ']' ',' tail ')'
              | 'Zp' '(' INT ')' | 'trivial' '(' INT ')'
              | 'seq' '[' (item (',' item)*)? ']'
              | NAME | '(' expr ')'
    item     := 'repeat' '(' expr ')' | expr
    tail     := 'zero' | 'aleph0' | '[' counts ']'
    count    := INT | 'aleph0'
"""

from dataclasses import dataclass

from Profinity.Core import Configuration
from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Errors import DslError
from Profinity.Dsl.Lexer import Token, TokenKind, tokenize

KEYWORDS = frozenset({'let', 'for', 'in', 'repeat', 'aleph0', 'zero', 'seq',
                      'prod', 'Zp', 'C', 'L', 'trivial', 'N'})


@dataclass(frozen=True)
class Span:
    line: int
    column: int
    end: int

    @classmethod
    def of(cls, first: Token, last: Token):
        end = last.end if last.line == first.line else first.end

        return cls(first.line, first.column, max(end, first.column + 1))

    def error(self, message, expected=None):
        return DslError(message, self.line, self.column, self.end, expected)


class DescriptorExpr:
    span: Span


@dataclass(frozen=True)
class CyclicLayer(DescriptorExpr):
    span: Span
    prime: int
    exponent: int
    count: CardinalCount = CardinalCount(1)


@dataclass(frozen=True)
class ProdAllCyclic(DescriptorExpr):
    span: Span
    prime: int


@dataclass(frozen=True)
class LayerLiteral(DescriptorExpr):
    span: Span
    prime: int
    prefix: tuple[CardinalCount, ...]
    tail_kind: str
    pattern: tuple[CardinalCount, ...] = ()


@dataclass(frozen=True)
class ScaledLayer(DescriptorExpr):
    span: Span
    expr: DescriptorExpr
    count: CardinalCount


@dataclass(frozen=True)
class FreePart(DescriptorExpr):
    span: Span
    prime: int
    rank: CardinalCount = CardinalCount(1)


@dataclass(frozen=True)
class Trivial(DescriptorExpr):
    span: Span
    prime: int


@dataclass(frozen=True)
class SeqItem:
    span: Span
    expr: DescriptorExpr
    repeating: bool = False


@dataclass(frozen=True)
class SeqLiteral(DescriptorExpr):
    span: Span
    items: tuple[SeqItem, ...]


@dataclass(frozen=True)
class ProductExpr(DescriptorExpr):
    span: Span
    factors: tuple[DescriptorExpr, ...]


@dataclass(frozen=True)
class Name(DescriptorExpr):
    span: Span
    name: str


@dataclass(frozen=True)
class Binding:
    span: Span
    name: str
    expr: DescriptorExpr


@dataclass(frozen=True)
class Program:
    bindings: tuple[Binding, ...]
    body: DescriptorExpr


class Parser:
    def __init__(self, source: str, max_depth=None):
        self.tokens = list(tokenize(source))
        self.index = 0
        self.depth = 0
        self.max_depth = Configuration.get_config().dsl.max_depth \
            if max_depth is None else max_depth

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    @property
    def previous(self) -> Token:
        return self.tokens[max(self.index - 1, 0)]

    def _fail(self, message, expected=None):
        token = self.current
        raise DslError(message, token.line, token.column,
                       max(token.end, token.column + 1), expected)

    def _advance(self):
        token = self.current
        if token.kind is not TokenKind.end:
            self.index += 1

        return token

    def _check(self, kind, value=None):
        token = self.current
        return token.kind is kind and (value is None or token.value == value)

    def _expect(self, kind, value=None):
        if not self._check(kind, value):
            wanted = f"'{value}'" if value is not None else \
                (f"'{kind.value}'" if kind not in (TokenKind.name,
                                                   TokenKind.integer)
                 else kind.value)
            self._fail(f'unexpected {self.current.describe()}', [wanted])

        return self._advance()

    def _enter(self):
        self.depth += 1
        if self.depth > self.max_depth:
            self._fail(f'nesting deeper than {self.max_depth}')

    def _leave(self):
        self.depth -= 1

    def parse(self) -> Program:
        bindings = []
        while self._check(TokenKind.name, 'let'):
            bindings.append(self._binding())

        body = self._expr()
        if not self._check(TokenKind.end):
            self._fail(f'unexpected {self.current.describe()}',
                       ["'*'", 'end of input'])

        return Program(tuple(bindings), body)

    def _binding(self):
        first = self._advance()
        name = self._expect(TokenKind.name)
        if name.value in KEYWORDS:
            raise DslError(f"'{name.value}' is reserved", name.line,
                           name.column, name.end)

        self._expect(TokenKind.equal)
        expr = self._expr()
        last = self._expect(TokenKind.semicolon)

        return Binding(Span.of(first, last), name.value, expr)

    def _expr(self):
        first = self.current
        factors = [self._power()]
        while self._check(TokenKind.star):
            self._advance()
            factors.append(self._power())

        if len(factors) == 1:
            return factors[0]

        return ProductExpr(Span.of(first, self.previous), tuple(factors))

    def _power(self):
        first = self.current
        atom = self._atom()
        if not self._check(TokenKind.caret):
            return atom

        self._advance()
        count = self._count()
        span = Span.of(first, self.previous)

        if isinstance(atom, FreePart) and atom.rank == 1:
            return FreePart(span, atom.prime, count)

        return ScaledLayer(span, atom, count)

    def _count(self) -> CardinalCount:
        if self._check(TokenKind.name, 'aleph0'):
            self._advance()
            return CardinalCount.aleph0()

        return CardinalCount(self._expect(TokenKind.integer).value)

    def _integer(self):
        return self._expect(TokenKind.integer).value

    def _counts(self, closing):
        values = []
        if self._check(closing):
            return values

        values.append(self._count())
        while self._check(TokenKind.comma):
            self._advance()
            values.append(self._count())

        return values

    def _atom(self):
        token = self.current

        if token.kind is TokenKind.lpar:
            self._advance()
            self._enter()
            expr = self._expr()
            self._leave()
            self._expect(TokenKind.rpar)
            return expr

        if token.kind is not TokenKind.name:
            self._fail(f'unexpected {token.describe()}',
                       ['a group expression'])

        match token.value:
            case 'C':
                self._advance()
                self._expect(TokenKind.lpar)
                p = self._integer()
                self._expect(TokenKind.comma)
                e = self._integer()
                last = self._expect(TokenKind.rpar)
                return CyclicLayer(Span.of(token, last), p, e)

            case 'prod':
                return self._prod()

            case 'L':
                return self._layer_literal()

            case 'Zp' | 'trivial':
                self._advance()
                self._expect(TokenKind.lpar)
                p = self._integer()
                last = self._expect(TokenKind.rpar)
                node = FreePart if token.value == 'Zp' else Trivial
                return node(Span.of(token, last), p)

            case 'seq':
                return self._seq()

            case name if name in KEYWORDS:
                self._fail(f"unexpected '{name}'", ['a group expression'])

            case name:
                self._advance()
                return Name(Span.of(token, token), name)

    def _prod(self):
        first = self._advance()
        self._expect(TokenKind.lpar)
        self._expect(TokenKind.name, 'C')
        self._expect(TokenKind.lpar)
        p = self._integer()
        self._expect(TokenKind.comma)
        variable = self._expect(TokenKind.name)
        self._expect(TokenKind.rpar)
        self._expect(TokenKind.name, 'for')
        self._expect(TokenKind.name, variable.value)
        self._expect(TokenKind.name, 'in')
        self._expect(TokenKind.name, 'N')
        last = self._expect(TokenKind.rpar)

        return ProdAllCyclic(Span.of(first, last), p)

    def _layer_literal(self):
        first = self._advance()
        self._expect(TokenKind.lpar)
        p = self._integer()
        self._expect(TokenKind.comma)
        self._expect(TokenKind.lbracket)
        prefix = self._counts(TokenKind.rbracket)
        self._expect(TokenKind.rbracket)
        self._expect(TokenKind.comma)

        pattern = ()
        if self._check(TokenKind.name, 'zero'):
            self._advance()
            kind = 'zero'
        elif self._check(TokenKind.name, 'aleph0'):
            self._advance()
            kind = 'aleph0'
        elif self._check(TokenKind.lbracket):
            self._advance()
            pattern = tuple(self._counts(TokenKind.rbracket))
            if not pattern:
                self._fail('a periodic tail needs at least one count',
                           ['count'])
            self._expect(TokenKind.rbracket)
            kind = 'periodic'
        else:
            self._fail(f'unexpected {self.current.describe()}',
                       ["'zero'", "'aleph0'", "'['"])

        last = self._expect(TokenKind.rpar)

        return LayerLiteral(Span.of(first, last), p, tuple(prefix), kind,
                            pattern)

    def _seq(self):
        first = self._advance()
        self._expect(TokenKind.lbracket)
        self._enter()

        items = []
        if not self._check(TokenKind.rbracket):
            items.append(self._item())
            while self._check(TokenKind.comma):
                self._advance()
                items.append(self._item())

        self._leave()
        last = self._expect(TokenKind.rbracket)

        return SeqLiteral(Span.of(first, last), tuple(items))

    def _item(self):
        first = self.current
        if not self._check(TokenKind.name, 'repeat'):
            expr = self._expr()
            return SeqItem(expr.span, expr)

        self._advance()
        self._expect(TokenKind.lpar)
        self._enter()
        expr = self._expr()
        self._leave()
        last = self._expect(TokenKind.rpar)

        return SeqItem(Span.of(first, last), expr, True)


def parse(text: str | bytes, max_depth=None) -> Program:
    """Parse source text; every failure is a positioned ``DslError``."""
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as error:
            raise DslError(f'input is not valid UTF-8 (byte {error.start})')

    return Parser(text, max_depth).parse()
