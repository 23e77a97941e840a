# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import re
import sys
from enum import Enum
from typing import Iterator, NamedTuple

from Profinity.Core.Errors import DslError


class TokenKind(Enum):
    name = 'name'
    integer = 'integer'
    lpar = '('
    rpar = ')'
    lbracket = '['
    rbracket = ']'
    comma = ','
    star = '*'
    caret = '^'
    equal = '='
    semicolon = ';'
    end = 'end of input'


_PATTERNS = {
    'name': r'[A-Za-z_][A-Za-z0-9_]*',
    'integer': r'\d+',
    'lpar': r'\(',
    'rpar': r'\)',
    'lbracket': r'\[',
    'rbracket': r'\]',
    'comma': r',',
    'star': r'\*',
    'caret': r'\^',
    'equal': r'=',
    'semicolon': r';',
    'newline': r'\n',
    'skip': r'[ \t\r]+|\#[^\n]*',
    'error': r'.',
}

_REGEX = re.compile('|'.join(f'(?P<{name}>{text})'
                             for name, text in _PATTERNS.items()), re.DOTALL)


class Token(NamedTuple):
    kind: TokenKind
    value: str | int
    line: int
    column: int

    @property
    def end(self):
        return self.column + len(str(self.value))

    def describe(self):
        if self.kind is TokenKind.end:
            return 'end of input'

        return f"'{self.value}'"


def tokenize(source: str) -> Iterator[Token]:
    line, line_start = 1, 0

    for mo in _REGEX.finditer(source):
        kind = mo.lastgroup
        value = mo.group()
        column = mo.start() - line_start + 1

        match kind:
            case 'newline':
                line, line_start = line + 1, mo.end()
                continue
            case 'skip':
                continue
            case 'error':
                raise DslError(f"unknown symbol '{value}'", line, column)
            case 'integer':
                # int() and str() share this cap
                limit = sys.get_int_max_str_digits()
                if limit and len(value) > limit:
                    raise DslError('integer literal too large', line, column,
                                   column + len(value))
                yield Token(TokenKind.integer, int(value), line, column)
            case _:
                yield Token(TokenKind[kind], value, line, column)

    yield Token(TokenKind.end, '', line, len(source) - line_start + 1)
