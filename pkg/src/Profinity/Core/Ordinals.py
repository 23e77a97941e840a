# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

from Profinity.Core.Errors import OrdinalError


class Comparison(Enum):
    LT = -1
    EQ = 0
    GT = 1


_TERM_RE = re.compile(r'^(?:(w|ω)(?:\^(\d+))?(?:\*(\d+))?|(\d+))$')


@total_ordering
@dataclass(frozen=True)
class OrdinalCNF:
    """
    An ordinal below ω^ω in Cantor normal form: ``terms`` holds
    (exponent, coefficient) pairs with strictly decreasing exponents and
    positive coefficients. The empty tuple is 0.
    """
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)

        for e, c in terms:
            if e < 0 or c <= 0:
                raise OrdinalError(f'Invalid Cantor normal form term '
                                   f'(exponent {e}, coefficient {c}).')

        for (e0, _), (e1, _) in itertools.pairwise(terms):
            if e0 <= e1:
                raise OrdinalError('Cantor normal form exponents must be '
                                   'strictly decreasing.')

        object.__setattr__(self, 'terms', terms)

    @classmethod
    def of(cls, n: int):
        if n < 0:
            raise OrdinalError(f'Negative ordinal {n}.')

        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega_poly(cls, k: int, m: int = 0):
        """ω·k + m."""
        terms = []
        if k:
            terms.append((1, k))
        if m:
            terms.append((0, m))

        return cls(tuple(terms))

    @classmethod
    def parse(cls, text: str):
        """
        Parse the CLI syntax, e.g. ``w^2*3+w*1+4``. Terms may be given in
        any order; they are combined with ordinal addition.
        """
        source = text.replace(' ', '')
        if not source:
            raise OrdinalError('Empty ordinal.')

        value = cls()
        for part in source.split('+'):
            match = _TERM_RE.match(part)
            if match is None:
                raise OrdinalError(f'Invalid ordinal term "{part}" in '
                                   f'"{text}".')

            if match.group(4) is not None:
                term = cls.of(int(match.group(4)))
            else:
                exponent = int(match.group(2) or 1)
                coefficient = int(match.group(3) or 1)
                term = cls(((exponent, coefficient),)) if coefficient else cls()

            value = value + term

        return value

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_limit(self):
        return bool(self.terms) and self.terms[-1][0] > 0

    @property
    def is_successor(self):
        return bool(self.terms) and self.terms[-1][0] == 0

    @property
    def is_finite(self):
        return self.is_zero or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def compare(self, other) -> Comparison:
        if self.terms == other.terms:
            return Comparison.EQ

        return Comparison.LT if self.terms < other.terms else Comparison.GT

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self.terms == OrdinalCNF.of(other).terms

        if not isinstance(other, OrdinalCNF):
            return NotImplemented

        return self.terms == other.terms

    def __hash__(self):
        if self.is_finite:
            return hash(self.omega_split()[1])

        return hash(self.terms)

    def __lt__(self, other):
        if isinstance(other, int):
            other = OrdinalCNF.of(other)

        return self.compare(other) is Comparison.LT

    def __add__(self, other):
        if isinstance(other, int):
            other = OrdinalCNF.of(other)

        if other.is_zero:
            return self

        lead, coefficient = other.terms[0]

        kept = [t for t in self.terms if t[0] > lead]
        same = [c for e, c in self.terms if e == lead]

        if same:
            kept.append((lead, same[0] + coefficient))
        else:
            kept.append((lead, coefficient))

        return OrdinalCNF(tuple(kept) + other.terms[1:])

    def subtract_left(self, other):
        """The unique γ with ``other + γ == self``; requires other ≤ self."""
        if isinstance(other, int):
            other = OrdinalCNF.of(other)

        if self < other:
            raise OrdinalError(f'{other} exceeds {self}.')

        i = 0
        while (i < len(other.terms) and i < len(self.terms) and
               other.terms[i] == self.terms[i]):
            i += 1

        if i == len(other.terms):
            return OrdinalCNF(self.terms[i:])

        (e_small, c_small), (e_big, c_big) = other.terms[i], self.terms[i]
        if e_small == e_big:
            return OrdinalCNF(((e_big, c_big - c_small),) + self.terms[i + 1:])

        return OrdinalCNF(self.terms[i:])

    def successor(self):
        return self + 1

    def predecessor(self):
        if not self.is_successor:
            raise OrdinalError(f'{self} is not a successor ordinal.')

        e, c = self.terms[-1]
        if c == 1:
            return OrdinalCNF(self.terms[:-1])

        return OrdinalCNF(self.terms[:-1] + ((e, c - 1),))

    def fundamental_sequence(self):
        """
        Canonical cofinal sequence of a limit ordinal: for
        ``β + ω^e`` (e ≥ 1) the n-th term is ``β + ω^(e-1)·n``, n = 1, 2, ...
        """
        if not self.is_limit:
            raise OrdinalError(f'not a limit ordinal: {self}')

        e, c = self.terms[-1]
        base = OrdinalCNF(self.terms[:-1])
        if c > 1:
            base = base + OrdinalCNF(((e, c - 1),))

        for n in itertools.count(1):
            yield base + OrdinalCNF(((e - 1, n),))

    def omega_split(self):
        """(k, m) with self = ω·k + m; only defined below ω²."""
        if self.terms and self.terms[0][0] > 1:
            raise OrdinalError(f'{self} is not below ω².')

        k = sum(c for e, c in self.terms if e == 1)
        m = sum(c for e, c in self.terms if e == 0)

        return k, m

    def __str__(self):
        if not self.terms:
            return '0'

        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
                continue

            base = 'w' if e == 1 else f'w^{e}'
            parts.append(base if c == 1 else f'{base}*{c}')

        return '+'.join(parts)

    def __repr__(self):
        return f'OrdinalCNF({self})'


ZERO = OrdinalCNF()
OMEGA = OrdinalCNF(((1, 1),))


def ord_compare(a: OrdinalCNF, b: OrdinalCNF) -> Comparison:
    return a.compare(b)


def ord_successor(a: OrdinalCNF) -> OrdinalCNF:
    return a.successor()


def ord_is_limit(a: OrdinalCNF) -> bool:
    return a.is_limit


def fundamental_sequence(a: OrdinalCNF):
    return a.fundamental_sequence()
