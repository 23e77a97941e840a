# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import math

from Profinity.Calculus import Torsion
from Profinity.Core import Cardinals, Configuration
from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Descriptors import (CartesianDescriptor, FiniteRun,
                                        MultiplicitySeq, OmegaRun,
                                        ProPDescriptor, Tail, TorsionSequence,
                                        check_prime)
from Profinity.Core.Errors import DslError, ProfinityError
from Profinity.Dsl import Parser
from Profinity.Dsl.Parser import (CyclicLayer, DescriptorExpr, FreePart,
                                  LayerLiteral, Name, ProdAllCyclic, Program,
                                  ProductExpr, ScaledLayer, SeqLiteral, Span,
                                  Trivial)


def scale(c: CardinalCount, k: CardinalCount) -> CardinalCount:
    if c.is_zero or k.is_zero:
        return Cardinals.ZERO

    if c.is_aleph0 or k.is_aleph0:
        return Cardinals.ALEPH0

    return CardinalCount(c.count * k.count)


def scale_layer(layer: CartesianDescriptor, k: CardinalCount):
    """The layer taken k times."""
    prefix, period = layer.mults.span()
    mults = MultiplicitySeq.from_terms(lambda i: scale(layer.term(i), k),
                                       prefix, period)

    return CartesianDescriptor(layer.prime, mults)


def _periods(d: ProPDescriptor):
    for _, entry, _ in d.torsion_seq.representatives():
        yield entry.mults.span()[1]


class Lowering:
    """Evaluates an AST to layers and descriptors under one environment."""

    def __init__(self, max_exponent=None):
        self.max_exponent = Configuration.get_config().dsl.max_exponent \
            if max_exponent is None else max_exponent
        self.env = {}

    def program(self, program: Program) -> ProPDescriptor:
        for binding in program.bindings:
            self.env[binding.name] = self.value(binding.expr)

        return self.as_descriptor(self.value(program.body),
                                  program.body.span)

    def value(self, node: DescriptorExpr):
        try:
            return self._value(node)
        except DslError:
            raise
        except ProfinityError as error:
            raise node.span.error(str(error))

    def _prime(self, p, span: Span):
        try:
            return check_prime(p)
        except ProfinityError as error:
            raise span.error(str(error))

    def _bound(self, size, span: Span, what):
        if size > self.max_exponent:
            raise span.error(f'{what} {size} exceeds the limit '
                             f'{self.max_exponent}')

    def _value(self, node):
        match node:
            case CyclicLayer():
                p = self._prime(node.prime, node.span)
                if node.exponent < 1:
                    raise node.span.error(f'exponent must be positive, got '
                                          f'{node.exponent}')
                self._bound(node.exponent, node.span, 'exponent')
                return CartesianDescriptor.cyclic(p, node.exponent,
                                                  node.count)

            case ProdAllCyclic():
                return CartesianDescriptor.full(self._prime(node.prime,
                                                            node.span))

            case LayerLiteral():
                p = self._prime(node.prime, node.span)
                self._bound(len(node.prefix) + len(node.pattern), node.span,
                            'layer length')
                return CartesianDescriptor(p, MultiplicitySeq(
                    node.prefix, Tail(node.tail_kind, node.pattern)))

            case FreePart():
                return ProPDescriptor.free(self._prime(node.prime, node.span),
                                           node.rank)

            case Trivial():
                return ProPDescriptor.trivial(self._prime(node.prime,
                                                          node.span))

            case ScaledLayer():
                return self._scaled(node)

            case SeqLiteral():
                return self._sequence(node)

            case ProductExpr():
                result = self.value(node.factors[0])
                for factor in node.factors[1:]:
                    result = self._multiply(result, self.value(factor),
                                            factor.span)
                return result

            case Name():
                if node.name not in self.env:
                    raise node.span.error(f"unknown name '{node.name}'")
                return self.env[node.name]

            case _:
                raise RuntimeError(f'Unknown expression node: {node!r}')

    def _scaled(self, node: ScaledLayer):
        inner = self.value(node.expr)

        if isinstance(inner, CartesianDescriptor):
            return scale_layer(inner, node.count)

        if inner.torsion_seq.is_empty:
            return inner.with_free_rank(scale(inner.free_rank, node.count))

        raise node.span.error('a power applies to layers and Zp factors only')

    def _sequence(self, node: SeqLiteral):
        seq = self.segments(node)

        return ProPDescriptor(seq.prime, seq)

    def segments(self, node: SeqLiteral) -> TorsionSequence:
        """The literal as a torsion sequence, not yet validated."""
        if not node.items:
            raise node.span.error('an empty sequence has no prime; write '
                                  'trivial(p) instead')

        segments, pending = [], []
        for item in node.items:
            entry = self.value(item.expr)
            if not isinstance(entry, CartesianDescriptor):
                raise item.span.error('sequence entries must be layers')

            if item.repeating:
                segments.append(OmegaRun(tuple(pending), entry))
                pending = []
            else:
                pending.append(entry)

        if pending:
            segments.append(FiniteRun(tuple(pending)))

        try:
            return TorsionSequence(tuple(segments))
        except ProfinityError as error:
            raise node.span.error(str(error))

    def _multiply(self, left, right, span: Span):
        if (isinstance(left, CartesianDescriptor) and
                isinstance(right, CartesianDescriptor)):
            if left.prime != right.prime:
                raise span.error(f'Prime mismatch in product: {left.prime} '
                                 f'and {right.prime}.')
            self._bound(math.lcm(left.mults.span()[1],
                                 right.mults.span()[1]), span, 'period')
            return left.product(right)

        left = self.as_descriptor(left, span)
        right = self.as_descriptor(right, span)
        self._bound(math.lcm(*_periods(left), *_periods(right)), span,
                    'period')

        return Torsion.product([left, right])

    def as_descriptor(self, value, span: Span) -> ProPDescriptor:
        if isinstance(value, CartesianDescriptor):
            try:
                return ProPDescriptor.cartesian(value)
            except ProfinityError as error:
                raise span.error(str(error))

        return value


def lower(program: Program, max_exponent=None) -> ProPDescriptor:
    return Lowering(max_exponent).program(program)


def lower_sequence(program: Program) -> tuple[TorsionSequence, int | None]:
    """
    The torsion sequence a program denotes, without validity checks when
    its body is a sequence literal, and the prime of a descriptor body.
    """
    lowering = Lowering()
    if not isinstance(program.body, SeqLiteral):
        d = lowering.program(program)
        return d.torsion_seq, d.prime

    for binding in program.bindings:
        lowering.env[binding.name] = lowering.value(binding.expr)

    return lowering.segments(program.body), None


def read_descriptor(text: str | bytes) -> ProPDescriptor:
    """Parse and lower in one step."""
    return lower(Parser.parse(text))


def read_canonical(text: str) -> ProPDescriptor:
    """
    Read printer output back. The size limits guard hand-written input only:
    canonical text of any descriptor lowers back to that descriptor.
    """
    return lower(Parser.parse(text), max_exponent=math.inf)
