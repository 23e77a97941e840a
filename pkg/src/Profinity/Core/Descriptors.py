# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import math
from dataclasses import dataclass, field
from enum import Enum

from Profinity.Core import Cardinals
from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Errors import DescriptorError, InvalidSequenceError
from Profinity.Core.Ordinals import OrdinalCNF


def is_prime(n) -> bool:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        return False

    if n % 2 == 0:
        return n == 2

    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def check_prime(p):
    if not is_prime(p):
        raise DescriptorError(f'{p} is not prime')

    return p


class TailKind(Enum):
    zero = 'zero'
    aleph0 = 'aleph0'
    periodic = 'periodic'

    @classmethod
    def _missing_(cls, value: str):
        value = str(value).lower()
        for member in cls:
            if member.name.lower() == value:
                return member
        return None


@dataclass(frozen=True)
class Tail:
    kind: TailKind
    pattern: tuple[CardinalCount, ...] = ()

    def __post_init__(self):
        kind = TailKind(self.kind)
        pattern = tuple(CardinalCount.coerce(c) for c in self.pattern)

        if kind is TailKind.periodic and not pattern:
            raise DescriptorError('A periodic tail needs a non-empty pattern.')

        if kind is not TailKind.periodic:
            pattern = ()

        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'pattern', pattern)

    @classmethod
    def zero(cls):
        return cls(TailKind.zero)

    @classmethod
    def all_aleph0(cls):
        return cls(TailKind.aleph0)

    @classmethod
    def periodic(cls, pattern):
        return cls(TailKind.periodic, tuple(pattern))

    def as_pattern(self) -> tuple[CardinalCount, ...]:
        match self.kind:
            case TailKind.zero:
                return (Cardinals.ZERO,)
            case TailKind.aleph0:
                return (Cardinals.ALEPH0,)
            case _:
                return self.pattern

    def __str__(self):
        if self.kind is TailKind.periodic:
            return '[' + ', '.join(str(c) for c in self.pattern) + ']'

        return self.kind.value


def _primitive_period(pattern):
    size = len(pattern)
    for d in range(1, size + 1):
        if size % d == 0 and pattern == pattern[:d] * (size // d):
            return pattern[:d]

    return pattern


@dataclass(frozen=True, eq=False)
class MultiplicitySeq:
    """
    The multiplicities (α_1, α_2, ...) of the cyclic factors C_{p^i} of a
    Cartesian group: explicit values for α_1 … α_k followed by a tail rule.
    Equality and hashing compare canonical forms.
    """
    prefix: tuple[CardinalCount, ...] = ()
    tail: Tail = field(default_factory=Tail.zero)

    def __post_init__(self):
        object.__setattr__(self, 'prefix', tuple(CardinalCount.coerce(c)
                                                 for c in self.prefix))

    @classmethod
    def cyclic(cls, exponent: int, count=1):
        if exponent < 1:
            raise DescriptorError(f'Cyclic exponent must be positive, got '
                                  f'{exponent}.')

        return cls((0,) * (exponent - 1) + (count,), Tail.zero())

    @classmethod
    def all_of(cls, count=1):
        """α_i = count for every i."""
        return cls((), Tail.periodic((count,))).normalize()

    @classmethod
    def from_terms(cls, terms, prefix_length: int, period: int):
        """
        Build from a term function i ↦ α_i known to be periodic with the given
        period from index ``prefix_length + 1`` on.
        """
        values = [CardinalCount.coerce(terms(i))
                  for i in range(1, prefix_length + period + 1)]

        return cls(tuple(values[:prefix_length]),
                   Tail.periodic(values[prefix_length:])).normalize()

    def term(self, i: int) -> CardinalCount:
        if i < 1:
            raise DescriptorError(f'Multiplicity index must be positive, got '
                                  f'{i}.')

        if i <= len(self.prefix):
            return self.prefix[i - 1]

        pattern = self.tail.as_pattern()

        return pattern[(i - len(self.prefix) - 1) % len(pattern)]

    def span(self):
        """(prefix length, period) of this representation."""
        return len(self.prefix), len(self.tail.as_pattern())

    def normalize(self):
        pattern = _primitive_period(self.tail.as_pattern())
        prefix = list(self.prefix)

        while prefix and prefix[-1] == pattern[-1]:
            prefix.pop()
            pattern = (pattern[-1],) + pattern[:-1]

        if pattern == (Cardinals.ZERO,):
            tail = Tail.zero()
        elif pattern == (Cardinals.ALEPH0,):
            tail = Tail.all_aleph0()
        else:
            tail = Tail.periodic(pattern)

        return MultiplicitySeq(tuple(prefix), tail)

    def _key(self):
        canonical = self.normalize()

        return canonical.prefix, canonical.tail

    def __eq__(self, other):
        if not isinstance(other, MultiplicitySeq):
            return NotImplemented

        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def is_trivial(self):
        canonical = self.normalize()

        return not canonical.prefix and canonical.tail.kind is TailKind.zero

    @property
    def bounded_exponent(self):
        return self.normalize().tail.kind is TailKind.zero

    @property
    def unbounded_torsion(self):
        return not self.bounded_exponent

    @property
    def is_finite(self):
        return (self.bounded_exponent and
                not any(c.is_aleph0 for c in self.prefix))

    @property
    def exponent(self):
        """Largest i with α_i ≠ 0, for bounded sequences."""
        if not self.bounded_exponent:
            return None

        return len(self.normalize().prefix)

    def total(self) -> CardinalCount:
        if not self.bounded_exponent:
            return Cardinals.ALEPH0

        return sum(self.prefix, Cardinals.ZERO)

    @property
    def is_cyclic(self):
        return self.is_finite and self.total() == Cardinals.ONE

    def remove_factors(self, counts: dict[int, int]):
        """Drop counts[i] copies of C_{p^i} for finitely many i."""
        k, period = self.span()
        top = max(counts, default=0)

        return MultiplicitySeq.from_terms(
            lambda i: self.term(i) - counts.get(i, 0), max(k, top), period)

    def smallest_index(self):
        """Least i with α_i ≠ 0, or None for the zero sequence."""
        if self.is_trivial:
            return None

        k, period = self.span()
        return next(i for i in range(1, k + period + 1) if self.term(i))

    def __add__(self, other):
        k = max(self.span()[0], other.span()[0])
        period = math.lcm(self.span()[1], other.span()[1])

        return MultiplicitySeq.from_terms(
            lambda i: self.term(i) + other.term(i), k, period)

    def __str__(self):
        prefix = ', '.join(str(c) for c in self.prefix)

        return f'[{prefix}; {self.tail}]'


def normalize(seq: MultiplicitySeq) -> MultiplicitySeq:
    return seq.normalize()


@dataclass(frozen=True)
class CartesianDescriptor:
    """∏_i (C_{p^i})^{α_i}, the multiplicities held canonically."""
    prime: int
    mults: MultiplicitySeq = field(default_factory=MultiplicitySeq)

    def __post_init__(self):
        check_prime(self.prime)

        object.__setattr__(self, 'mults', self.mults.normalize())

    @classmethod
    def trivial(cls, prime):
        return cls(prime, MultiplicitySeq())

    @classmethod
    def cyclic(cls, prime, exponent, count=1):
        return cls(prime, MultiplicitySeq.cyclic(exponent, count))

    @classmethod
    def full(cls, prime, count=1):
        """∏_{i ∈ N} (C_{p^i})^count."""
        return cls(prime, MultiplicitySeq.all_of(count))

    def term(self, i):
        return self.mults.term(i)

    @property
    def is_trivial(self):
        return self.mults.is_trivial

    @property
    def is_bounded(self):
        return self.mults.bounded_exponent

    @property
    def is_unbounded(self):
        return self.mults.unbounded_torsion

    @property
    def is_finite(self):
        return self.mults.is_finite

    @property
    def is_cyclic(self):
        return self.mults.is_cyclic

    @property
    def cyclic_exponent(self):
        if not self.is_cyclic:
            raise DescriptorError(f'{self} is not cyclic.')

        return self.mults.exponent

    def product(self, other):
        if other.prime != self.prime:
            raise DescriptorError(f'Prime mismatch in product: {self.prime} '
                                  f'and {other.prime}.')

        return CartesianDescriptor(self.prime, self.mults + other.mults)

    def __str__(self):
        return f'Cartesian(p={self.prime}, {self.mults})'


@dataclass(frozen=True)
class FiniteRun:
    entries: tuple[CartesianDescriptor, ...]

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(self.entries))

    @property
    def length(self):
        return OrdinalCNF.of(len(self.entries))


@dataclass(frozen=True)
class OmegaRun:
    """``prefix`` followed by ω copies of ``repeating``."""
    prefix: tuple[CartesianDescriptor, ...]
    repeating: CartesianDescriptor

    def __post_init__(self):
        object.__setattr__(self, 'prefix', tuple(self.prefix))

    @property
    def length(self):
        return OrdinalCNF.omega_poly(1)

    def entry(self, m):
        return self.prefix[m] if m < len(self.prefix) else self.repeating


def _canonical_segments(segments):
    blocks = []
    pending = []

    for segment in segments:
        if isinstance(segment, FiniteRun):
            pending.extend(segment.entries)
        elif isinstance(segment, OmegaRun):
            prefix = pending + list(segment.prefix)
            while prefix and prefix[-1] == segment.repeating:
                prefix.pop()

            blocks.append(OmegaRun(tuple(prefix), segment.repeating))
            pending = []
        else:
            raise DescriptorError(f'Unknown segment "{segment!r}".')

    if pending:
        blocks.append(FiniteRun(tuple(pending)))

    return tuple(blocks)


@dataclass(frozen=True)
class TorsionSequence:
    """
    The torsion sequence (G_{T_α})_{α<λ} of finitely many segments.
    Segments are held in block form: every OmegaRun closes an ω-block and
    only the last segment may be a FiniteRun.
    """
    segments: tuple = ()

    def __post_init__(self):
        blocks = _canonical_segments(tuple(self.segments))

        primes = {entry.prime for entry in _all_entries(blocks)}
        if len(primes) > 1:
            raise DescriptorError(f'Mixed primes in torsion sequence: '
                                  f'{sorted(primes)}.')

        object.__setattr__(self, 'segments', blocks)

    @classmethod
    def of(cls, *entries):
        return cls((FiniteRun(tuple(entries)),)) if entries else cls()

    @property
    def prime(self):
        for entry in _all_entries(self.segments):
            return entry.prime

        return None

    @property
    def is_empty(self):
        return not self.segments

    @property
    def order_type(self) -> OrdinalCNF:
        total = OrdinalCNF()
        for segment in self.segments:
            total = total + segment.length

        return total

    @property
    def has_final(self):
        return bool(self.segments) and isinstance(self.segments[-1], FiniteRun)

    def _locate(self, alpha: OrdinalCNF):
        k, m = alpha.omega_split()

        if k >= len(self.segments):
            raise DescriptorError(f'index exceeds torsion type: {alpha} is '
                                  f'not below {self.order_type}')

        segment = self.segments[k]
        if isinstance(segment, FiniteRun) and m >= len(segment.entries):
            raise DescriptorError(f'index exceeds torsion type: {alpha} is '
                                  f'not below {self.order_type}')

        return k, m

    def entry_at(self, alpha: OrdinalCNF) -> CartesianDescriptor:
        k, m = self._locate(alpha)
        segment = self.segments[k]

        if isinstance(segment, FiniteRun):
            return segment.entries[m]

        return segment.entry(m)

    def block_entry(self, k, m):
        segment = self.segments[k]
        if isinstance(segment, FiniteRun):
            return segment.entries[m] if m < len(segment.entries) else None

        return segment.entry(m)

    def truncate(self, alpha: OrdinalCNF):
        """The positions below α."""
        if alpha == self.order_type:
            return self

        k, m = self._locate(alpha)
        head = list(self.segments[:k])
        segment = self.segments[k]

        if isinstance(segment, FiniteRun):
            head.append(FiniteRun(segment.entries[:m]))
        else:
            head.append(FiniteRun(tuple(segment.entry(j) for j in range(m))))

        return TorsionSequence(tuple(head))

    def shift(self, alpha: OrdinalCNF):
        """The positions from α on, re-indexed from 0."""
        if alpha == self.order_type:
            return TorsionSequence()

        k, m = self._locate(alpha)
        segment = self.segments[k]

        if isinstance(segment, FiniteRun):
            first = FiniteRun(segment.entries[m:])
        else:
            first = OmegaRun(segment.prefix[m:], segment.repeating)

        return TorsionSequence((first,) + self.segments[k + 1:])

    def append(self, entry: CartesianDescriptor):
        return TorsionSequence(self.segments + (FiniteRun((entry,)),))

    def representatives(self):
        """
        Yields (position, entry, repeating) for every distinct position; an
        OmegaRun's repeating entry is reported once at its first position.
        """
        start = OrdinalCNF()
        for segment in self.segments:
            if isinstance(segment, FiniteRun):
                for m, entry in enumerate(segment.entries):
                    yield start + m, entry, False
            else:
                for m, entry in enumerate(segment.prefix):
                    yield start + m, entry, False
                yield start + len(segment.prefix), segment.repeating, True

            start = start + segment.length

    def first_entry(self):
        for _, entry, _ in self.representatives():
            return entry

        return None

    def last_entry(self):
        if not self.has_final:
            return None

        return self.segments[-1].entries[-1]

    def map_entries(self, function):
        segments = []
        for segment in self.segments:
            if isinstance(segment, FiniteRun):
                segments.append(FiniteRun(tuple(function(e)
                                                for e in segment.entries)))
            else:
                segments.append(OmegaRun(tuple(function(e)
                                               for e in segment.prefix),
                                         function(segment.repeating)))

        return TorsionSequence(tuple(segments))


def _all_entries(segments):
    for segment in segments:
        if isinstance(segment, FiniteRun):
            yield from segment.entries
        else:
            yield from segment.prefix
            yield segment.repeating


class ViolationKind(Enum):
    trivial = 'trivial'
    bounded = 'bounded exponent'


@dataclass(frozen=True)
class Violation:
    position: OrdinalCNF
    kind: ViolationKind
    repeating: bool = False

    def __str__(self):
        where = f'{self.position}' + (' (repeating)' if self.repeating else '')

        return f'index {where}: {self.kind.value}'


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self):
        return not self.violations

    def summary(self):
        if self.valid:
            return 'valid'

        return '; '.join(str(v) for v in self.violations)


def validate(seq: TorsionSequence) -> ValidityReport:
    """
    Every non-final entry must be of unbounded exponent and the final entry
    non-trivial. A sequence of limit type has no final entry.
    """
    final = None
    if seq.has_final:
        final = seq.order_type.predecessor()

    violations = []
    for position, entry, repeating in seq.representatives():
        if entry.is_trivial:
            violations.append(Violation(position, ViolationKind.trivial,
                                        repeating))
        elif position != final and entry.is_bounded:
            violations.append(Violation(position, ViolationKind.bounded,
                                        repeating))

    return ValidityReport(tuple(violations))


@dataclass(frozen=True)
class ProPDescriptor:
    """G = G0 × (Z_p)^X with G0 given by its torsion sequence."""
    prime: int
    torsion_seq: TorsionSequence = field(default_factory=TorsionSequence)
    free_rank: CardinalCount = Cardinals.ZERO

    def __post_init__(self):
        check_prime(self.prime)

        seq_prime = self.torsion_seq.prime
        if seq_prime is not None and seq_prime != self.prime:
            raise DescriptorError(f'Prime mismatch: descriptor prime '
                                  f'{self.prime}, torsion sequence prime '
                                  f'{seq_prime}.')

        report = validate(self.torsion_seq)
        if not report.valid:
            raise InvalidSequenceError(report)

        object.__setattr__(self, 'free_rank',
                           CardinalCount.coerce(self.free_rank))

    @classmethod
    def trivial(cls, prime):
        return cls(prime)

    @classmethod
    def free(cls, prime, rank):
        return cls(prime, TorsionSequence(), rank)

    @classmethod
    def cartesian(cls, layer: CartesianDescriptor, free_rank=0):
        if layer.is_trivial:
            return cls(layer.prime, TorsionSequence(), free_rank)

        return cls(layer.prime, TorsionSequence.of(layer), free_rank)

    @property
    def torsion_type(self):
        return self.torsion_seq.order_type

    @property
    def first_layer(self):
        entry = self.torsion_seq.first_entry()

        return CartesianDescriptor.trivial(self.prime) if entry is None \
            else entry

    @property
    def is_trivial(self):
        return self.torsion_seq.is_empty and self.free_rank.is_zero

    @property
    def is_finite(self):
        if not self.free_rank.is_zero:
            return False

        if self.torsion_seq.is_empty:
            return True

        return (self.torsion_type == OrdinalCNF.of(1) and
                self.first_layer.is_finite)

    def with_free_rank(self, rank):
        return ProPDescriptor(self.prime, self.torsion_seq, rank)


@dataclass(frozen=True)
class DiscreteDescriptor:
    """
    A countable discrete p-group: its Ulm layers (direct sums with the same
    multiplicity representation) and the number of quasicyclic summands.
    """
    prime: int
    ulm_seq: TorsionSequence = field(default_factory=TorsionSequence)
    divisible_rank: CardinalCount = Cardinals.ZERO

    def __post_init__(self):
        check_prime(self.prime)

        seq_prime = self.ulm_seq.prime
        if seq_prime is not None and seq_prime != self.prime:
            raise DescriptorError(f'Prime mismatch: descriptor prime '
                                  f'{self.prime}, Ulm sequence prime '
                                  f'{seq_prime}.')

        object.__setattr__(self, 'divisible_rank',
                           CardinalCount.coerce(self.divisible_rank))
