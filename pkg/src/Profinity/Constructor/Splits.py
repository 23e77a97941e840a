# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum

from Profinity.Core import Cardinals
from Profinity.Core.Descriptors import (CartesianDescriptor, FiniteRun,
                                        MultiplicitySeq, OmegaRun, Tail,
                                        TorsionSequence)
from Profinity.Core.Errors import DecompositionError
from Profinity.Core.Ordinals import OrdinalCNF
from Profinity.Utilities.Cache import Cache


def _blocks_pattern(layer: CartesianDescriptor, shift: int, content: int):
    """
    Multiplicities keeping the tail blocks b with b ≡ content mod 2^shift,
    where block b covers one period of the layer's tail pattern.
    """
    mults = layer.mults
    pattern = mults.tail.as_pattern()
    period = 2 ** shift

    tail = []
    for b in range(period):
        tail.extend(pattern if b == content else
                    (Cardinals.ZERO,) * len(pattern))

    prefix = (Cardinals.ZERO,) * len(mults.prefix)

    return CartesianDescriptor(layer.prime,
                               MultiplicitySeq(prefix, Tail.periodic(tail)))


def _with_prefix(layer: CartesianDescriptor, part: CartesianDescriptor):
    prefix = CartesianDescriptor(layer.prime, MultiplicitySeq(
        layer.mults.prefix, Tail.zero()))

    return prefix.product(part)


class LayerSplit(ABC):
    """
    A decomposition N = ∏_n N_n of a Cartesian layer. ``part(n)`` is N_n, or
    None when the split has fewer than n + 1 parts; ``remainder(k)`` is
    ∏_{n ≥ k} N_n.
    """

    def __init__(self, layer: CartesianDescriptor):
        self.layer = layer

    @abstractmethod
    def part(self, n: int) -> CartesianDescriptor | None:
        pass

    @abstractmethod
    def remainder(self, k: int) -> CartesianDescriptor:
        pass

    def recombine(self, depth: int) -> CartesianDescriptor:
        parts = [self.part(n) for n in range(depth)]
        total = self.remainder(depth)

        for part in parts:
            if part is not None:
                total = total.product(part)

        return total

    def __eq__(self, other):
        return type(self) is type(other) and self.layer == other.layer

    def __hash__(self):
        return hash((type(self).__name__, self.layer))

    def __repr__(self):
        return f'{type(self).__name__}({self.layer})'


class BlockSplit(LayerSplit):
    """
    ω unbounded parts: tail block b goes to the part n with 2^n exactly
    dividing b + 1. Part 0 also takes the prefix.
    """

    def __init__(self, layer: CartesianDescriptor):
        if not layer.is_unbounded:
            raise DecompositionError(f'not decomposable: {layer} has bounded '
                                     f'exponent')

        super().__init__(layer)

    def part(self, n):
        part = _blocks_pattern(self.layer, n + 1, 2 ** n - 1)

        return _with_prefix(self.layer, part) if n == 0 else part

    def remainder(self, k):
        if k == 0:
            return self.layer

        return _blocks_pattern(self.layer, k, 2 ** k - 1)


class FactorSplit(LayerSplit):
    """
    One cyclic factor per part, taken round robin: in round r each exponent
    i ≤ r contributes one more copy while copies remain.
    """

    def __init__(self, layer: CartesianDescriptor):
        super().__init__(layer)

        self._emitted: list[int] = []
        self._stream = self._factors()
        self._lock = threading.Lock()

    def _factors(self):
        mults = self.layer.mults
        remaining = mults.total()
        counts = {}

        for r in itertools.count(1):
            if remaining == Cardinals.ZERO:
                return

            for i in range(1, r + 1):
                if counts.get(i, 0) < mults.term(i):
                    counts[i] = counts.get(i, 0) + 1
                    if not remaining.is_aleph0:
                        remaining = remaining - 1
                    yield i

    def factor(self, n):
        """Exponent of the n-th emitted factor, or None."""
        with self._lock:
            while len(self._emitted) <= n:
                exponent = next(self._stream, None)
                if exponent is None:
                    return None
                self._emitted.append(exponent)

            return self._emitted[n]

    def part(self, n):
        exponent = self.factor(n)
        if exponent is None:
            return None

        return CartesianDescriptor.cyclic(self.layer.prime, exponent)

    def remainder(self, k):
        counts = {}
        for n in range(k):
            exponent = self.factor(n)
            if exponent is None:
                break
            counts[exponent] = counts.get(exponent, 0) + 1

        return CartesianDescriptor(self.layer.prime,
                                   self.layer.mults.remove_factors(counts))


class AlephSplit(LayerSplit):
    """
    For bounded layers with an ℵ0 multiplicity: part 0 is the layer itself
    and every later part keeps only the ℵ0 terms.
    """

    def __init__(self, layer: CartesianDescriptor):
        mults = layer.mults
        if not layer.is_bounded or mults.is_finite:
            raise DecompositionError(f'not decomposable: {layer} is not a '
                                     f'bounded layer with an aleph0 term')

        super().__init__(layer)

        mask = tuple(c if c.is_aleph0 else Cardinals.ZERO
                     for c in mults.prefix)
        self.mask = CartesianDescriptor(layer.prime,
                                        MultiplicitySeq(mask, Tail.zero()))

    def part(self, n):
        return self.layer if n == 0 else self.mask

    def remainder(self, k):
        return self.layer if k == 0 else self.mask


class PeeledSplit(LayerSplit):
    """
    Part 0 is the smallest cyclic factor; the rest of the layer is split
    with a BlockSplit.
    """

    def __init__(self, layer: CartesianDescriptor):
        super().__init__(layer)

        self.exponent = layer.mults.smallest_index()
        if self.exponent is None:
            raise DecompositionError(f'not decomposable: {layer} is trivial')

        rest = CartesianDescriptor(
            layer.prime, layer.mults.remove_factors({self.exponent: 1}))
        self.rest = BlockSplit(rest)

    def part(self, n):
        if n == 0:
            return CartesianDescriptor.cyclic(self.layer.prime, self.exponent)

        return self.rest.part(n - 1)

    def remainder(self, k):
        if k == 0:
            return self.layer

        return self.rest.remainder(k - 1)


def final_split(layer: CartesianDescriptor) -> LayerSplit:
    if layer.is_unbounded:
        return BlockSplit(layer)

    if not layer.is_finite:
        return AlephSplit(layer)

    return FactorSplit(layer)


class FamilyRule(Enum):
    successor_split = 'successor split'
    limit_split = 'limit split'
    limit_split_peeled = 'limit split peeled'
    decomposition = 'decomposition'
    decomposition_cyclic_tops = 'decomposition cyclic tops'

    @classmethod
    def _missing_(cls, value: str):
        value = str(value).lower().replace('_', ' ')
        for member in cls:
            if member.value == value:
                return member
        return None


@dataclass(frozen=True)
class LayerPlan:
    split: LayerSplit
    offset: int


@dataclass(eq=False)
class SplitPlan:
    """
    Assigns a split and an offset to every position (k, m) = ω·k + m of a
    torsion sequence. Family member n receives part n - offset of the layer
    at each position, up to the first position where it receives nothing.
    """
    seq: TorsionSequence
    rule: FamilyRule
    _splits: dict = field(default_factory=dict, repr=False)
    _offsets: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.rule = FamilyRule(self.rule)

        if self.seq.is_empty:
            raise DecompositionError('not decomposable: empty torsion '
                                     'sequence')

        self._last_block = len(self.seq.segments) - 1
        self._final = None
        if self.seq.has_final:
            self._final = (self._last_block,
                           len(self.seq.segments[-1].entries) - 1)

        if self.rule in (FamilyRule.limit_split,
                         FamilyRule.limit_split_peeled) and self.seq.has_final:
            raise DecompositionError(f'{self.rule.value} needs a sequence of '
                                     f'limit type')

    def _split(self, factory, layer):
        key = (factory, layer)
        if key not in self._splits:
            self._splits.setdefault(key, factory(layer))

        return self._splits[key]

    def _limit_offset(self, m, skip=0):
        """
        The first member whose order type lies past position m of the last
        block. Members take the terms of the fundamental sequence of the
        torsion type in order, from term ``skip`` on.
        """
        key = (m, skip)
        if key not in self._offsets:
            position = OrdinalCNF.omega_poly(self._last_block, m)
            terms = itertools.islice(
                self.seq.order_type.fundamental_sequence(), skip, None)
            self._offsets[key] = next(n for n, term in enumerate(terms)
                                      if position < term)

        return self._offsets[key]

    def plan(self, k, m) -> LayerPlan:
        layer = self.seq.block_entry(k, m)
        last = k == self._last_block
        is_final = (k, m) == self._final

        match self.rule:
            case FamilyRule.successor_split:
                if is_final:
                    return LayerPlan(self._split(FactorSplit, layer), 0)
                return LayerPlan(self._split(BlockSplit, layer), 0)

            case FamilyRule.limit_split:
                return LayerPlan(self._split(BlockSplit, layer),
                                 self._limit_offset(m) if last else 0)

            case FamilyRule.limit_split_peeled:
                if last and m >= 1:
                    return LayerPlan(self._split(PeeledSplit, layer),
                                     self._limit_offset(m, skip=1))
                return LayerPlan(self._split(BlockSplit, layer), 0)

            case FamilyRule.decomposition:
                if is_final:
                    return LayerPlan(self._split(final_split, layer), 0)
                return LayerPlan(self._split(BlockSplit, layer), 0)

            case FamilyRule.decomposition_cyclic_tops:
                if is_final:
                    return LayerPlan(self._split(FactorSplit, layer), 0)
                if self._final is None and last and m >= 1:
                    return LayerPlan(self._split(PeeledSplit, layer),
                                     self._limit_offset(m, skip=1))
                return LayerPlan(self._split(BlockSplit, layer), 0)

            case _:
                raise RuntimeError(f'Unknown family rule: {self.rule}')

    def _walk(self, select):
        """
        Build a sequence from ``select(plan) -> (key, layer | None)``; equal
        keys at consecutive repeating positions close an ω-run.
        """
        segments = []

        for k, segment in enumerate(self.seq.segments):
            entries = []
            m = 0
            while True:
                if self.seq.block_entry(k, m) is None:
                    segments.append(FiniteRun(tuple(entries)))
                    return TorsionSequence(tuple(segments))

                key, layer = select(self.plan(k, m))
                if layer is None or layer.is_trivial:
                    segments.append(FiniteRun(tuple(entries)))
                    return TorsionSequence(tuple(segments))

                if isinstance(segment, OmegaRun) and m >= len(segment.prefix):
                    next_key, _ = select(self.plan(k, m + 1))
                    if next_key == key:
                        segments.append(OmegaRun(tuple(entries), layer))
                        break

                entries.append(layer)
                m += 1

        return TorsionSequence(tuple(segments))

    def child_sequence(self, n: int) -> TorsionSequence:
        def select(plan):
            index = n - plan.offset
            if index < 0:
                return (plan.split, index), None

            return (plan.split, index), plan.split.part(index)

        return self._walk(select)

    def residual(self, k: int) -> TorsionSequence:
        """Termwise product of the members n ≥ k."""
        def select(plan):
            index = max(k - plan.offset, 0)

            return (plan.split, index), plan.split.remainder(index)

        return self._walk(select)


_plans = Cache(max_size=256)


def split_plan(seq: TorsionSequence, rule: FamilyRule) -> SplitPlan:
    return _plans.get_or_compute((seq, FamilyRule(rule)),
                                 lambda key: SplitPlan(*key))
