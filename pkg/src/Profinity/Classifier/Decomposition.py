# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools
from enum import Enum
from typing import NamedTuple

from Profinity.Calculus import Torsion
from Profinity.Constructor.Splits import FamilyRule, SplitPlan, split_plan
from Profinity.Core import Cardinals
from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Descriptors import ProPDescriptor, TorsionSequence
from Profinity.Core.Errors import DecompositionError


class DecompositionVariant(Enum):
    standard = 'standard'
    cyclic_tops = 'cyclic tops'

    @classmethod
    def _missing_(cls, value: str):
        value = str(value).lower().replace('_', ' ')
        for member in cls:
            if member.value == value:
                return member
        return None


class ProductFamily:
    """
    The factors K_0, K_1, ... of d = ∏_n K_n, produced on demand. The free
    part of d is carried by K_0.
    """

    def __init__(self, d: ProPDescriptor, plan: SplitPlan):
        self.descriptor = d
        self.plan = plan

    @property
    def prime(self):
        return self.descriptor.prime

    def _free(self, n):
        return self.descriptor.free_rank if n == 0 else Cardinals.ZERO

    def factor(self, n: int) -> ProPDescriptor:
        return ProPDescriptor(self.prime, self.plan.child_sequence(n),
                              self._free(n))

    def __iter__(self):
        return (self.factor(n) for n in itertools.count())

    def take(self, k: int) -> list[ProPDescriptor]:
        return [self.factor(n) for n in range(k)]

    def residual(self, k: int) -> ProPDescriptor:
        """∏_{n ≥ k} K_n."""
        return ProPDescriptor(self.prime, self.plan.residual(k),
                              self._free(k))

    def recombine(self, k: int) -> ProPDescriptor:
        """K_0 × … × K_{k-1} × residual(k); equal to the decomposed d."""
        return Torsion.product(self.take(k) + [self.residual(k)])


def decompose_infinite_product(d: ProPDescriptor,
                               variant=DecompositionVariant.standard
                               ) -> ProductFamily:
    """
    Split d into infinitely many non-trivial closed factors. Every factor has
    torsion type at least one less than d; with ``cyclic_tops`` the top
    layers of the factors are cyclic.
    """
    variant = DecompositionVariant(variant)

    if d.torsion_seq.is_empty:
        raise DecompositionError('not decomposable: the dual-reduced part is '
                                 'trivial')

    if d.is_finite or d.first_layer.is_finite:
        raise DecompositionError(f'not decomposable: the closure of the '
                                 f'torsion {d.first_layer} is finite')

    rule = FamilyRule.decomposition
    if variant is DecompositionVariant.cyclic_tops:
        rule = FamilyRule.decomposition_cyclic_tops

    return ProductFamily(d, split_plan(d.torsion_seq, rule))


class Peeled(NamedTuple):
    dual_reduced: ProPDescriptor
    free_rank: CardinalCount


def peel_free_part(d: ProPDescriptor) -> Peeled:
    """G = G0 × Z_p^X with G0 dual-reduced."""
    return Peeled(d.with_free_rank(Cardinals.ZERO), d.free_rank)


def unpeel(peeled: Peeled) -> ProPDescriptor:
    d = peeled.dual_reduced
    free = ProPDescriptor(d.prime, TorsionSequence(), peeled.free_rank)

    return Torsion.product([d, free])
