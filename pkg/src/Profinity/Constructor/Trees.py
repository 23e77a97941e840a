# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from abc import ABC
from dataclasses import dataclass, field
from enum import Enum

from Profinity.Constructor.Splits import FamilyRule, split_plan
from Profinity.Core.Descriptors import CartesianDescriptor, TorsionSequence
from Profinity.Core.Errors import ConstructionError
from Profinity.Utilities.Cache import Cache


class ConstructionCase(Enum):
    base = 'base'
    trivial = 'trivial'
    case_i = 'case I'
    case_ii = 'case II'
    case_iii = 'case III'
    case_iv = 'case IV'
    case_v = 'case V'
    assembled = 'assembled'

    @classmethod
    def _missing_(cls, value: str):
        value = str(value).lower().replace('_', ' ')
        for member in cls:
            if member.value.lower() == value:
                return member
        return None


@dataclass(frozen=True)
class DiagonalSpec:
    """
    Unit residues u_k for the diagonal δ = Σ u_k·t_k over the top generators
    t_k of the extended group; residues are used cyclically.
    """
    residues: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, 'residues',
                           tuple(int(u) for u in self.residues))

        if not self.residues:
            raise ConstructionError('A diagonal needs at least one residue.')

    def check(self, prime):
        for u in self.residues:
            if u % prime == 0:
                raise ConstructionError(f'Diagonal residue {u} is not a unit '
                                        f'mod {prime}.')

    def residue(self, k):
        return self.residues[k % len(self.residues)]


class PresentationTree(ABC):
    case: ConstructionCase


@dataclass(frozen=True)
class Leaf(PresentationTree):
    layer: CartesianDescriptor
    case: ConstructionCase = ConstructionCase.base

    @property
    def prime(self):
        return self.layer.prime


@dataclass(frozen=True, eq=False)
class OmegaFamily:
    """
    The ω children of a product node, given by a split rule applied to a
    torsion sequence. Child trees are built on first use.
    """
    seq: TorsionSequence
    rule: FamilyRule
    _children: Cache = field(default_factory=lambda: Cache(max_size=64),
                             repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'rule', FamilyRule(self.rule))

    @property
    def prime(self):
        return self.seq.prime

    @property
    def plan(self):
        return split_plan(self.seq, self.rule)

    def child_sequence(self, n) -> TorsionSequence:
        return self.plan.child_sequence(n)

    def child(self, n):
        from Profinity.Constructor.Construction import construct

        return self._children.get_or_compute(
            n, lambda i: construct(self.child_sequence(i), prime=self.prime))

    def children(self, count):
        return [self.child(n) for n in range(count)]

    def residual(self, k) -> TorsionSequence:
        return self.plan.residual(k)

    def __eq__(self, other):
        if not isinstance(other, OmegaFamily):
            return NotImplemented

        return self.seq == other.seq and self.rule == other.rule

    def __hash__(self):
        return hash((self.seq, self.rule))


@dataclass(frozen=True)
class Product(PresentationTree):
    """
    A finite tuple of children, or an ω-family. ``empty_prime`` is the prime
    of a product without children.
    """
    family: tuple | OmegaFamily = ()
    case: ConstructionCase = ConstructionCase.assembled
    empty_prime: int | None = None

    @property
    def is_omega(self):
        return isinstance(self.family, OmegaFamily)

    @property
    def prime(self):
        if self.is_omega:
            return self.family.prime

        for child in self.family:
            return child.prime

        return self.empty_prime

    def children(self, count=None):
        if self.is_omega:
            return self.family.children(count)

        return list(self.family if count is None else self.family[:count])


@dataclass(frozen=True)
class Extension(PresentationTree):
    """⟨H, x : p^r·x = δ⟩ with H the child's group."""
    child: PresentationTree
    r: int
    diagonal: DiagonalSpec = field(default_factory=DiagonalSpec)
    case: ConstructionCase = ConstructionCase.case_i

    def __post_init__(self):
        if self.r < 1:
            raise ConstructionError(f'Extension exponent must be positive, '
                                    f'got {self.r}.')

        if self.prime is not None:
            self.diagonal.check(self.prime)

    @property
    def prime(self):
        return self.child.prime


def node_count(tree: PresentationTree, family_children=2):
    """Nodes reachable when each ω-family is expanded to ``family_children``."""
    match tree:
        case Leaf():
            return 1
        case Extension():
            return 1 + node_count(tree.child, family_children)
        case Product():
            count = family_children if tree.is_omega else None
            return 1 + sum(node_count(c, family_children)
                           for c in tree.children(count))
        case _:
            raise RuntimeError(f'Unknown tree node: {tree!r}')
