# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from Profinity.Core import Configuration
from Profinity.Core.Descriptors import check_prime
from Profinity.Core.Errors import FiniteGroupError, OracleSizeError
from Profinity.Finite.SmithNormalForm import (SmithNormalForm, integer_matrix,
                                              valuation)


@dataclass(frozen=True)
class FiniteAbelianPGroup:
    """⊕_j C_{p^{e_j}} with e_1 ≥ e_2 ≥ ... ≥ e_k."""
    prime: int
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        check_prime(self.prime)

        exponents = tuple(int(e) for e in self.exponents)
        if any(e < 1 for e in exponents):
            raise FiniteGroupError(f'Exponents must be positive, got '
                                   f'{list(exponents)}.')

        if any(a < b for a, b in itertools.pairwise(exponents)):
            raise FiniteGroupError(f'Exponents must be non-increasing, got '
                                   f'{list(exponents)}.')

        object.__setattr__(self, 'exponents', exponents)

    @classmethod
    def from_exponents(cls, prime, exponents):
        return cls(prime, tuple(sorted((e for e in exponents if e > 0),
                                       reverse=True)))

    @property
    def rank(self):
        return len(self.exponents)

    @property
    def log_order(self):
        return sum(self.exponents)

    @property
    def order(self):
        return self.prime ** self.log_order

    @property
    def exponent(self):
        return self.exponents[0] if self.exponents else 0

    @property
    def moduli(self):
        return tuple(self.prime ** e for e in self.exponents)

    @property
    def is_trivial(self):
        return not self.exponents

    def element(self, coords):
        return GroupElement(self, tuple(coords))

    def zero(self):
        return GroupElement(self, (0,) * self.rank)

    def generators(self):
        return [GroupElement(self, tuple(int(i == j) for j in range(self.rank)))
                for i in range(self.rank)]

    def multiplicities(self):
        """i ↦ number of summands C_{p^i}."""
        counts = {}
        for e in self.exponents:
            counts[e] = counts.get(e, 0) + 1

        return dict(sorted(counts.items()))

    def elements(self):
        guard_enumeration(self.order)

        for coords in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, coords)

    def whole(self):
        return Subgroup(self, tuple(self.generators()))

    def trivial_subgroup(self):
        return Subgroup(self, ())

    def direct_sum(self, other):
        if other.prime != self.prime:
            raise FiniteGroupError(f'Prime mismatch in direct sum: '
                                   f'{self.prime} and {other.prime}.')

        return FiniteAbelianPGroup.from_exponents(
            self.prime, self.exponents + other.exponents)

    def __str__(self):
        if self.is_trivial:
            return 'trivial'

        return ' x '.join(f'C_{{{self.prime}^{e}}}' for e in self.exponents)


def guard_enumeration(size, limit=None):
    if limit is None:
        limit = Configuration.get_config().oracle.enumeration_limit

    if size > limit:
        raise OracleSizeError(size, limit)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianPGroup = field(repr=False)
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)

        if len(coords) != self.group.rank:
            raise FiniteGroupError(f'Element {coords} has {len(coords)} '
                                   f'coordinates, the group has rank '
                                   f'{self.group.rank}.')

        coords = tuple(c % m for c, m in zip(coords, self.group.moduli))
        object.__setattr__(self, 'coords', coords)

    def _check(self, other):
        if other.group != self.group:
            raise FiniteGroupError('Elements belong to different groups.')

    def __add__(self, other):
        self._check(other)

        return GroupElement(self.group, tuple(a + b for a, b in
                                              zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        return GroupElement(self.group, tuple(n * c for c in self.coords))

    __rmul__ = __mul__

    @property
    def is_zero(self):
        return not any(self.coords)

    def order_exponent(self):
        """k with p^k the order of the element."""
        p = self.group.prime
        return max((e - valuation(c, p) if c else 0
                    for c, e in zip(self.coords, self.group.exponents)),
                   default=0)

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.coords) + ')'


def _coords(group, generator):
    if isinstance(generator, GroupElement):
        if generator.group != group:
            raise FiniteGroupError(f'not a subgroup: {generator} is not an '
                                   f'element of {group}')

        return generator.coords

    coords = tuple(generator)
    if len(coords) != group.rank or any(
            not 0 <= c < m for c, m in zip(coords, group.moduli)):
        raise FiniteGroupError(f'not a subgroup: {coords} is not an element '
                               f'of {group}')

    return coords


def _element(group, value):
    """Element from an element of ``group`` or from integer coordinates."""
    if isinstance(value, GroupElement):
        _coords(group, value)
        return value

    return GroupElement(group, tuple(value))


def _quotient_log_order(group, generator_coords):
    """log_p |G / ⟨generators⟩| via SNF of the inclusion matrix."""
    if group.is_trivial:
        return 0

    rows = [[m if i == j else 0 for j in range(group.rank)]
            for i, m in enumerate(group.moduli)]
    rows.extend(list(c) for c in generator_coords)

    diagonal = SmithNormalForm(rows).run().diagonal

    return sum(valuation(d, group.prime) for d in diagonal)


@dataclass(frozen=True)
class Subgroup:
    """
    The subgroup generated by ``generators``. Structure is computed on demand
    from the SNF of the inclusion matrix.
    """
    group: FiniteAbelianPGroup
    generators: tuple[GroupElement, ...] = ()

    def __post_init__(self):
        generators = tuple(GroupElement(self.group, _coords(self.group, g))
                           for g in self.generators)

        object.__setattr__(self, 'generators', generators)

    @property
    def log_order(self):
        return self.group.log_order - _quotient_log_order(
            self.group, [g.coords for g in self.generators])

    @property
    def order(self):
        return self.group.prime ** self.log_order

    def scaled(self, n):
        return Subgroup(self.group, tuple(n * g for g in self.generators))

    def decomposition(self) -> FiniteAbelianPGroup:
        """Canonical decomposition read off the orders |p^i H|."""
        p = self.group.prime
        logs = [self.log_order]
        while logs[-1]:
            logs.append(self.scaled(p ** len(logs)).log_order)

        # ranks[i] = number of summands of exponent > i
        ranks = [a - b for a, b in itertools.pairwise(logs)]

        exponents = []
        for i, rank in enumerate(ranks):
            above = ranks[i + 1] if i + 1 < len(ranks) else 0
            exponents.extend([i + 1] * (rank - above))

        return FiniteAbelianPGroup.from_exponents(p, exponents)

    def contains(self, element) -> bool:
        coords = _coords(self.group, element)

        extended = [g.coords for g in self.generators] + [coords]

        return _quotient_log_order(self.group, extended) == \
            self.group.log_order - self.log_order

    def is_subgroup_of(self, other) -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_as(self, other) -> bool:
        return self.is_subgroup_of(other) and other.is_subgroup_of(self)

    def join(self, other):
        return Subgroup(self.group, self.generators + other.generators)

    def elements(self):
        guard_enumeration(self.order)

        seen = {self.group.zero()}
        frontier = [self.group.zero()]
        while frontier:
            nxt = []
            for element in frontier:
                for g in self.generators:
                    candidate = element + g
                    if candidate not in seen:
                        seen.add(candidate)
                        nxt.append(candidate)
            frontier = nxt

        return seen


class RelationPresentation:
    """
    Relations (rows) on generators (columns); the presented group is
    Z^generators / rowspace(matrix).
    """

    def __init__(self, matrix, generators=None, labels=None):
        rows = [list(row) for row in matrix]
        if generators is None:
            generators = len(rows[0]) if rows else 0

        self.matrix = integer_matrix(rows, (len(rows), generators))
        self.generators = generators
        self.labels = tuple(labels) if labels is not None else tuple(
            f'g{i}' for i in range(generators))

        if len(self.labels) != generators:
            raise FiniteGroupError(f'{len(self.labels)} labels for '
                                   f'{generators} generators.')


class PresentedGroup(NamedTuple):
    group: FiniteAbelianPGroup
    transport: np.ndarray
    presentation: RelationPresentation

    def image(self, vector) -> GroupElement:
        """The class of Σ vector_j·g_j in canonical coordinates."""
        vector = np.array(list(vector), dtype=object)
        if self.transport.shape[1] == 0:
            return self.group.zero()

        return GroupElement(self.group, tuple(vector.dot(self.transport)))

    def generator_image(self, j) -> GroupElement:
        return GroupElement(self.group, tuple(self.transport[j, :]))


def group_from_presentation(rp: RelationPresentation, p) -> PresentedGroup:
    check_prime(p)

    rows, cols = rp.matrix.shape
    snf = SmithNormalForm(rp.matrix, (rows, cols)).run()

    diagonal = snf.diagonal + [0] * (cols - len(snf.diagonal))
    if any(d == 0 for d in diagonal):
        raise FiniteGroupError(f'non-finite p-part: the presentation with '
                               f'{rows} relations on {cols} generators has '
                               f'free rank {diagonal.count(0)}')

    kept = [(valuation(d, p), i) for i, d in enumerate(diagonal)]
    kept = sorted(((v, i) for v, i in kept if v > 0), key=lambda t: -t[0])

    group = FiniteAbelianPGroup(p, tuple(v for v, _ in kept))

    # x ↦ x·Q carries the relation lattice onto the diagonal one
    transport = np.zeros((cols, len(kept)), dtype=object)
    for column, (v, i) in enumerate(kept):
        for j in range(cols):
            transport[j, column] = snf.Q[j, i] % p ** v

    return PresentedGroup(group, transport, rp)


def subgroup(group, generators) -> Subgroup:
    return Subgroup(group, tuple(generators))


def power_subgroup(group: FiniteAbelianPGroup, n: int) -> Subgroup:
    """nG."""
    if n < 1:
        raise FiniteGroupError(f'power_subgroup needs a positive integer, '
                               f'got {n}.')

    return Subgroup(group, tuple(n * g for g in group.generators()))


def torsion_bracket(group: FiniteAbelianPGroup, n: int) -> Subgroup:
    """G[n] = {x : nx = 0}."""
    if n < 1:
        raise FiniteGroupError(f'torsion_bracket needs a positive integer, '
                               f'got {n}.')

    v = valuation(n, group.prime)
    p = group.prime

    return Subgroup(group, tuple(p ** max(e - v, 0) * g for g, e in
                                 zip(group.generators(), group.exponents)))


def quotient_map(group: FiniteAbelianPGroup, generators) -> PresentedGroup:
    sub = generators if isinstance(generators, Subgroup) else \
        Subgroup(group, tuple(generators))

    rows = [[m if i == j else 0 for j in range(group.rank)]
            for i, m in enumerate(group.moduli)]
    rows.extend(list(g.coords) for g in sub.generators)

    return group_from_presentation(RelationPresentation(rows, group.rank),
                                   group.prime)


def quotient(group: FiniteAbelianPGroup, generators) -> FiniteAbelianPGroup:
    return quotient_map(group, generators).group


def ulm_dimension(group: FiniteAbelianPGroup, i: int) -> int:
    """dim_{F_p} G[p^i] / (pG ∩ G[p^i]), i.e. log_p |G[p^i] + pG| / |pG|."""
    p = group.prime
    p_multiples = power_subgroup(group, p)
    bracket = torsion_bracket(group, p ** i)

    return bracket.join(p_multiples).log_order - p_multiples.log_order


def ulm_invariants_finite(group: FiniteAbelianPGroup) -> dict[int, int]:
    """
    i ↦ α_i, the number of summands C_{p^i}. The quotient dimension counts
    summands of exponent at most i, so α_i is its first difference.
    """
    invariants = {}
    previous = 0
    for i in range(1, group.exponent + 1):
        current = ulm_dimension(group, i)
        if current != previous:
            invariants[i] = current - previous
        previous = current

    return invariants


@dataclass(frozen=True)
class Homomorphism:
    """The homomorphism sending the j-th generator of ``domain`` to images[j]."""
    domain: FiniteAbelianPGroup
    codomain: FiniteAbelianPGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        images = tuple(_element(self.codomain, g) for g in self.images)

        if len(images) != self.domain.rank:
            raise FiniteGroupError(f'{len(images)} images for a domain of '
                                   f'rank {self.domain.rank}.')

        for j, (image, e) in enumerate(zip(images, self.domain.exponents)):
            if not (self.domain.prime ** e * image).is_zero:
                raise FiniteGroupError(f'Homomorphism not well defined: '
                                       f'generator {j} has order '
                                       f'{self.domain.prime}^{e} but its '
                                       f'image {image} does not.')

        object.__setattr__(self, 'images', images)

    def __call__(self, element: GroupElement) -> GroupElement:
        result = self.codomain.zero()
        for c, image in zip(_coords(self.domain, element), self.images):
            result = result + c * image

        return result

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, self.images)

    @property
    def image_log_order(self):
        return self.image().log_order

    @property
    def kernel_log_order(self):
        return self.domain.log_order - self.image_log_order

    @property
    def kernel_order(self):
        return self.domain.prime ** self.kernel_log_order

    @property
    def is_injective(self):
        return self.kernel_log_order == 0

    @property
    def is_surjective(self):
        return self.image_log_order == self.codomain.log_order

    def kernel_elements(self):
        return [g for g in self.domain.elements() if self(g).is_zero]

    def compose(self, other):
        """self ∘ other."""
        return Homomorphism(other.domain, self.codomain,
                            tuple(self(g) for g in other.images))


def cyclic_group(p, e) -> FiniteAbelianPGroup:
    return FiniteAbelianPGroup(p, (e,) if e > 0 else ())


def enumerate_groups(p, max_log_order):
    """Every p-group of order at most p^max_log_order, by exponent partitions."""
    for total in range(max_log_order + 1):
        for partition in _partitions(total, total):
            yield FiniteAbelianPGroup(p, partition)


def _partitions(n, largest):
    if n == 0:
        yield ()
        return

    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def log_order(n, p):
    if n < 1 or p ** valuation(n, p) != n:
        raise FiniteGroupError(f'{n} is not a power of {p}.')

    return valuation(n, p)
