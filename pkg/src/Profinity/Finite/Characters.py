# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools
from dataclasses import dataclass

from Profinity.Core import Configuration
from Profinity.Core.Errors import FiniteGroupError, OracleSizeError
from Profinity.Finite.AbelianGroups import (FiniteAbelianPGroup, GroupElement,
                                            Homomorphism, Subgroup)


@dataclass(frozen=True)
class Character:
    """
    A homomorphism G → Z/p^e, given by its values on the generators of G.
    All characters of one group share e = exponent(G).
    """
    prime: int
    target_exponent: int
    values: tuple[int, ...]

    def __post_init__(self):
        modulus = self.prime ** self.target_exponent
        object.__setattr__(self, 'values',
                           tuple(int(v) % modulus for v in self.values))

    @property
    def modulus(self):
        return self.prime ** self.target_exponent

    def is_well_defined_on(self, group: FiniteAbelianPGroup):
        if len(self.values) != group.rank:
            return False

        return all((m * v) % self.modulus == 0
                   for m, v in zip(group.moduli, self.values))

    def __call__(self, element: GroupElement) -> int:
        return sum(v * c for v, c in
                   zip(self.values, element.coords)) % self.modulus


def _guard(group):
    limit = Configuration.get_config().oracle.character_limit

    if group.order > limit:
        raise OracleSizeError(group.order, limit)


class CharacterGroup:
    """
    G* for a finite G = ⊕ C_{p^{e_j}}. Dual elements are coordinate vectors
    k with k_j mod p^{e_j}; k is the character with value p^{e - e_j}·k_j on
    the j-th generator.
    """

    def __init__(self, group: FiniteAbelianPGroup):
        _guard(group)

        self.group = group
        self.target_exponent = group.exponent
        self.parameters = FiniteAbelianPGroup(group.prime, group.exponents)

    @property
    def prime(self):
        return self.group.prime

    def character(self, k) -> Character:
        coords = k.coords if isinstance(k, GroupElement) else tuple(k)
        p, e = self.prime, self.target_exponent

        values = tuple(p ** (e - e_j) * k_j for k_j, e_j in
                       zip(coords, self.group.exponents))

        character = Character(p, e, values)
        if not character.is_well_defined_on(self.group):
            raise FiniteGroupError(f'Character {values} is not well '
                                   f'defined on {self.group}.')

        return character

    def basis(self):
        return [self.character(k) for k in self.parameters.generators()]

    def characters(self):
        # bounded by the character limit checked on construction
        for coords in itertools.product(*(range(m) for m in
                                          self.parameters.moduli)):
            k = self.parameters.element(coords)
            yield k, self.character(k)

    def structure(self) -> FiniteAbelianPGroup:
        """
        Decomposition of the group the basis characters generate inside
        (Z/p^e)^rank.
        """
        if self.group.is_trivial:
            return FiniteAbelianPGroup(self.prime, ())

        ambient = FiniteAbelianPGroup(self.prime, (self.target_exponent,) *
                                      self.group.rank)

        return Subgroup(ambient, tuple(ambient.element(c.values)
                                       for c in self.basis())).decomposition()

    def multiple(self, n) -> Subgroup:
        """n·G* inside the parameter group."""
        return Subgroup(self.parameters,
                        tuple(n * k for k in self.parameters.generators()))


def character_group(group: FiniteAbelianPGroup) -> CharacterGroup:
    return CharacterGroup(group)


def annihilator(group: FiniteAbelianPGroup, sub: Subgroup) -> Subgroup:
    """{χ ∈ G* : χ(S) = 0}, found by scanning every character."""
    if sub.group != group:
        raise FiniteGroupError('The subgroup does not belong to the group.')

    dual = CharacterGroup(group)

    kept = tuple(k for k, character in dual.characters()
                 if all(character(s) == 0 for s in sub.generators))

    return Subgroup(dual.parameters, kept)


class DoubleDualMap:
    """g ↦ evaluation at g, expressed in the coordinates of G**."""

    def __init__(self, group: FiniteAbelianPGroup):
        self.group = group
        self.dual = CharacterGroup(group)
        self.double_dual = CharacterGroup(self.dual.parameters)

    def __call__(self, element: GroupElement) -> GroupElement:
        p, e = self.group.prime, self.dual.target_exponent

        coords = []
        for character, e_j in zip(self.dual.basis(), self.group.exponents):
            value = character(element)
            step = p ** (e - e_j)
            if value % step:
                raise FiniteGroupError(f'Evaluation {value} is not a multiple '
                                       f'of {step}.')
            coords.append(value // step)

        return self.double_dual.parameters.element(coords)

    def homomorphism(self) -> Homomorphism:
        return Homomorphism(self.group, self.double_dual.parameters,
                            tuple(self(g) for g in self.group.generators()))


def double_dual_map(group: FiniteAbelianPGroup) -> DoubleDualMap:
    return DoubleDualMap(group)
