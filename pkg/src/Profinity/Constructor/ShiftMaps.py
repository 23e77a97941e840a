# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from Profinity.Core.Errors import FiniteGroupError
from Profinity.Finite.AbelianGroups import (FiniteAbelianPGroup, GroupElement,
                                            Homomorphism, cyclic_group)


def phi_map(p, i, j) -> Homomorphism:
    """C_{p^i} → C_{p^j}, x ↦ x mod p^j; the zero map when j > i."""
    domain, codomain = cyclic_group(p, i), cyclic_group(p, j)

    if i < 1 or j < 1:
        raise FiniteGroupError(f'phi needs positive exponents, got {i}, {j}.')

    image = codomain.element((1,)) if j <= i else codomain.zero()

    return Homomorphism(domain, codomain, (image,))


def mu_map(p, m, n) -> Homomorphism:
    """Reduction Z/p^m → Z/p^n for n ≤ m."""
    if n > m:
        raise FiniteGroupError(f'mu needs n ≤ m, got m = {m}, n = {n}.')

    return phi_map(p, m, n)


def tower(p, n) -> FiniteAbelianPGroup:
    """∏_{i ≤ n} C_{p^i}; coordinate a holds the factor C_{p^(n - a)}."""
    return FiniteAbelianPGroup(p, tuple(range(n, 0, -1)))


def _coordinate(n, i):
    return n - i


def theta_truncated(p, n) -> Homomorphism:
    """
    ∏_{i ≤ n+1} C_{p^i} → ∏_{i ≤ n} C_{p^i},
    (x_i) ↦ (x_i − x_{i+1} mod p^i)_{i ≤ n}.
    """
    if n < 1:
        raise FiniteGroupError(f'theta needs n ≥ 1, got {n}.')

    domain, codomain = tower(p, n + 1), tower(p, n)

    images = []
    for a in range(domain.rank):
        i = n + 1 - a
        coords = [0] * codomain.rank
        if i <= n:
            coords[_coordinate(n, i)] += 1
        if i >= 2:
            coords[_coordinate(n, i - 1)] -= 1
        images.append(codomain.element(coords))

    return Homomorphism(domain, codomain, tuple(images))


def diagonal_eta(p, n) -> GroupElement:
    """The element with coordinate 1 in every factor of ∏_{i ≤ n} C_{p^i}."""
    group = tower(p, n)

    return group.element((1,) * group.rank)
