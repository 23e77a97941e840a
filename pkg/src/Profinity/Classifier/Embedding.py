# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from Profinity.Core import Configuration
from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Descriptors import (CartesianDescriptor, FiniteRun,
                                        OmegaRun, ProPDescriptor)
from Profinity.Core.Errors import DescriptorError
from Profinity.Finite.AbelianGroups import FiniteAbelianPGroup, Homomorphism


class Demand(NamedTuple):
    source: str
    exponent: int
    round: int
    copy: int
    chain: int | None = None


class Assignment(NamedTuple):
    """The demanded factor C_{p^u} sent into copy ``copy`` of C_{p^v}."""
    source: str
    u: int
    v: int
    copy: int
    round: int = 0
    chain: int | None = None

    def __str__(self):
        return (f"{self.source}: C_p^{self.u} -> copy {self.copy} of "
                f"C_p^{self.v}")


class FiniteFactor(NamedTuple):
    """
    A cyclic summand of the finite shadow: one layer factor, or the first
    links of a free chain sent diagonally into their factors.
    """
    exponent: int
    links: tuple[Assignment, ...]


def _available(count: CardinalCount, index: int) -> bool:
    """Whether a copy numbered ``index`` exists among ``count`` copies."""
    return count.is_aleph0 or index < count.count


def _positions(seq, r):
    """Positions (k, m) of the sequence with max(k, m) <= r."""
    for k, segment in enumerate(seq.segments[:r + 1]):
        for m in range(r + 1):
            if isinstance(segment, FiniteRun) and m >= len(segment.entries):
                break
            yield k, m, seq.block_entry(k, m)


def _horizon(d: ProPDescriptor):
    """Last round that yields a demand, or None when demands never end."""
    if not d.free_rank.is_zero:
        return None

    bound = 0
    for segment in d.torsion_seq.segments:
        if isinstance(segment, OmegaRun):
            return None

        bound = max(bound, len(segment.entries))
        for layer in segment.entries:
            if not layer.is_finite:
                return None

            exponent = layer.mults.exponent or 0
            counts = (layer.term(i).count for i in range(1, exponent + 1))
            bound = max(bound, exponent, *counts)

    return bound


class EmbeddingWitness:
    """
    Sends every cyclic factor demanded by the source into a distinct factor
    C_{p^v}, v ≥ u, of the target's first layer. Demands are dovetailed so
    each one appears after finitely many steps: the layers' cyclic factors
    and, per unit of free rank, a chain with one link of every exponent.
    """

    def __init__(self, source: ProPDescriptor, target: CartesianDescriptor):
        self.source = source
        self.target = target

    def demands(self, rounds: int | None = None):
        seq = self.source.torsion_seq
        horizon = _horizon(self.source)
        free = self.source.free_rank

        if horizon is not None:
            rounds = horizon + 1 if rounds is None else min(rounds,
                                                            horizon + 1)

        for r in itertools.count() if rounds is None else range(rounds):
            for k, m, layer in _positions(seq, r):
                for i, c in itertools.product(range(1, r + 2), range(r + 1)):
                    if max(k, m, i - 1, c) != r:
                        continue
                    if _available(layer.term(i), c):
                        yield Demand(f'layer ({k}, {m}) factor C_p^{i} '
                                     f'copy {c}', i, r, c)

            for f, n in itertools.product(range(r + 1), range(1, r + 2)):
                if max(f, n - 1) != r or not _available(free, f):
                    continue
                yield Demand(f'free {f} link {n}', n, r, f, chain=f)

    def _matched(self, rounds):
        used = {}
        for demand in self.demands(rounds):
            v = demand.exponent
            while not _available(self.target.term(v), used.get(v, 0)):
                v += 1

            copy = used.get(v, 0)
            used[v] = copy + 1
            yield demand, Assignment(demand.source, demand.exponent, v,
                                     copy, demand.round, demand.chain)

    def assignments(self, rounds: int | None = None):
        return (a for _, a in self._matched(rounds))

    def take(self, k: int) -> list[Assignment]:
        return list(itertools.islice(self.assignments(), k))

    def finite_factors(self, level: int, cap: int) -> list[FiniteFactor]:
        """
        The assignments of the first ``level`` rounds whose source copy is
        below ``cap``, as cyclic summands in non-increasing exponent order.
        """
        factors, chains = [], {}
        for demand, a in self._matched(level):
            if demand.copy >= cap:
                continue

            if a.chain is None:
                factors.append(FiniteFactor(a.u, (a,)))
            else:
                chains.setdefault(a.chain, []).append(a)

        factors.extend(FiniteFactor(max(a.u for a in links), tuple(links))
                       for links in chains.values())

        return sorted(factors, key=lambda f: -f.exponent)

    def finite_map(self, level: int | None = None,
                   cap: int | None = None) -> Homomorphism:
        """
        The witness at finite scale. The codomain is the sub-product of the
        target layer spanned by the factors the links use, ordered by
        decreasing exponent; each finite factor generator goes to
        Σ p^(v-u)·g over its links.
        """
        settings = Configuration.get_config().materialization
        level = settings.level if level is None else level
        cap = settings.cap if cap is None else cap

        factors = self.finite_factors(level, cap)
        used = sorted({(a.v, a.copy) for f in factors for a in f.links},
                      key=lambda key: (-key[0], key[1]))
        index = {key: j for j, key in enumerate(used)}

        p = self.target.prime
        images = []
        for factor in factors:
            coords = [0] * len(used)
            for a in factor.links:
                coords[index[a.v, a.copy]] += p ** (a.v - a.u)
            images.append(tuple(coords))

        domain = FiniteAbelianPGroup(p, tuple(f.exponent for f in factors))
        codomain = FiniteAbelianPGroup(p, tuple(v for v, _ in used))

        return Homomorphism(domain, codomain, tuple(images))


@dataclass(frozen=True)
class Embeds:
    witness: EmbeddingWitness

    @property
    def embeds(self):
        return True

    def __str__(self):
        return 'embeds'


@dataclass(frozen=True)
class NotSupported:
    reason: str

    @property
    def embeds(self):
        return None

    def __str__(self):
        return f'not supported: {self.reason}'


def decide_embedding(a: ProPDescriptor, b: ProPDescriptor):
    """Embeds a into the closure of the torsion of b when that is unbounded."""
    if a.prime != b.prime:
        raise DescriptorError(f'Prime mismatch in embedding: {a.prime} and '
                              f'{b.prime}.')

    target = b.first_layer
    if not target.is_unbounded:
        return NotSupported('the closure of the torsion of the target has '
                            'bounded exponent')

    return Embeds(EmbeddingWitness(a, target))
