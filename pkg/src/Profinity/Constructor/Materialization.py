# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import logging
from dataclasses import dataclass, field

from Profinity.Constructor.Construction import construct
from Profinity.Constructor.Trees import (Extension, Leaf, PresentationTree,
                                         Product)
from Profinity.Core import Configuration
from Profinity.Core.Descriptors import ProPDescriptor
from Profinity.Core.Errors import FiniteGroupError, OracleSizeError
from Profinity.Finite.AbelianGroups import (FiniteAbelianPGroup, GroupElement,
                                            PresentedGroup,
                                            RelationPresentation,
                                            group_from_presentation,
                                            quotient, power_subgroup,
                                            torsion_bracket)

logger = logging.getLogger(__name__)


@dataclass
class Presentation:
    """
    Generators with integer relations; ``tops`` are the generator
    combinations an enclosing extension uses for its diagonal.
    """
    prime: int
    labels: list[str] = field(default_factory=list)
    relations: list[dict[int, int]] = field(default_factory=list)
    tops: list[dict[int, int]] = field(default_factory=list)

    def add_generator(self, label):
        limit = Configuration.get_config().oracle.max_generators
        if len(self.labels) >= limit:
            raise OracleSizeError(len(self.labels) + 1, limit)

        self.labels.append(label)

        return len(self.labels) - 1

    def absorb(self, other, prefix):
        """Append another presentation's generators and relations."""
        shift = len(self.labels)
        for label in other.labels:
            self.add_generator(prefix + label)

        self.relations.extend({j + shift: c for j, c in row.items()}
                              for row in other.relations)

        return [{j + shift: c for j, c in top.items()} for top in other.tops]

    def matrix(self):
        rows = []
        for relation in self.relations:
            row = [0] * len(self.labels)
            for j, c in relation.items():
                row[j] += c
            rows.append(row)

        return rows

    def to_relations(self):
        return RelationPresentation(self.matrix(), len(self.labels),
                                    self.labels)


@dataclass
class MaterializedGroup:
    presented: PresentedGroup
    presentation: Presentation

    @property
    def group(self) -> FiniteAbelianPGroup:
        return self.presented.group

    @property
    def labels(self):
        return self.presentation.labels

    def generator(self, label) -> GroupElement:
        return self.presented.generator_image(self.labels.index(label))

    def element(self, vector) -> GroupElement:
        """Image of Σ vector[j]·g_j; ``vector`` may be a sparse dict."""
        if isinstance(vector, dict):
            dense = [0] * len(self.labels)
            for j, c in vector.items():
                dense[j] += c
            vector = dense

        return self.presented.image(vector)

    def generator_images(self, count=None):
        count = len(self.labels) if count is None else count

        return [self.presented.generator_image(j) for j in range(count)]


def _leaf(tree: Leaf, level, cap) -> Presentation:
    p = tree.prime
    out = Presentation(p)

    for i in range(1, level + 1):
        for c in range(tree.layer.term(i).capped(cap)):
            j = out.add_generator(f'c{i}.{c}')
            out.relations.append({j: p ** i})
            out.tops.append({j: 1})

    return out


def _build(tree: PresentationTree, level, cap) -> Presentation:
    match tree:
        case Leaf():
            return _leaf(tree, level, cap)

        case Product():
            out = Presentation(tree.prime)
            count = level if tree.is_omega else None
            for n, child in enumerate(tree.children(count)):
                out.tops.extend(out.absorb(_build(child, level, cap),
                                           f'{n}/'))
            return out

        case Extension():
            p = tree.prime
            out = Presentation(p)
            tops = out.absorb(_build(tree.child, level, cap), '')

            x = out.add_generator('x' + str(len(out.labels)))
            relation = {x: p ** tree.r}
            for k, top in enumerate(tops):
                u = tree.diagonal.residue(k)
                for j, c in top.items():
                    relation[j] = relation.get(j, 0) - u * c

            out.relations.append(relation)
            out.tops = [{x: 1}]
            return out

        case _:
            raise RuntimeError(f'Unknown tree node: {tree!r}')


def presentation(tree: PresentationTree, level: int, cap: int) -> Presentation:
    if level < 1 or cap < 1:
        raise FiniteGroupError(f'Materialization needs level and cap of at '
                               f'least 1, got level {level}, cap {cap}.')

    return _build(tree, level, cap)


def materialize(tree: PresentationTree, level: int | None = None,
                cap: int | None = None) -> MaterializedGroup:
    settings = Configuration.get_config().materialization
    level = settings.level if level is None else level
    cap = settings.cap if cap is None else cap

    built = presentation(tree, level, cap)
    logger.debug('materialize: %d generators, %d relations at level %d, '
                 'cap %d', len(built.labels), len(built.relations), level,
                 cap)

    prime = tree.prime
    if prime is None:
        raise FiniteGroupError('Cannot materialize an empty product without '
                               'a prime.')

    return MaterializedGroup(group_from_presentation(built.to_relations(),
                                                     prime), built)


def materialize_descriptor(d: ProPDescriptor, level: int | None = None,
                           cap: int | None = None) -> FiniteAbelianPGroup:
    """
    The dual-reduced part materialized, plus one C_{p^level} per unit of
    free rank, at most ``cap`` of them.
    """
    settings = Configuration.get_config().materialization
    level = settings.level if level is None else level
    cap = settings.cap if cap is None else cap

    group = materialize(construct(d.torsion_seq, prime=d.prime), level,
                        cap).group

    free = [level] * d.free_rank.capped(cap)

    return group.direct_sum(FiniteAbelianPGroup(d.prime, tuple(free)))


def child_quotient(tree: Extension, level: int, cap: int):
    """G / image(H) for an extension node, materialized."""
    built = materialize(tree, level, cap)
    child_size = len(presentation(tree.child, level, cap).labels)

    return quotient(built.group, built.generator_images(child_size))


def extension_delta(tree: Extension, level: int, cap: int):
    """The child's materialization H and the truncated diagonal δ ∈ H."""
    child = materialize(tree.child, level, cap)

    delta = {}
    for k, top in enumerate(child.presentation.tops):
        u = tree.diagonal.residue(k)
        for j, c in top.items():
            delta[j] = delta.get(j, 0) + u * c

    return child.group, child.element(delta)


def delta_condition_holds(group: FiniteAbelianPGroup, delta: GroupElement,
                          level: int) -> bool:
    """δ ∉ pH + H[p^{level-1}]."""
    p = group.prime
    forbidden = power_subgroup(group, p).join(torsion_bracket(group,
                                                              p ** (level - 1)))

    return not forbidden.contains(delta)


def check_delta_condition(tree: Extension, level: int,
                          cap: int | None = None) -> bool:
    if not isinstance(tree, Extension):
        raise FiniteGroupError('The delta condition applies to extension '
                               'nodes only.')

    if level < 2:
        raise FiniteGroupError(f'The delta condition needs level at least 2, '
                               f'got {level}.')

    cap = Configuration.get_config().materialization.cap if cap is None \
        else cap
    group, delta = extension_delta(tree, level, cap)

    return delta_condition_holds(group, delta, level)
