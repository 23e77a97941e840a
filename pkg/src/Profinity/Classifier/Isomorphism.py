# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from dataclasses import dataclass
from enum import Enum

from Profinity.Core.Descriptors import FiniteRun, ProPDescriptor
from Profinity.Core.Ordinals import OrdinalCNF
from Profinity.Core.Schema import CertificateModel


class IsoRule(Enum):
    prime = 'prime'
    topological = 'topological'
    unbounded = 'unbounded torsion'
    bounded = 'bounded torsion'
    mixed = 'mixed torsion'


@dataclass(frozen=True)
class Evidence:
    invariant: str
    left: str
    right: str
    matched: bool


@dataclass(frozen=True)
class IsoCertificate:
    """
    A verdict with its evidence: every compared invariant when the verdict
    is true, the single mismatching invariant otherwise.
    """
    verdict: bool
    rule: IsoRule
    evidence: tuple[Evidence, ...]

    @property
    def witness(self) -> Evidence | None:
        if self.verdict:
            return None

        return self.evidence[-1]

    def to_json(self):
        data = {'verdict': self.verdict, 'rule': self.rule.value,
                'evidence': [vars(e) for e in self.evidence]}

        return CertificateModel.model_validate(data).model_dump(mode='json')

    def __str__(self):
        head = 'isomorphic' if self.verdict else 'not isomorphic'
        lines = [f'{head} ({self.rule.value})']
        for e in self.evidence:
            mark = '=' if e.matched else '!='
            lines.append(f'  {e.invariant}: {e.left} {mark} {e.right}')

        return '\n'.join(lines)


def _layer_pairs(a: ProPDescriptor, b: ProPDescriptor):
    """
    Corresponding layers of two sequences of equal torsion type. An ω-block
    is compared up to the longer explicit prefix, then by its repeating
    layer.
    """
    for k, (sa, sb) in enumerate(zip(a.torsion_seq.segments,
                                     b.torsion_seq.segments)):
        if isinstance(sa, FiniteRun):
            for m, (la, lb) in enumerate(zip(sa.entries, sb.entries)):
                yield f'layer {OrdinalCNF.omega_poly(k, m)}', la, lb
            continue

        width = max(len(sa.prefix), len(sb.prefix))
        for m in range(width):
            yield (f'layer {OrdinalCNF.omega_poly(k, m)}', sa.entry(m),
                   sb.entry(m))

        position = OrdinalCNF.omega_poly(k, width)
        yield (f'layer {position} (repeating)', sa.repeating, sb.repeating)


def _topological_invariants(a: ProPDescriptor, b: ProPDescriptor):
    yield 'prime', a.prime, b.prime
    yield 'free rank', a.free_rank, b.free_rank
    yield 'torsion type', a.torsion_type, b.torsion_type
    yield from _layer_pairs(a, b)


def _certify(invariants, rule: IsoRule) -> IsoCertificate:
    evidence = []
    for name, left, right in invariants:
        matched = left == right
        item = Evidence(name, str(left), str(right), matched)

        if not matched:
            return IsoCertificate(False, rule, (item,))

        evidence.append(item)

    return IsoCertificate(True, rule, tuple(evidence))


def topologically_isomorphic(a: ProPDescriptor,
                             b: ProPDescriptor) -> IsoCertificate:
    """Equal free rank, torsion type and layers, position by position."""
    return _certify(_topological_invariants(a, b), IsoRule.topological)


def abstractly_isomorphic(a: ProPDescriptor,
                          b: ProPDescriptor) -> IsoCertificate:
    """
    With unbounded torsion only the closure of the torsion subgroup
    matters; with bounded torsion abstract and topological isomorphism
    coincide.
    """
    if a.prime != b.prime:
        return _certify([('prime', a.prime, b.prime)], IsoRule.prime)

    la, lb = a.first_layer, b.first_layer

    match (la.is_unbounded, lb.is_unbounded):
        case (True, True):
            return _certify([('prime', a.prime, b.prime),
                             ('closure of torsion', la, lb)],
                            IsoRule.unbounded)

        case (False, False):
            return _certify(_topological_invariants(a, b), IsoRule.bounded)

        case _:
            def exponent(layer):
                return 'unbounded' if layer.is_unbounded else 'bounded'

            return _certify([('torsion exponent', exponent(la),
                              exponent(lb))], IsoRule.mixed)
