# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from Profinity.Core.Descriptors import (CartesianDescriptor,
                                        DiscreteDescriptor, FiniteRun,
                                        MultiplicitySeq, ProPDescriptor,
                                        TailKind, TorsionSequence)


def _counts(values):
    return '[' + ', '.join(str(c) for c in values) + ']'


def layer_text(layer: CartesianDescriptor) -> str:
    p = layer.prime
    mults = layer.mults.normalize()

    if mults == MultiplicitySeq.all_of(1):
        return f'prod(C({p}, i) for i in N)'

    if mults.bounded_exponent and mults.exponent:
        nonzero = [i for i in range(1, mults.exponent + 1) if mults.term(i)]
        if len(nonzero) == 1:
            i = nonzero[0]
            count = mults.term(i)
            power = '' if count == 1 else f'^{count}'
            return f'C({p}, {i}){power}'

    match mults.tail.kind:
        case TailKind.periodic:
            tail = _counts(mults.tail.pattern)
        case kind:
            tail = kind.value

    return f'L({p}, {_counts(mults.prefix)}, {tail})'


def sequence_text(seq: TorsionSequence) -> str:
    items = []
    for segment in seq.segments:
        if isinstance(segment, FiniteRun):
            items.extend(layer_text(e) for e in segment.entries)
        else:
            items.extend(layer_text(e) for e in segment.prefix)
            items.append(f'repeat({layer_text(segment.repeating)})')

    return 'seq[' + ', '.join(items) + ']'


def descriptor_text(d: ProPDescriptor) -> str:
    """Canonical text; reading it back gives ``d`` again."""
    parts = []
    if not d.torsion_seq.is_empty:
        parts.append(sequence_text(d.torsion_seq))

    if not d.free_rank.is_zero:
        power = '' if d.free_rank == 1 else f'^{d.free_rank}'
        parts.append(f'Zp({d.prime}){power}')

    return ' * '.join(parts) if parts else f'trivial({d.prime})'


def discrete_text(e: DiscreteDescriptor) -> str:
    ulm = sequence_text(e.ulm_seq) if not e.ulm_seq.is_empty else 'seq[]'

    return (f'discrete(p={e.prime}): ulm layers {ulm}; divisible rank '
            f'{e.divisible_rank}')
