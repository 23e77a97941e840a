# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import functools
from typing import NamedTuple

from Profinity.Core import Cardinals
from Profinity.Core.Descriptors import (CartesianDescriptor, FiniteRun,
                                        OmegaRun, ProPDescriptor,
                                        TorsionSequence)
from Profinity.Core.Errors import DescriptorError
from Profinity.Core.Ordinals import OrdinalCNF


class SeriesData(NamedTuple):
    layer: CartesianDescriptor
    remainder: ProPDescriptor


def closure_of_torsion(d: ProPDescriptor) -> CartesianDescriptor:
    """The closure of the torsion subgroup, i.e. the first layer."""
    return d.first_layer


def torsion_type(d: ProPDescriptor) -> OrdinalCNF:
    return d.torsion_type


def torsion_series_data(d: ProPDescriptor, alpha: OrdinalCNF) -> SeriesData:
    """
    The α-th layer and the descriptor of G / T_α(G). At α equal to the
    torsion type the layer is trivial.
    """
    if isinstance(alpha, int):
        alpha = OrdinalCNF.of(alpha)

    kind = d.torsion_type
    if kind < alpha:
        raise DescriptorError(f'index exceeds torsion type: {alpha} > {kind}')

    if alpha == kind:
        return SeriesData(CartesianDescriptor.trivial(d.prime),
                          ProPDescriptor(d.prime, TorsionSequence(),
                                         d.free_rank))

    return SeriesData(d.torsion_seq.entry_at(alpha),
                      ProPDescriptor(d.prime, d.torsion_seq.shift(alpha),
                                     d.free_rank))


def termwise_product(sequences, prime) -> TorsionSequence:
    """
    Positionwise product of torsion sequences; a position past the end of a
    sequence contributes the trivial layer.
    """
    sequences = list(sequences)
    trivial = CartesianDescriptor.trivial(prime)

    for seq in sequences:
        if seq.prime is not None and seq.prime != prime:
            raise DescriptorError(f'Prime mismatch in product: {prime} and '
                                  f'{seq.prime}.')

    blocks = max((len(seq.segments) for seq in sequences), default=0)

    def multiply(entries):
        return functools.reduce(CartesianDescriptor.product, entries, trivial)

    segments = []
    for k in range(blocks):
        present = [seq.segments[k] for seq in sequences
                   if k < len(seq.segments)]
        omegas = [s for s in present if isinstance(s, OmegaRun)]

        length = max(len(s.prefix) if isinstance(s, OmegaRun)
                     else len(s.entries) for s in present)

        entries = []
        for m in range(length):
            entries.append(multiply(e for seq in sequences
                                    if k < len(seq.segments)
                                    and (e := seq.block_entry(k, m))
                                    is not None))

        if omegas:
            segments.append(OmegaRun(tuple(entries),
                                     multiply(s.repeating for s in omegas)))
        else:
            segments.append(FiniteRun(tuple(entries)))

    return TorsionSequence(tuple(segments))


def product(ds) -> ProPDescriptor:
    ds = list(ds)
    if not ds:
        raise DescriptorError('product needs at least one descriptor.')

    prime = ds[0].prime
    for d in ds:
        if d.prime != prime:
            raise DescriptorError(f'Prime mismatch in product: {prime} and '
                                  f'{d.prime}.')

    seq = termwise_product((d.torsion_seq for d in ds), prime)
    free_rank = sum((d.free_rank for d in ds), Cardinals.ZERO)

    return ProPDescriptor(prime, seq, free_rank)
