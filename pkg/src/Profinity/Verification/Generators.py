# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

"""Seeded random corpora for the verification suites and the tests."""

import numpy as np

from Profinity.Core import Cardinals
from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Descriptors import (CartesianDescriptor, FiniteRun,
                                        MultiplicitySeq, OmegaRun,
                                        ProPDescriptor, Tail, TorsionSequence)

PRIMES = (2, 3)

FREE_RANKS = (CardinalCount(0), CardinalCount(1), CardinalCount(2),
              CardinalCount(3), Cardinals.ALEPH0)

# Descriptor language words plus literals at and past the input limits
FUZZ_WORDS = ('seq', '[', ']', 'C', '(', ')', ',', '*', '^', '=', ';', 'Zp',
              'L', 'prod', 'for', 'i', 'in', 'N', 'repeat', 'let', 'trivial',
              'aleph0', 'zero', 'u', '#', '\n', '0', '1', '2', '3', '4', '12',
              '4096', '4097', '99999999999')

# Torsion types of generated sequences: 1, 2, 3, ω, ω+1, ω+2
SHAPES = ('b', 'ub', 'uub', 'r', 'rb', 'rub', 'ru', 'uu', 'rc', 'uc')


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_count(rng, high=3, aleph0=0.15) -> CardinalCount:
    if rng.random() < aleph0:
        return Cardinals.ALEPH0

    return CardinalCount(int(rng.integers(0, high + 1)))


def random_matrix(rng, max_size=6, bound=50):
    rows = int(rng.integers(1, max_size + 1))
    cols = int(rng.integers(1, max_size + 1))

    return [[int(x) for x in row]
            for row in rng.integers(-bound, bound + 1, size=(rows, cols))]


def cyclic_layer(rng, p) -> CartesianDescriptor:
    return CartesianDescriptor.cyclic(p, int(rng.integers(1, 4)))


def bounded_layer(rng, p) -> CartesianDescriptor:
    """A non-trivial layer of bounded exponent, finite or not."""
    length = int(rng.integers(1, 4))
    prefix = [random_count(rng) for _ in range(length - 1)]
    last = random_count(rng)
    if last.is_zero:
        last = CardinalCount(1)

    return CartesianDescriptor(p, MultiplicitySeq(tuple(prefix) + (last,)))


def unbounded_layer(rng, p) -> CartesianDescriptor:
    match int(rng.integers(0, 4)):
        case 0:
            return CartesianDescriptor.full(p, int(rng.integers(1, 3)))
        case 1:
            return CartesianDescriptor(p, MultiplicitySeq((),
                                                          Tail.all_aleph0()))
        case _:
            prefix = tuple(random_count(rng) for _ in
                           range(int(rng.integers(0, 3))))
            pattern = [random_count(rng, aleph0=0.0)
                       for _ in range(int(rng.integers(1, 4)))]
            if all(c.is_zero for c in pattern):
                pattern[-1] = CardinalCount(1)

            return CartesianDescriptor(p, MultiplicitySeq(
                prefix, Tail.periodic(pattern)))


def random_sequence(rng, p, shape=None) -> TorsionSequence:
    """
    A valid torsion sequence. Shapes read left to right: ``u`` unbounded,
    ``b`` bounded, ``c`` cyclic, ``r`` an ω-run of unbounded layers.
    """
    shape = SHAPES[int(rng.integers(0, len(SHAPES)))] if shape is None \
        else shape

    segments, pending = [], []
    for symbol in shape:
        match symbol:
            case 'u':
                pending.append(unbounded_layer(rng, p))
            case 'b':
                pending.append(bounded_layer(rng, p))
            case 'c':
                pending.append(cyclic_layer(rng, p))
            case 'r':
                prefix = tuple(unbounded_layer(rng, p) for _ in
                               range(int(rng.integers(0, 2))))
                segments.append(OmegaRun(tuple(pending) + prefix,
                                         unbounded_layer(rng, p)))
                pending = []
            case _:
                raise RuntimeError(f'Unknown shape symbol: {symbol}')

    if pending:
        segments.append(FiniteRun(tuple(pending)))

    return TorsionSequence(tuple(segments))


def random_descriptor(rng, p=None, empty=0.1) -> ProPDescriptor:
    p = PRIMES[int(rng.integers(0, len(PRIMES)))] if p is None else p

    seq = TorsionSequence()
    if rng.random() >= empty:
        seq = random_sequence(rng, p)

    free = FREE_RANKS[int(rng.integers(0, len(FREE_RANKS)))]

    return ProPDescriptor(p, seq, free)


def descriptor_corpus(seed, size, p=None) -> list[ProPDescriptor]:
    rng = rng_for(seed)

    return [random_descriptor(rng, p) for _ in range(size)]


def sequence_corpus(seed, size, p=None) -> list[TorsionSequence]:
    """Sequences cycling through every shape so each case is covered."""
    rng = rng_for(seed)
    sequences = []
    for n in range(size):
        prime = PRIMES[n % len(PRIMES)] if p is None else p
        sequences.append(random_sequence(rng, prime, SHAPES[n % len(SHAPES)]))

    return sequences


def random_source(rng, max_words=32) -> str | bytes:
    """
    Parser input: mostly runs of descriptor language words, sometimes
    printable noise or raw bytes.
    """
    size = int(rng.integers(0, max_words + 1))

    match int(rng.integers(0, 8)):
        case 0:
            return bytes(int(b) for b in rng.integers(0, 256, size=size))
        case 1:
            return ''.join(chr(int(c)) for c in rng.integers(32, 127,
                                                             size=size))
        case _:
            words = [FUZZ_WORDS[int(j)]
                     for j in rng.integers(0, len(FUZZ_WORDS), size=size)]
            return ('', ' ')[int(rng.integers(0, 2))].join(words)
