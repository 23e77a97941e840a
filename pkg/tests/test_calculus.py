# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import pytest

from Profinity.Calculus import Duality, Torsion
from Profinity.Core import Schema
from Profinity.Core.Descriptors import (CartesianDescriptor, FiniteRun,
                                        MultiplicitySeq, OmegaRun,
                                        ProPDescriptor, Tail, TorsionSequence)
from Profinity.Core.Errors import DescriptorError
from Profinity.Core.Ordinals import OMEGA, OrdinalCNF
from Profinity.Verification import Generators

U = CartesianDescriptor.full(2)
V = CartesianDescriptor(2, MultiplicitySeq((), Tail.all_aleph0()))
B = CartesianDescriptor.cyclic(2, 2)

D = ProPDescriptor(2, TorsionSequence((OmegaRun((V,), U), FiniteRun((B,)))),
                   1)

CORPUS = Generators.descriptor_corpus(5, 30, p=2)


def test_series_inside_the_first_block():
    layer, remainder = Torsion.torsion_series_data(D, OrdinalCNF())

    assert layer == V
    assert remainder == D

    layer, remainder = Torsion.torsion_series_data(D, 3)

    assert layer == U
    assert remainder.torsion_seq == TorsionSequence(
        (OmegaRun((), U), FiniteRun((B,))))
    assert remainder.free_rank == 1


def test_series_past_the_first_block():
    layer, remainder = Torsion.torsion_series_data(D, OMEGA)

    assert layer == B
    assert remainder == ProPDescriptor(2, TorsionSequence.of(B), 1)


def test_series_at_the_torsion_type():
    layer, remainder = Torsion.torsion_series_data(D, D.torsion_type)

    assert layer.is_trivial
    assert remainder == ProPDescriptor.free(2, 1)


def test_series_rejects_large_indices():
    with pytest.raises(DescriptorError, match='index exceeds torsion type'):
        Torsion.torsion_series_data(D, OrdinalCNF.omega_poly(1, 2))


def test_closure_of_torsion():
    assert Torsion.closure_of_torsion(D) == V
    assert Torsion.closure_of_torsion(ProPDescriptor.free(2, 3)).is_trivial
    assert str(Torsion.torsion_type(D)) == 'w+1'


def test_product_example():
    a = ProPDescriptor(2, TorsionSequence.of(U))
    b = ProPDescriptor(2, TorsionSequence.of(U, B), 2)

    assert Torsion.product([a, b]) == ProPDescriptor(
        2, TorsionSequence.of(CartesianDescriptor.full(2, 2), B), 2)


def test_product_mixes_blocks():
    a = ProPDescriptor(2, TorsionSequence.of(U, B))
    b = ProPDescriptor(2, TorsionSequence((OmegaRun((), U),)))

    result = Torsion.product([a, b])

    assert result.torsion_type == OMEGA
    assert result.torsion_seq.entry_at(OrdinalCNF.of(1)) == U.product(B)
    assert result.torsion_seq.entry_at(OrdinalCNF.of(5)) == U


def test_product_rejects():
    with pytest.raises(DescriptorError, match='Prime mismatch'):
        Torsion.product([ProPDescriptor.free(2, 1),
                         ProPDescriptor.free(3, 1)])

    with pytest.raises(DescriptorError):
        Torsion.product([])


@pytest.mark.parametrize('a, b', zip(CORPUS, CORPUS[1:]))
def test_product_commutes(a, b):
    assert Torsion.product([a, b]) == Torsion.product([b, a])


@pytest.mark.parametrize('a, b, c', zip(CORPUS, CORPUS[1:], CORPUS[2:]))
def test_product_associates(a, b, c):
    assert Torsion.product([Torsion.product([a, b]), c]) == \
        Torsion.product([a, b, c])


@pytest.mark.parametrize('d', CORPUS)
def test_trivial_is_neutral(d):
    assert Torsion.product([d, ProPDescriptor.trivial(2)]) == d


@pytest.mark.parametrize('d', Generators.descriptor_corpus(6, 30))
def test_duality_round_trip(d):
    e = Duality.dual(d)

    assert e.divisible_rank == d.free_rank
    assert e.ulm_seq == d.torsion_seq
    assert Duality.dual_discrete(e) == d
    assert Schema.discrete_from_json(Schema.discrete_to_json(e)) == e
