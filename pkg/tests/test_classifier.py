# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import pytest

from Profinity.Calculus import Torsion
from Profinity.Classifier.Decomposition import (DecompositionVariant,
                                                decompose_infinite_product,
                                                peel_free_part, unpeel)
from Profinity.Classifier.Embedding import (Embeds, NotSupported,
                                            decide_embedding)
from Profinity.Classifier.Isomorphism import (IsoRule, abstractly_isomorphic,
                                              topologically_isomorphic)
from Profinity.Core.Descriptors import (CartesianDescriptor, MultiplicitySeq,
                                        OmegaRun, ProPDescriptor, Tail,
                                        TorsionSequence)
from Profinity.Core.Errors import DecompositionError, DescriptorError
from Profinity.Verification import Generators

U = CartesianDescriptor.full(2)
V = CartesianDescriptor(2, MultiplicitySeq((), Tail.all_aleph0()))
B = CartesianDescriptor.cyclic(2, 2)


def seq(*layers, free=0):
    return ProPDescriptor(2, TorsionSequence.of(*layers), free)


CORPUS = Generators.descriptor_corpus(21, 40)
DECOMPOSABLE = [d for d in Generators.descriptor_corpus(22, 60)
                if not d.torsion_seq.is_empty and not d.first_layer.is_finite]


def test_unbounded_closure_decides_abstract_isomorphism():
    a, b = seq(U), seq(U, B, free=3)

    certificate = abstractly_isomorphic(a, b)
    assert certificate.verdict
    assert certificate.rule is IsoRule.unbounded
    assert certificate.witness is None

    certificate = topologically_isomorphic(a, b)
    assert not certificate.verdict
    assert certificate.witness.invariant == 'free rank'


def test_topological_compares_layers():
    a = ProPDescriptor(2, TorsionSequence((OmegaRun((V,), U),)))
    b = ProPDescriptor(2, TorsionSequence((OmegaRun((), U),)))

    certificate = topologically_isomorphic(a, b)
    assert not certificate.verdict
    assert certificate.witness.invariant == 'layer 0'

    certificate = topologically_isomorphic(a, a)
    assert certificate.verdict
    assert [e.invariant for e in certificate.evidence] == [
        'prime', 'free rank', 'torsion type', 'layer 0',
        'layer 1 (repeating)']


def test_bounded_torsion_is_rigid():
    certificate = abstractly_isomorphic(seq(CartesianDescriptor.cyclic(2, 1)),
                                        seq(B))
    assert not certificate.verdict
    assert certificate.rule is IsoRule.bounded
    assert certificate.witness.invariant == 'layer 0'

    certificate = abstractly_isomorphic(ProPDescriptor.free(2, 1),
                                        ProPDescriptor.free(2, 2))
    assert certificate.rule is IsoRule.bounded
    assert certificate.witness.invariant == 'free rank'


def test_mixed_and_prime_mismatches():
    certificate = abstractly_isomorphic(seq(U), seq(B))
    assert certificate.rule is IsoRule.mixed
    assert certificate.witness.invariant == 'torsion exponent'

    certificate = abstractly_isomorphic(ProPDescriptor.free(2, 1),
                                        ProPDescriptor.free(3, 1))
    assert certificate.rule is IsoRule.prime
    assert not certificate.verdict

    assert topologically_isomorphic(ProPDescriptor.free(2, 1),
                                    ProPDescriptor.free(3, 1)) \
        .witness.invariant == 'prime'


def test_certificate_output():
    certificate = topologically_isomorphic(seq(U), seq(U))

    assert str(certificate).startswith('isomorphic (topological)')
    assert '  torsion type: 1 = 1' in str(certificate)

    data = certificate.to_json()
    assert data['verdict'] is True
    assert data['rule'] == 'topological'
    assert data['evidence'][0] == {'invariant': 'prime', 'left': '2',
                                   'right': '2', 'matched': True}


@pytest.mark.parametrize('a, b', zip(CORPUS, CORPUS[1:] + CORPUS[:1]))
def test_verdict_laws(a, b):
    for decide in (topologically_isomorphic, abstractly_isomorphic):
        assert decide(a, a).verdict
        assert decide(a, b).verdict == decide(b, a).verdict

    if topologically_isomorphic(a, b).verdict:
        assert abstractly_isomorphic(a, b).verdict


@pytest.mark.parametrize('d', [d for d in CORPUS
                               if d.first_layer.is_unbounded])
def test_free_factors_are_absorbed(d):
    d = peel_free_part(d).dual_reduced
    bigger = Torsion.product([d, ProPDescriptor.free(d.prime, 2)])

    assert abstractly_isomorphic(d, bigger).verdict
    assert not topologically_isomorphic(d, bigger).verdict


def test_embedding_of_a_free_factor():
    verdict = decide_embedding(ProPDescriptor.free(2, 1), seq(U))

    assert isinstance(verdict, Embeds)
    assert verdict.embeds is True

    taken = verdict.witness.take(3)
    assert [(a.u, a.v, a.copy) for a in taken] == [(1, 1, 0), (2, 2, 0),
                                                   (3, 3, 0)]
    assert str(taken[0]) == 'free 0 link 1: C_p^1 -> copy 0 of C_p^1'


def test_embedding_finite_source_uses_distinct_factors():
    verdict = decide_embedding(seq(CartesianDescriptor.cyclic(2, 1, 2)),
                               seq(U))

    assignments = verdict.witness.take(8)
    assert [a.u for a in assignments] == [1, 1]
    assert [a.v for a in assignments] == [1, 2]


def test_embedding_infinite_source_keeps_producing():
    source = seq(CartesianDescriptor(2, MultiplicitySeq(('aleph0',))))
    assignments = decide_embedding(source, seq(U)).witness.take(3)

    assert [a.v for a in assignments] == [1, 2, 3]


@pytest.mark.parametrize('source', [
    ProPDescriptor.free(2, 1),
    seq(CartesianDescriptor.cyclic(2, 1, 2)),
    seq(U, B, free=1)])
def test_embedding_finite_maps_are_injective(source):
    witness = decide_embedding(source, seq(U)).witness

    for level in (1, 2, 3):
        assert witness.finite_map(level, 2).is_injective


def test_embedding_finite_map_follows_assignments():
    source = seq(CartesianDescriptor(2, MultiplicitySeq((3, 1))))
    witness = decide_embedding(source, seq(U)).witness

    assignments = witness.take(10)
    assert [(a.u, a.v, a.copy) for a in assignments] == [
        (1, 1, 0), (1, 2, 0), (2, 3, 0), (1, 4, 0)]

    factors = witness.finite_factors(4, 4)
    assert sorted(a for f in factors for a in f.links) == sorted(assignments)

    shadow = witness.finite_map(4, 4)
    assert shadow.domain.exponents == (2, 1, 1, 1)
    assert shadow.codomain.exponents == (4, 3, 2, 1)
    assert [g.coords for g in shadow.images] == [
        (0, 2, 0, 0), (0, 0, 0, 1), (0, 0, 2, 0), (8, 0, 0, 0)]
    assert shadow.is_injective


def test_embedding_free_chain_is_diagonal():
    witness = decide_embedding(ProPDescriptor.free(2, 1), seq(U)).witness
    shadow = witness.finite_map(3, 1)

    assert [f.exponent for f in witness.finite_factors(3, 1)] == [3]
    assert shadow.codomain.exponents == (3, 2, 1)
    assert shadow.images[0].coords == (1, 1, 1)
    assert shadow.is_injective


def test_embedding_finite_map_respects_cap():
    source = seq(CartesianDescriptor(2, MultiplicitySeq((3,))), free=2)
    witness = decide_embedding(source, seq(U)).witness

    factors = witness.finite_factors(3, 1)

    assert [f.exponent for f in factors] == [3, 1]
    assert [a.chain for a in factors[0].links] == [0, 0, 0]
    assert witness.finite_map(3, 1).is_injective


def test_embedding_outside_supported_cases():
    verdict = decide_embedding(seq(U), seq(B))

    assert isinstance(verdict, NotSupported)
    assert verdict.embeds is None
    assert str(verdict).startswith('not supported')

    with pytest.raises(DescriptorError):
        decide_embedding(ProPDescriptor.free(2, 1), ProPDescriptor.free(3, 1))


def test_decomposition_of_full_layer():
    family = decompose_infinite_product(seq(U))

    assert family.factor(0) == seq(CartesianDescriptor(
        2, MultiplicitySeq((), Tail.periodic((1, 0)))))
    assert family.factor(1) == seq(CartesianDescriptor(
        2, MultiplicitySeq((), Tail.periodic((0, 1, 0, 0)))))
    assert family.residual(1) == seq(CartesianDescriptor(
        2, MultiplicitySeq((), Tail.periodic((0, 1)))))
    assert family.recombine(2) == seq(U)


def test_decomposition_with_cyclic_tops():
    family = decompose_infinite_product(seq(U), 'cyclic tops')

    assert [k.first_layer.cyclic_exponent for k in family.take(3)] == \
        [1, 2, 3]
    assert family.recombine(3) == seq(U)


def test_decomposition_of_bounded_aleph_layer():
    layer = CartesianDescriptor(2, MultiplicitySeq(('aleph0',)))
    family = decompose_infinite_product(seq(layer))

    assert family.take(3) == [seq(layer)] * 3
    assert family.recombine(2) == seq(layer)


def test_decomposition_keeps_free_rank_on_first_factor():
    family = decompose_infinite_product(seq(U, B, free=2),
                                        DecompositionVariant.standard)

    assert family.factor(0).free_rank == 2
    assert family.factor(1).free_rank == 0
    assert family.factor(0).torsion_seq.last_entry() == B
    assert family.recombine(3) == seq(U, B, free=2)


@pytest.mark.parametrize('d', [ProPDescriptor.free(2, 3), seq(B)])
def test_decomposition_rejects(d):
    with pytest.raises(DecompositionError, match='not decomposable'):
        decompose_infinite_product(d)


@pytest.mark.parametrize('d', DECOMPOSABLE)
@pytest.mark.parametrize('variant', ['standard', 'cyclic tops'])
def test_decomposition_recombines(d, variant):
    family = decompose_infinite_product(d, variant)

    assert not any(k.is_trivial for k in family.take(3))
    for k in range(4):
        assert family.recombine(k) == d


@pytest.mark.parametrize('d', CORPUS)
def test_peel_free_part(d):
    peeled = peel_free_part(d)

    assert peeled.dual_reduced.free_rank == 0
    assert peeled.free_rank == d.free_rank
    assert unpeel(peeled) == d
