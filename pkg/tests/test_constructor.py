# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools

import pytest
from pydantic import ValidationError

from Profinity.Constructor.Construction import (construct,
                                                verify_construction_symbolic)
from Profinity.Constructor.Materialization import (check_delta_condition,
                                                   child_quotient,
                                                   materialize,
                                                   materialize_descriptor,
                                                   presentation)
from Profinity.Constructor.Serialization import (tree_from_json, tree_to_json,
                                                 tree_to_text)
from Profinity.Constructor.ShiftMaps import (diagonal_eta, mu_map, phi_map,
                                             theta_truncated)
from Profinity.Constructor.Splits import (AlephSplit, BlockSplit, FactorSplit,
                                          FamilyRule, PeeledSplit, final_split,
                                          split_plan)
from Profinity.Constructor.Trees import (ConstructionCase, DiagonalSpec,
                                         Extension, Leaf, OmegaFamily,
                                         Product, node_count)
from Profinity.Core import Configuration
from Profinity.Core.Configuration import ConfigSchema, OracleSettings
from Profinity.Core.Descriptors import (CartesianDescriptor, FiniteRun,
                                        MultiplicitySeq, OmegaRun,
                                        ProPDescriptor, TorsionSequence)
from Profinity.Core.Errors import (ConstructionError, DecompositionError,
                                   FiniteGroupError, InvalidSequenceError,
                                   OracleSizeError)
from Profinity.Verification import Generators

U = CartesianDescriptor.full(2)
B = CartesianDescriptor.cyclic(2, 2)
OMEGA_U = OmegaRun((), U)


def case_of(seq):
    return construct(seq).case


@pytest.mark.parametrize('seq, case', [
    (TorsionSequence(), ConstructionCase.trivial),
    (TorsionSequence.of(U), ConstructionCase.base),
    (TorsionSequence.of(U, B), ConstructionCase.case_i),
    (TorsionSequence.of(U, U), ConstructionCase.case_ii),
    (TorsionSequence.of(U, CartesianDescriptor.cyclic(2, 1, 2)),
     ConstructionCase.case_ii),
    (TorsionSequence((OMEGA_U,)), ConstructionCase.case_iii),
    (TorsionSequence((OMEGA_U, FiniteRun((B,)))), ConstructionCase.case_iv),
    (TorsionSequence((OMEGA_U, FiniteRun((U,)))), ConstructionCase.case_v),
])
def test_construction_cases(seq, case):
    assert case_of(seq) is case


def test_case_shapes():
    tree = construct(TorsionSequence.of(U, B))
    assert tree == Extension(Leaf(U), 2, DiagonalSpec(),
                             ConstructionCase.case_i)

    tree = construct(TorsionSequence((OMEGA_U, FiniteRun((B,)))))
    assert isinstance(tree, Extension)
    assert tree.child.case is ConstructionCase.case_iv
    assert tree.child.family.rule is FamilyRule.limit_split_peeled
    assert tree.child.family.seq == TorsionSequence((OMEGA_U,))

    tree = construct(TorsionSequence.of(U, B), DiagonalSpec((3,)))
    assert tree.diagonal.residues == (3,)


@pytest.mark.parametrize('seq, skip', [
    (TorsionSequence((OMEGA_U,)), 0),
    (TorsionSequence((OMEGA_U, OMEGA_U)), 0),
    (TorsionSequence((OMEGA_U, FiniteRun((B,)))), 1),
])
def test_limit_families_follow_the_fundamental_sequence(seq, skip):
    tree = construct(seq)
    family = (tree.child if isinstance(tree, Extension) else tree).family

    terms = itertools.islice(
        family.seq.order_type.fundamental_sequence(), skip, None)
    for n, term in zip(range(5), terms):
        assert family.child_sequence(n).order_type == term


def test_construct_rejects_invalid_sequences():
    with pytest.raises(InvalidSequenceError):
        construct(TorsionSequence.of(B, U))


def test_extension_arguments():
    with pytest.raises(ConstructionError):
        Extension(Leaf(U), 0)

    with pytest.raises(ConstructionError, match='not a unit'):
        Extension(Leaf(U), 1, DiagonalSpec((2,)))

    with pytest.raises(ConstructionError):
        DiagonalSpec(())

    assert DiagonalSpec((1, 3)).residue(5) == 3


def test_node_count():
    assert node_count(Leaf(U)) == 1
    assert node_count(construct(TorsionSequence.of(U, B))) == 2
    assert node_count(construct(TorsionSequence.of(U, U))) == 5
    assert node_count(construct(TorsionSequence((OMEGA_U,)))) == 7


@pytest.mark.parametrize('seq', Generators.sequence_corpus(0, 20))
def test_symbolic_verification(seq):
    assert verify_construction_symbolic(construct(seq)) == seq


def test_symbolic_verification_uses_rebuilt_children(monkeypatch):
    built = OmegaFamily.child

    def child(family, n):
        if n >= 2:
            return Leaf(CartesianDescriptor.cyclic(2, 7))
        return built(family, n)

    monkeypatch.setattr(OmegaFamily, 'child', child)

    with pytest.raises(ConstructionError, match='Child 2 of a case'):
        verify_construction_symbolic(construct(TorsionSequence((OMEGA_U,))))


def test_symbolic_verification_samples_every_recombined_child():
    tree = construct(TorsionSequence((OMEGA_U,)))

    assert verify_construction_symbolic(tree, samples=3, depth=2) == \
        TorsionSequence((OMEGA_U,))

    with pytest.raises(ConstructionError, match='exceeds family samples 2'):
        verify_construction_symbolic(tree, samples=2, depth=3)

    with pytest.raises(ValidationError, match='exceeds family samples'):
        ConfigSchema(construction={'family samples': 2, 'split depth': 3})


def test_splits():
    with pytest.raises(DecompositionError, match='bounded exponent'):
        BlockSplit(B)

    assert BlockSplit(U).recombine(3) == U
    assert PeeledSplit(U).part(0) == CartesianDescriptor.cyclic(2, 1)
    assert PeeledSplit(U).recombine(3) == U
    assert FactorSplit(U).recombine(4) == U

    pair = FactorSplit(CartesianDescriptor.cyclic(2, 1, 2))
    assert pair.part(1) == CartesianDescriptor.cyclic(2, 1)
    assert pair.part(2) is None
    assert pair.remainder(2).is_trivial

    with pytest.raises(DecompositionError):
        AlephSplit(B)


def test_final_split_choice():
    aleph = CartesianDescriptor(2, MultiplicitySeq(('aleph0',)))

    assert isinstance(final_split(U), BlockSplit)
    assert isinstance(final_split(aleph), AlephSplit)
    assert isinstance(final_split(B), FactorSplit)


def test_split_plan_rejects():
    with pytest.raises(DecompositionError, match='empty'):
        split_plan(TorsionSequence(), FamilyRule.decomposition)

    with pytest.raises(DecompositionError, match='limit type'):
        split_plan(TorsionSequence.of(U, B), 'limit split')


def test_case_i_materialization():
    tree = construct(TorsionSequence.of(U, B))

    whole = materialize(tree, 3, 1)
    assert whole.group.log_order == 8
    assert materialize(tree.child, 3, 1).group.log_order == 6
    assert whole.labels == ['c1.0', 'c2.0', 'c3.0', 'x3']
    assert child_quotient(tree, 3, 1).exponents == (2,)
    assert check_delta_condition(tree, 3)


def test_small_materializations():
    extension = Extension(Leaf(U), 1)
    assert materialize(extension, 2, 1).group.exponents == (3, 1)

    assert materialize(Leaf(U), 3, 1).group.exponents == (3, 2, 1)
    assert materialize(Product((Leaf(U), Leaf(U))), 2, 1).group.exponents \
        == (2, 2, 1, 1)

    assert check_delta_condition(Extension(Leaf(U), 1), 4)


def test_leaf_materialization():
    assert materialize(Leaf(U), 2, 2).group.exponents == (2, 1)

    built = materialize(Leaf(CartesianDescriptor.full(2, 2)), 2, 2)

    assert built.group.exponents == (2, 2, 1, 1)
    assert built.generator('c2.1').order_exponent() == 2
    assert len(built.generator_images()) == 4


def test_descriptor_materialization():
    d = ProPDescriptor(2, TorsionSequence.of(B), 'aleph0')

    assert materialize_descriptor(d, 3, 2).exponents == (3, 3, 2)
    assert materialize_descriptor(ProPDescriptor.trivial(3), 3, 2) \
        .is_trivial


def test_omega_family_materializes():
    built = materialize(construct(TorsionSequence((OMEGA_U,))), 2, 1)

    assert built.group.prime == 2
    assert not built.group.is_trivial


def test_materialization_limits():
    with pytest.raises(FiniteGroupError):
        presentation(Leaf(U), 0, 1)

    with pytest.raises(FiniteGroupError, match='empty product'):
        materialize(construct(TorsionSequence()), 2, 1)

    with pytest.raises(FiniteGroupError):
        check_delta_condition(Leaf(U), 3)

    with pytest.raises(FiniteGroupError):
        check_delta_condition(construct(TorsionSequence.of(U, B)), 1)

    Configuration.set_config(ConfigSchema(
        oracle=OracleSettings(max_generators=3)))
    with pytest.raises(OracleSizeError):
        materialize(Leaf(U), 4, 1)


def test_trivial_tree_keeps_its_prime():
    tree = construct(TorsionSequence(), prime=3)

    assert tree.prime == 3
    built = materialize(tree, 2, 1)
    assert built.group.is_trivial
    assert built.group.prime == 3

    data = tree_to_json(tree)
    assert data == {'kind': 'product', 'case': 'trivial', 'prime': 3,
                    'children': []}
    assert tree_from_json(data) == tree
    assert materialize(tree_from_json(data), 2, 1).group.is_trivial


@pytest.mark.parametrize('seq', Generators.sequence_corpus(3, 20))
def test_tree_json_roundtrip(seq):
    tree = construct(seq)

    assert tree_from_json(tree_to_json(tree)) == tree


def test_tree_json_rejects():
    with pytest.raises(ConstructionError, match='Invalid tree JSON'):
        tree_from_json({'kind': 'leaf'})

    data = tree_to_json(construct(TorsionSequence.of(U, B)))

    with pytest.raises(ConstructionError):
        tree_from_json({**data, 'diagonal': [2]})

    with pytest.raises(ConstructionError, match='Invalid tree JSON'):
        tree_from_json({**data, 'case': 'case IX'})


def test_tree_text():
    text = tree_to_text(construct(TorsionSequence.of(U, B)))

    assert text == ('extension r=2 diagonal=(1) [case I]\n'
                    '  leaf prod(C(2, i) for i in N)')
    assert tree_to_text(construct(TorsionSequence())) == \
        'product of 0 [trivial]'

    text = tree_to_text(construct(TorsionSequence((OMEGA_U,))))
    assert text.startswith('product over omega by limit split [case III]')
    assert '  child 1: seq[' in text


def test_shift_maps():
    assert phi_map(2, 3, 2).is_surjective
    assert phi_map(2, 3, 2).kernel_order == 2
    assert phi_map(2, 1, 2).image_log_order == 0
    assert mu_map(3, 2, 1).kernel_order == 3

    with pytest.raises(FiniteGroupError):
        mu_map(2, 1, 2)

    with pytest.raises(FiniteGroupError):
        theta_truncated(2, 0)


@pytest.mark.parametrize('p', [2, 3, 5])
@pytest.mark.parametrize('n', [1, 2, 4])
def test_theta_kills_the_diagonal(p, n):
    theta = theta_truncated(p, n)
    eta = diagonal_eta(p, n + 1)

    assert theta.is_surjective
    assert theta.kernel_order == p ** (n + 1)
    assert theta(eta).is_zero
    assert eta.order_exponent() == n + 1
