# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import logging

from Profinity.Calculus.Torsion import termwise_product
from Profinity.Constructor.Splits import FamilyRule
from Profinity.Constructor.Trees import (ConstructionCase, DiagonalSpec,
                                         Extension, Leaf, OmegaFamily,
                                         PresentationTree, Product)
from Profinity.Core import Configuration
from Profinity.Core.Descriptors import (CartesianDescriptor, TorsionSequence,
                                        validate)
from Profinity.Core.Errors import ConstructionError, InvalidSequenceError
from Profinity.Core.Ordinals import OrdinalCNF

logger = logging.getLogger(__name__)


def construct(seq: TorsionSequence,
              diagonal: DiagonalSpec | None = None,
              prime: int | None = None) -> PresentationTree:
    """
    Build a presentation tree whose group has the torsion sequence ``seq``.
    ``diagonal`` applies to the outermost extension only. ``prime`` is kept
    on the trivial tree, whose sequence carries none.
    """
    report = validate(seq)
    if not report.valid:
        raise InvalidSequenceError(report)

    diagonal = diagonal or DiagonalSpec()
    kind = seq.order_type

    if kind.is_zero:
        logger.debug('construct: trivial sequence')
        return Product((), ConstructionCase.trivial, empty_prime=prime)

    if kind == OrdinalCNF.of(1):
        logger.debug('construct: base case')
        return Leaf(seq.entry_at(OrdinalCNF()))

    if kind.is_limit:
        logger.debug('construct: case III at type %s', kind)
        return Product(OmegaFamily(seq, FamilyRule.limit_split),
                       ConstructionCase.case_iii)

    beta = kind.predecessor()
    top = seq.entry_at(beta)

    match (top.is_cyclic, beta.is_limit):
        case (True, False):
            logger.debug('construct: case I at type %s', kind)
            return Extension(construct(seq.truncate(beta)),
                             top.cyclic_exponent, diagonal,
                             ConstructionCase.case_i)

        case (True, True):
            logger.debug('construct: case IV at type %s', kind)
            inner = Product(OmegaFamily(seq.truncate(beta),
                                        FamilyRule.limit_split_peeled),
                            ConstructionCase.case_iv)
            return Extension(inner, top.cyclic_exponent, diagonal,
                             ConstructionCase.case_iv)

        case (False, False):
            logger.debug('construct: case II at type %s', kind)
            return Product(OmegaFamily(seq, FamilyRule.successor_split),
                           ConstructionCase.case_ii)

        case _:
            logger.debug('construct: case V at type %s', kind)
            return Product(OmegaFamily(seq, FamilyRule.successor_split),
                           ConstructionCase.case_v)


def verify_construction_symbolic(tree: PresentationTree,
                                 samples: int | None = None,
                                 depth: int | None = None) -> TorsionSequence:
    """
    Recompute the torsion sequence of a tree bottom-up. An ω-family checks
    its first ``samples`` children against their assigned sequences and
    reports the termwise product of the sequences its first ``depth``
    children realize with the residual of the rest.
    """
    settings = Configuration.get_config().construction
    samples = settings.family_samples if samples is None else samples
    depth = settings.split_depth if depth is None else depth

    if depth > samples:
        raise ConstructionError(f'Split depth {depth} exceeds family samples '
                                f'{samples}.')

    match tree:
        case Leaf():
            return TorsionSequence.of(tree.layer)

        case Extension():
            child = verify_construction_symbolic(tree.child, samples, depth)
            return child.append(CartesianDescriptor.cyclic(tree.prime,
                                                           tree.r))

        case Product() if tree.is_omega:
            family = tree.family
            realized = []
            for n in range(samples):
                expected = family.child_sequence(n)
                found = verify_construction_symbolic(family.child(n),
                                                     samples, depth)
                if found != expected:
                    raise ConstructionError(f'Child {n} of a {tree.case.value}'
                                            f' product realizes a different '
                                            f'torsion sequence than '
                                            f'assigned.')
                realized.append(found)

            return termwise_product(realized[:depth] +
                                    [family.residual(depth)], tree.prime)

        case Product():
            if not tree.family:
                return TorsionSequence()

            sequences = [verify_construction_symbolic(c, samples, depth)
                         for c in tree.family]
            return termwise_product(sequences, tree.prime)

        case _:
            raise RuntimeError(f'Unknown tree node: {tree!r}')
