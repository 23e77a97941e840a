# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from Profinity.Core.Descriptors import DiscreteDescriptor, ProPDescriptor


def dual(d: ProPDescriptor) -> DiscreteDescriptor:
    """
    Pontryagin dual. The α-th Ulm layer of G* is the direct sum dual to the
    α-th torsion layer of G, with the same multiplicities; each Z_p becomes a
    quasicyclic summand.
    """
    return DiscreteDescriptor(d.prime, d.torsion_seq, d.free_rank)


def dual_discrete(e: DiscreteDescriptor) -> ProPDescriptor:
    return ProPDescriptor(e.prime, e.ulm_seq, e.divisible_rank)
