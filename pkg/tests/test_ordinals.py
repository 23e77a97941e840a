# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import pytest
from hypothesis import given
from hypothesis import strategies as st

from Profinity.Core import Cardinals
from Profinity.Core.Cardinals import CardinalCount
from Profinity.Core.Errors import DescriptorError, OrdinalError
from Profinity.Core.Ordinals import (OMEGA, Comparison, OrdinalCNF,
                                     ord_compare, ord_is_limit,
                                     ord_successor)


def _ordinal(coefficients):
    return OrdinalCNF(tuple((e, c) for e, c in zip((2, 1, 0), coefficients)
                            if c))


ordinals = st.tuples(st.integers(0, 3), st.integers(0, 3),
                     st.integers(0, 3)).map(_ordinal)


def test_parse_and_print():
    alpha = OrdinalCNF.parse('w^2*3+w*1+4')

    assert alpha.terms == ((2, 3), (1, 1), (0, 4))
    assert str(alpha) == 'w^2*3+w+4'
    assert OrdinalCNF.parse('ω+2') == OrdinalCNF.omega_poly(1, 2)
    assert OrdinalCNF.parse('w + w') == OrdinalCNF.omega_poly(2)
    assert str(OrdinalCNF()) == '0'


def test_parse_absorbs_finite_terms():
    assert OrdinalCNF.parse('1+w') == OMEGA
    assert OrdinalCNF.parse('w+w^2') == OrdinalCNF.parse('w^2')


@pytest.mark.parametrize('text', ['', 'w^', 'x+1', 'w*-1', '2w'])
def test_parse_rejects(text):
    with pytest.raises(OrdinalError):
        OrdinalCNF.parse(text)


def test_invalid_normal_form():
    with pytest.raises(OrdinalError):
        OrdinalCNF(((0, 1), (1, 1)))

    with pytest.raises(OrdinalError):
        OrdinalCNF(((1, 0),))


def test_ordering():
    assert OrdinalCNF.of(5) < OMEGA
    assert OMEGA < OrdinalCNF.omega_poly(1, 1)
    assert OrdinalCNF.omega_poly(3) < OrdinalCNF.parse('w^2')
    assert ord_compare(OMEGA, OMEGA) is Comparison.EQ
    assert ord_compare(OMEGA, OrdinalCNF.of(7)) is Comparison.GT
    assert OrdinalCNF.of(3) == 3


def test_limits_and_successors():
    assert ord_is_limit(OMEGA)
    assert ord_successor(OMEGA) == OrdinalCNF.omega_poly(1, 1)
    assert OrdinalCNF.parse('w^2+w').is_limit
    assert OrdinalCNF.omega_poly(1, 2).is_successor
    assert not OrdinalCNF().is_limit
    assert OrdinalCNF.omega_poly(1, 2).predecessor() == \
        OrdinalCNF.omega_poly(1, 1)

    with pytest.raises(OrdinalError):
        OMEGA.predecessor()


def test_fundamental_sequences():
    def first(alpha, n=3):
        sequence = alpha.fundamental_sequence()
        return [next(sequence) for _ in range(n)]

    assert first(OMEGA) == [1, 2, 3]
    assert first(OrdinalCNF.omega_poly(2)) == [OrdinalCNF.omega_poly(1, n)
                                               for n in (1, 2, 3)]
    assert first(OrdinalCNF.parse('w^2')) == [OrdinalCNF.omega_poly(n)
                                              for n in (1, 2, 3)]

    with pytest.raises(OrdinalError, match='not a limit ordinal'):
        next(OrdinalCNF.of(3).fundamental_sequence())


def test_omega_split():
    assert OrdinalCNF.parse('w*3+2').omega_split() == (3, 2)
    assert OrdinalCNF.of(4).omega_split() == (0, 4)

    with pytest.raises(OrdinalError):
        OrdinalCNF.parse('w^2').omega_split()


@given(ordinals, ordinals, ordinals)
def test_addition_is_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(ordinals, ordinals)
def test_left_subtraction_inverts_addition(a, b):
    assert (a + b).subtract_left(a) == b
    assert a <= a + b


@given(ordinals, ordinals)
def test_trichotomy(a, b):
    assert [a < b, a == b, b < a].count(True) == 1


@given(ordinals)
def test_successor_predecessor(a):
    assert a.successor().predecessor() == a
    assert OrdinalCNF.parse(str(a)) == a


def test_cardinal_arithmetic():
    assert CardinalCount(2) + Cardinals.ALEPH0 == Cardinals.ALEPH0
    assert CardinalCount(3) - 1 == 2
    assert (Cardinals.ALEPH0 - 5).is_aleph0
    assert CardinalCount(10 ** 6) < Cardinals.ALEPH0
    assert sorted([Cardinals.ALEPH0, CardinalCount(2), Cardinals.ZERO]) == \
        [Cardinals.ZERO, CardinalCount(2), Cardinals.ALEPH0]
    assert Cardinals.ALEPH0.capped(3) == 3
    assert CardinalCount(2).capped(5) == 2
    assert not Cardinals.ZERO


@pytest.mark.parametrize('value', [-1, True, 1.5, 'many'])
def test_cardinal_rejects(value):
    with pytest.raises(DescriptorError):
        CardinalCount.coerce(value)


def test_cardinal_subtraction_limits():
    with pytest.raises(DescriptorError):
        CardinalCount(1) - 2

    with pytest.raises(DescriptorError):
        CardinalCount(1) - Cardinals.ALEPH0


@pytest.mark.parametrize('count', [CardinalCount(0), CardinalCount(7),
                                   Cardinals.ALEPH0])
def test_cardinal_json(count):
    assert CardinalCount.from_json(count.to_json()) == count


def test_cardinal_aliases():
    assert CardinalCount.coerce('aleph0').is_aleph0
    assert CardinalCount.coerce('ℵ0').is_aleph0

    with pytest.raises(DescriptorError):
        CardinalCount.from_json({'fin': 1, 'extra': 2})
