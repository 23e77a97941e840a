# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from dataclasses import dataclass
from functools import total_ordering

from Profinity.Core.Errors import DescriptorError


@total_ordering
@dataclass(frozen=True)
class CardinalCount:
    """
    A count in N ∪ {ℵ0}. ``count`` is None for ℵ0.
    """
    count: int | None

    def __post_init__(self):
        if self.count is not None:
            if not isinstance(self.count, int) or isinstance(self.count, bool):
                raise DescriptorError(f'Cardinal count must be an integer, '
                                      f'got "{self.count!r}".')
            if self.count < 0:
                raise DescriptorError(f'Cardinal count must be non-negative, '
                                      f'got {self.count}.')

    @classmethod
    def finite(cls, n: int):
        return cls(n)

    @classmethod
    def aleph0(cls):
        return cls(None)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, CardinalCount):
            return value

        if isinstance(value, str) and value.strip().lower() in ('aleph0',
                                                                'ℵ0', 'ℵ₀'):
            return cls.aleph0()

        return cls(value)

    @property
    def is_aleph0(self):
        return self.count is None

    @property
    def is_zero(self):
        return self.count == 0

    def capped(self, cap: int) -> int:
        if self.count is None:
            return cap

        return min(self.count, cap)

    def __add__(self, other):
        other = CardinalCount.coerce(other)

        if self.is_aleph0 or other.is_aleph0:
            return ALEPH0

        return CardinalCount(self.count + other.count)

    __radd__ = __add__

    def __sub__(self, other):
        # Only used to remove finitely many factors from a layer.
        other = CardinalCount.coerce(other)

        if other.is_aleph0:
            raise DescriptorError('Cannot remove aleph0 factors.')

        if self.is_aleph0:
            return ALEPH0

        if other.count > self.count:
            raise DescriptorError(f'Cannot remove {other.count} factors from '
                                  f'{self.count}.')

        return CardinalCount(self.count - other.count)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.count == other

        if not isinstance(other, CardinalCount):
            return NotImplemented

        return self.count == other.count

    def __hash__(self):
        return hash(self.count)

    def __lt__(self, other):
        other = CardinalCount.coerce(other)

        if self.is_aleph0:
            return False

        if other.is_aleph0:
            return True

        return self.count < other.count

    def __bool__(self):
        return self.count != 0

    def __str__(self):
        return 'aleph0' if self.is_aleph0 else str(self.count)

    def __repr__(self):
        return f'CardinalCount({self})'

    def to_json(self):
        return 'aleph0' if self.is_aleph0 else {'fin': self.count}

    @classmethod
    def from_json(cls, data):
        if data == 'aleph0':
            return cls.aleph0()

        if isinstance(data, dict) and set(data) == {'fin'}:
            return cls(data['fin'])

        raise DescriptorError(f'Invalid cardinal JSON "{data!r}".')


ZERO = CardinalCount(0)
ONE = CardinalCount(1)
ALEPH0 = CardinalCount(None)
