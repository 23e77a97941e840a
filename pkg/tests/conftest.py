# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from pathlib import Path

import pytest

from Profinity.Core import Configuration
from Profinity.Core.Descriptors import CartesianDescriptor
from Profinity.Logging import DataLogger

FIXTURES = Path(__file__).parent / 'fixtures'


@pytest.fixture(autouse=True)
def fresh_state():
    Configuration.set_config(None)
    DataLogger.get_logger().reset()

    yield

    Configuration.set_config(None)
    DataLogger.get_logger().reset()


@pytest.fixture
def full2():
    return CartesianDescriptor.full(2)


@pytest.fixture
def golden_lines():
    text = (FIXTURES / 'golden.dsl').read_text()

    return [line for line in text.splitlines() if line.strip()]
