# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import threading

import h5py
import numpy as np
import pytest
from pydantic import ValidationError

from Profinity.Core import Configuration
from Profinity.Core.Configuration import ConfigSchema, power_validator
from Profinity.Core.Errors import ProfinityError
from Profinity.Logging import DataLogger
from Profinity.Utilities.Cache import Cache


def test_defaults():
    config = Configuration.get_config()

    assert config.oracle.enumeration_limit == 2 ** 10
    assert config.dsl.max_depth == 64
    assert config.materialization.level == 4
    assert config.verify.workers == 4
    assert Configuration.get_config() is config


def test_power_validator():
    assert power_validator('2^12') == 4096
    assert power_validator(' 3 ^ 2 ') == 9
    assert power_validator('17') == 17
    assert power_validator(5) == 5

    with pytest.raises(ValueError):
        power_validator('2**12')


def test_load_with_aliases(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text('oracle:\n'
                    '  enumeration limit: 2^12\n'
                    '  max generators: 64\n'
                    'dsl:\n'
                    '  max exponent: "2^8"\n'
                    'materialization:\n'
                    '  level: 6\n')

    config = Configuration.load_config(path)

    assert config.oracle.enumeration_limit == 4096
    assert config.oracle.max_generators == 64
    assert config.dsl.max_exponent == 256
    assert config.materialization.level == 6
    assert config.verify.corpus_size == 200


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text('')

    assert Configuration.load_config(path) == ConfigSchema()


@pytest.mark.parametrize('text', [
    'dsl:\n  max depth: 101\n',
    'oracle:\n  enumeration limit: 0\n',
    'materialization:\n  cap: many\n',
])
def test_invalid_values(tmp_path, text):
    path = tmp_path / 'config.yaml'
    path.write_text(text)

    with pytest.raises(ValidationError):
        Configuration.load_config(path)


def test_unreadable_files(tmp_path):
    with pytest.raises(ProfinityError, match='Cannot read config file'):
        Configuration.load_config(tmp_path / 'missing.yaml')

    path = tmp_path / 'config.yaml'
    path.write_text('oracle: {enumeration limit: 4\n')

    with pytest.raises(ProfinityError, match='Invalid YAML'):
        Configuration.load_config(path)


def test_set_config():
    config = ConfigSchema(dsl={'max depth': 8})
    Configuration.set_config(config)

    assert Configuration.get_config().dsl.max_depth == 8

    Configuration.set_config(None)
    assert Configuration.get_config().dsl.max_depth == 64


def test_cache_evicts_oldest():
    cache = Cache(max_size=2)
    for key in 'abc':
        cache.add(key, key.upper())

    assert len(cache) == 2
    assert 'a' not in cache
    assert cache['c'] == 'C'

    cache.add('b', 'ignored')
    assert cache['b'] == 'B'


def test_cache_computes_once():
    cache = Cache()
    calls = []

    def square(n):
        calls.append(n)
        return n * n

    assert cache.get_or_compute(4, square) == 16
    assert cache.get_or_compute(4, square) == 16
    assert calls == [4]


def test_cache_across_threads():
    cache = Cache(max_size=50)

    def work(offset):
        for n in range(200):
            cache.get_or_compute((offset, n), lambda key: key[1])

    threads = [threading.Thread(target=work, args=(t,)) for t in range(4)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    assert len(cache) == 50


def test_log_signal_period():
    signal = DataLogger.LogSignal('sampled', period=2)
    for index in range(5):
        signal.add_data(index, index * 10)

    assert signal.data == [(0, 0), (2, 20), (4, 40)]


def test_data_logger_hdf5(tmp_path):
    logger = DataLogger.get_logger()
    signal = logger.register_signal('suites', DataLogger.LogSignal('snf'))
    signal.add_data(0, 1)
    signal.add_data(1, 0)

    assert logger.register_signal('suites', DataLogger.LogSignal('snf')) \
        is signal

    path = logger.write_hdf5(tmp_path / 'run.log')
    assert path.name == 'run.hdf5'

    with h5py.File(path, 'r') as log_file:
        np.testing.assert_array_equal(log_file['suites/snf'][:],
                                      [[0, 1], [1, 0]])


def test_data_logger_is_shared():
    DataLogger.get_logger().register_signal('a', DataLogger.LogSignal('b'))

    assert 'a/b' in DataLogger.get_logger().signals

    DataLogger.get_logger().reset()
    assert DataLogger.get_logger().signals == {}
