# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

from pathlib import Path

import h5py
import numpy as np


class LogSignal:
    def __init__(self, name, period=None):
        self.name: str = name
        self.period: int | None = period

        self._data: list[tuple] = []

    def add_data(self, index, data):
        if len(self._data) == 0:
            i0 = index
        else:
            i0 = self._data[-1][0]

        if (len(self._data) == 0 or self.period is None or
                index - i0 >= self.period):
            self._data.append((index, data))

    def clear(self):
        self._data.clear()

    @property
    def data(self):
        return list(self._data)

    def as_array(self):
        return np.array(self._data, dtype=np.int64).reshape(-1, 2)


class DataLogger:
    _signals: dict[str, LogSignal] | None = None

    def __init__(self):
        if DataLogger._signals is None:
            DataLogger._signals = {}

    def register_signal(self, path, signal: LogSignal):
        full_path = path + '/' + signal.name

        if full_path not in self._signals:
            DataLogger._signals[full_path] = signal

        return DataLogger._signals[full_path]

    @property
    def signals(self):
        return dict(DataLogger._signals)

    def reset(self):
        DataLogger._signals.clear()

    def write_hdf5(self, log_file_path: str | Path):
        log_file_path = Path(log_file_path)

        if not log_file_path.suffix == '.hdf5':
            log_file_path = log_file_path.with_suffix('.hdf5')

        log_file_path = log_file_path.absolute()

        with h5py.File(log_file_path, 'w') as log_file:
            for full_path, signal in DataLogger._signals.items():
                log_file.create_dataset(full_path, data=signal.as_array())

        return log_file_path


def get_logger():
    return DataLogger()
