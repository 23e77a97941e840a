# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import heapq
import itertools
import threading


class Cache:
    """
    Bounded memo table. Entries are evicted oldest-insertion first once
    ``max_size`` is exceeded. Safe to share between threads; a value may
    be computed twice under contention.
    """

    def __init__(self, max_size=None):
        self.max_size = max_size

        self._queue = dict()
        self._ordering = []
        self._counter = itertools.count()
        self._lock = threading.Lock()

    def add(self, key, value):
        with self._lock:
            if key not in self._queue:
                self._queue[key] = value
                heapq.heappush(self._ordering, (next(self._counter), key))

                self._reduce_to_size()

    def get_or_compute(self, key, function):
        with self._lock:
            if key in self._queue:
                return self._queue[key]

        value = function(key)
        self.add(key, value)

        return value

    def remove_oldest(self):
        _, key = heapq.heappop(self._ordering)

        del self._queue[key]

    def _reduce_to_size(self):
        if self.max_size is None:
            return

        while len(self._queue) > self.max_size:
            self.remove_oldest()

    def __len__(self):
        return len(self._queue)

    def __contains__(self, key):
        return key in self._queue

    def __getitem__(self, key):
        with self._lock:
            return self._queue[key]
