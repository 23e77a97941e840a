# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import itertools
import logging
import math

import numpy as np

from Profinity.Core.Errors import FiniteGroupError

logger = logging.getLogger(__name__)


def identity(n):
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1

    return matrix


def integer_matrix(rows, shape=None):
    """Object-dtype integer matrix; ``shape`` is needed for empty input."""
    matrix = np.array(rows, dtype=object)

    if matrix.size == 0:
        return np.zeros(shape if shape is not None else (0, 0), dtype=object)

    if matrix.ndim != 2:
        raise FiniteGroupError(f'Expected a rectangular integer matrix, got '
                               f'an array of shape {matrix.shape}.')

    if shape is not None and matrix.shape != tuple(shape):
        raise FiniteGroupError(f'Matrix shape {matrix.shape} does not match '
                               f'the declared shape {tuple(shape)}.')

    for value in matrix.flat:
        if not isinstance(value, (int, np.integer)) or isinstance(value,
                                                                   bool):
            raise FiniteGroupError(f'Non-integer matrix entry "{value!r}".')

    return np.vectorize(int, otypes=[object])(matrix)


class SmithNormalForm:
    """
    Smith normal form of an integer matrix A:

        D = PAQ

    with P and Q unimodular and the diagonal of D non-negative with
    d_1 | d_2 | ... . Entries are Python integers, so nothing overflows.
    Pivots are chosen by smallest non-zero absolute value.

    Usage
    -----
    snf = SmithNormalForm(int_mat)
    snf.run()
    """

    def __init__(self, A, shape=None):
        self._A_orig = integer_matrix(A, shape)
        self._A = self._A_orig.copy()

        rows, cols = self._A.shape
        self._P = identity(rows)
        self._Q = identity(cols)
        self._Q_inv = identity(cols)
        self._done = False

    @property
    def A(self):
        return self._A_orig

    @property
    def D(self):
        return self._A

    @property
    def P(self):
        return self._P

    @property
    def Q(self):
        return self._Q

    @property
    def Q_inv(self):
        return self._Q_inv

    @property
    def diagonal(self):
        return [self._A[i, i] for i in range(min(self._A.shape))]

    def run(self):
        if self._done:
            return self

        rows, cols = self._A.shape
        logger.debug('Smith normal form of a %d x %d matrix', rows, cols)

        for t in range(min(rows, cols)):
            if not self._reduce_corner(t):
                break

            if self._A[t, t] < 0:
                self._negate_row(t)

        check = self._P.dot(self._A_orig).dot(self._Q) if self._A.size \
            else self._A
        if not (check == self._A).all():
            raise FiniteGroupError('Smith normal form check PAQ = D failed.')

        self._done = True

        return self

    def _smallest_entry(self, t):
        rows, cols = self._A.shape
        best = None

        for i in range(t, rows):
            for j in range(t, cols):
                value = abs(self._A[i, j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)

        return best

    def _reduce_corner(self, t):
        rows, cols = self._A.shape
        A = self._A

        while True:
            best = self._smallest_entry(t)
            if best is None:
                return False

            _, i, j = best
            self._swap_rows(t, i)
            self._swap_cols(t, j)

            pivot = A[t, t]
            for i in range(t + 1, rows):
                if A[i, t]:
                    self._add_row(t, i, -(A[i, t] // pivot))

            for j in range(t + 1, cols):
                if A[t, j]:
                    self._add_col(t, j, -(A[t, j] // pivot))

            if any(A[i, t] for i in range(t + 1, rows)) or \
                    any(A[t, j] for j in range(t + 1, cols)):
                continue

            offender = next(((i, j) for i in range(t + 1, rows)
                             for j in range(t + 1, cols)
                             if A[i, j] % pivot), None)
            if offender is None:
                return True

            self._add_row(offender[0], t, 1)

    def _swap_rows(self, i, j):
        if i != j:
            self._A[[i, j], :] = self._A[[j, i], :]
            self._P[[i, j], :] = self._P[[j, i], :]

    def _swap_cols(self, i, j):
        if i != j:
            self._A[:, [i, j]] = self._A[:, [j, i]]
            self._Q[:, [i, j]] = self._Q[:, [j, i]]
            self._Q_inv[[i, j], :] = self._Q_inv[[j, i], :]

    def _add_row(self, source, target, k):
        # row target += k * row source
        self._A[target, :] = self._A[target, :] + k * self._A[source, :]
        self._P[target, :] = self._P[target, :] + k * self._P[source, :]

    def _add_col(self, source, target, k):
        # column target += k * column source
        self._A[:, target] = self._A[:, target] + k * self._A[:, source]
        self._Q[:, target] = self._Q[:, target] + k * self._Q[:, source]
        self._Q_inv[source, :] = (self._Q_inv[source, :] -
                                  k * self._Q_inv[target, :])

    def _negate_row(self, i):
        self._A[i, :] = -self._A[i, :]
        self._P[i, :] = -self._P[i, :]


def smith_normal_form(m, shape=None):
    """
    :param m: integer matrix (nested lists or an array)
    :param shape: (rows, columns), required when ``m`` is empty
    :return: (diagonal, left, right) with left·m·right diagonal
    """
    snf = SmithNormalForm(m, shape).run()

    return snf.diagonal, snf.P, snf.Q


def valuation(n, p):
    """p-adic valuation of a non-zero integer."""
    if n == 0:
        raise FiniteGroupError('Valuation of zero is undefined.')

    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1

    return v


def determinant(matrix):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(row) for row in integer_matrix(matrix)]
    n = len(a)
    if n == 0:
        return 1

    sign, previous = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign

        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous

        previous = a[k][k]

    return sign * a[n - 1][n - 1]


def determinantal_divisor(matrix, k):
    """gcd of all k×k minors; the product of the first k SNF entries."""
    matrix = integer_matrix(matrix)
    rows, cols = matrix.shape

    g = 0
    for r in itertools.combinations(range(rows), k):
        for c in itertools.combinations(range(cols), k):
            g = math.gcd(g, determinant(matrix[np.ix_(r, c)]))
            if g == 1:
                return g

    return g
