# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.


class ProfinityError(RuntimeError):
    pass


class OrdinalError(ProfinityError):
    pass


class DescriptorError(ProfinityError):
    pass


class InvalidSequenceError(DescriptorError):
    def __init__(self, report):
        self.report = report

        super().__init__(f'Invalid torsion sequence: {report.summary()}')


class FiniteGroupError(ProfinityError):
    pass


class OracleSizeError(ProfinityError):
    def __init__(self, size, limit):
        self.size = size
        self.limit = limit

        super().__init__(f'oracle size limit: {size} exceeds {limit}')


class DecompositionError(ProfinityError):
    pass


class ConstructionError(ProfinityError):
    pass


class DslError(ProfinityError):
    """
    Positioned error raised by the descriptor language. Lines and columns
    are 1-based; ``end`` is the column one past the offending text.
    """

    def __init__(self, message, line=1, column=1, end=None, expected=None):
        self.message = message
        self.line = line
        self.column = column
        self.end = column + 1 if end is None else end
        self.expected = tuple(expected or ())

        text = f'{line}:{column}: {message}'
        if self.expected:
            text += f' (expected {", ".join(self.expected)})'

        super().__init__(text)

    def caret(self, source: str):
        lines = source.splitlines() or ['']
        index = min(self.line, len(lines)) - 1

        width = max(self.end - self.column, 1)

        return lines[index] + '\n' + ' ' * (self.column - 1) + '^' * width
