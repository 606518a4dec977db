"""Exception hierarchy shared across the toolkit.

Two base categories mirror the CLI exit-code contract: ``DataError`` for
problems with the data itself (exit 2) and ``PreconditionError`` for inputs
that are structurally fine but too small or degenerate for the requested
operation (exit 3). Contract violations by callers (wrong vector length,
out-of-range coefficient) raise plain ``ValueError``.
"""

from __future__ import annotations


class DataError(Exception):
    """The input data is malformed or inconsistent."""


class PreconditionError(Exception):
    """The input is well-formed but does not satisfy an operation's preconditions."""


class ParseError(DataError):
    """A line of a bug stream could not be parsed under the abort policy."""

    def __init__(self, line_number: int, reason: str) -> None:
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class DuplicateBugIdError(DataError):
    """Two records in one stream share a bug id."""

    def __init__(self, bug_id: int, first_line: int, second_line: int) -> None:
        super().__init__(
            f"bug_id {bug_id} appears on line {first_line} and again on line {second_line}"
        )
        self.bug_id = bug_id
        self.first_line = first_line
        self.second_line = second_line


class DuplicateCycleError(DataError):
    """A duplicate-of chain loops back on itself and has no master."""

    def __init__(self, cycle: tuple[int, ...]) -> None:
        super().__init__("duplicate_of cycle: " + " -> ".join(str(b) for b in cycle))
        self.cycle = cycle


class FeatureTableError(DataError):
    """A feature CSV has a wrong header or an unreadable row."""


class ModelLoadError(DataError):
    """A model file is corrupt or has an unsupported format version."""


class InsufficientDataError(PreconditionError):
    """Too few rows (or bugs) for the requested computation."""


class EmptyProductError(PreconditionError):
    """A product key with no bugs was passed to an aggregation."""


class ConstantInputError(PreconditionError):
    """A constant vector makes the statistic undefined (zero denominator)."""


class SingularFitError(PreconditionError):
    """The design matrix is rank-deficient beyond what the ridge guard can rescue."""


class DivergenceError(PreconditionError):
    """Training produced a non-finite loss; try a lower learning rate."""


class FoldTrainingError(PreconditionError):
    """Training failed on one cross-validation fold."""

    def __init__(self, fold: int, cause: Exception) -> None:
        super().__init__(f"fold {fold}: {cause}")
        self.fold = fold
        self.cause = cause
