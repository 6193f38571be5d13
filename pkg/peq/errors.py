"""
Exceptions raised by the peq library.

Each class also derives from the builtin exception a caller would expect, so
``except ValueError`` keeps working for domain problems.
"""


class PEQError(Exception):
    """Base class for deliberate library errors."""


class InputDomainError(PEQError, ValueError):
    """An argument lies outside the domain of the operation."""


class BasisIndexError(PEQError, ValueError):
    """A partition with more than n blocks was used as a basis index."""

    def __init__(self, partition, n: int):
        self.partition = partition
        self.n = n
        super().__init__(
            f"partition '{partition}' has {partition.num_blocks} blocks, "
            f"more than n={n}; it does not index a basis element"
        )


class CapacityError(PEQError, RuntimeError):
    """A dense materialization would exceed the configured entry bound."""

    def __init__(self, what: str, requested: int, limit: int):
        self.what = what
        self.requested = requested
        self.limit = limit
        super().__init__(
            f"{what} needs {requested} entries, limit is {limit} "
            f"(raise --max-entries or PEQ_MAX_ENTRIES)"
        )


class ScalarOverflowError(PEQError, ArithmeticError):
    """A checked 64-bit integer computation would leave the int64 range."""
