"""Exception hierarchy shared by the library and the command line."""


class ForestLatticeError(Exception):
    """Base class for every error raised by this package."""


class TreeSyntaxError(ForestLatticeError, ValueError):
    """Malformed tree text. ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class InvalidTreeError(ForestLatticeError, ValueError):
    """Structurally invalid tree or forest (duplicate labels, non-binary node...)."""


class UnknownLabelError(ForestLatticeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown label"


class InvalidPartitionError(ForestLatticeError, ValueError):
    """Not a set partition of the expected ground set, or not admissible."""


class NotDominatedError(ForestLatticeError, ValueError):
    """A forest is not below the ambient tree."""


class InvalidOrderError(ForestLatticeError, ValueError):
    """A vertex ordering is not a bijection onto 1..n."""


class NotACoverError(ForestLatticeError, ValueError):
    """A pair or chain of elements is not made of cover relations."""


class BoundExceededError(ForestLatticeError):
    """Input too large for exhaustive enumeration."""


class ConsistencyError(ForestLatticeError, AssertionError):
    """A property guaranteed by theory failed: either a bug or a counterexample."""
