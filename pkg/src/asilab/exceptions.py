"""Exception hierarchy shared by every asilab module."""


class AsiError(Exception):
    """Base class for all asilab errors."""


class MalformedInput(AsiError, ValueError):
    """A graph, witness or manifest document failed validation."""


class FuelExhausted(AsiError):
    """An exploration of a lazy graph ran out of its vertex budget.

    This is deliberately distinct from "exceeds cap": running out of fuel
    means the answer is unknown, not negative.
    """

    def __init__(self, message, consumed=0, partial=None):
        super().__init__(message)
        self.consumed = consumed
        self.partial = partial


class BudgetExceeded(AsiError):
    """An exact search ran past its wall-clock budget."""


class InvalidWitness(AsiError, ValueError):
    """The supplied parts do not form a partition of the vertex set."""


class ScaleTooSmall(AsiError, ValueError):
    """A witness scale is below what an algorithm requires."""


class HypothesisViolation(AsiError):
    """The input is outside the class an algorithm is promised to handle.

    ``block`` holds the offending finite subgraph when there is one.
    """

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class AlgorithmFailure(AsiError):
    """An ASI algorithm raised on some local view.

    The canonical structure it was evaluating is attached for diagnosis.
    """

    def __init__(self, message, structure=None):
        super().__init__(message)
        self.structure = structure


class InvariantViolation(AsiError, AssertionError):
    """An internal proof invariant failed to hold on a run."""
