"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class DegenerateGeometry(EngineError):
    """A shape has zero area or is otherwise unusable."""


class InvalidState(EngineError):
    """A world state violates its invariants (e.g. interpenetration)."""


class InvalidIdentifier(EngineError):
    """An action references a label that does not exist."""


class InvalidMove(EngineError):
    """A discrete move is illegal (e.g. out of bounds)."""


class InvalidAngle(EngineError):
    """A hinge angle is not an admissible multiple of 45 degrees."""


class InvalidFold(EngineError):
    """A fold line does not properly cut the current paper extent."""


class InvalidPunch(EngineError):
    """A punch point lies outside the folded paper."""


class SearchBudgetExceeded(EngineError):
    """A solver exhausted its state budget without an answer."""


class GenerationFailed(EngineError):
    """Rejection sampling exhausted its attempt budget."""


class Unsolvable(EngineError):
    """Exhaustive search proved no solution exists."""


class MissingAsset(EngineError):
    """A required file (image, render, CoT frame) is absent."""


class UnsupportedVariant(EngineError):
    """A (task, prompt variant) pair is not defined."""


class EmptyGroup(EngineError):
    """An aggregation group contains no records."""


class Malformed(EngineError):
    """No parseable answer document was found in a response."""
