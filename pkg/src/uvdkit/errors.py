"""Exception types shared across the toolkit."""


class UvdError(Exception):
    """Base class for all toolkit errors."""


class TrajectoryFormatError(UvdError):
    """A trajectory file is malformed (bad header, ragged rows, bad values)."""


class TrajectoryValidationError(UvdError):
    """An in-memory trajectory violates its invariants."""


class DegenerateSegmentError(UvdError):
    """Two consecutive subgoal embeddings coincide, so the normalized
    distance denominator is zero."""


class RelayFinishedError(UvdError):
    """relay_step was called on a finished relay automaton."""
