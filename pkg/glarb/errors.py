"""
Error Types
Every failure the toolkit reports carries the process exit code the CLI uses for it.
"""

from typing import Optional


class GlarbError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 2

    def to_dict(self) -> dict:
        return {"success": False, "error": str(self), "type": type(self).__name__}


# --- Malformed input (exit 3) ---

class MalformedInputError(GlarbError):
    """Input text does not follow the file or descriptor grammar"""

    exit_code = 3

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DescriptorMismatchError(GlarbError):
    """Two elements (or an element and a graph) live in different groups"""

    exit_code = 3


class UnknownEdgeError(GlarbError):
    """A vertex pair was used as an edge but is not one"""

    exit_code = 3


# --- Preconditions and resources (exit 2) ---

class PreconditionError(GlarbError):
    """A documented hypothesis of an operation does not hold"""


class ResourceExhaustedError(GlarbError):
    """A search ran out of its node budget"""

    def __init__(self, message: str, lower: int, upper: int):
        self.lower = lower
        self.upper = upper
        super().__init__(f"{message} (best known bounds: {lower} <= arb <= {upper})")

    def to_dict(self) -> dict:
        result = super().to_dict()
        result["lower_bound"] = self.lower
        result["upper_bound"] = self.upper
        return result


class CapacityError(GlarbError):
    """Cycle enumeration found more cycles than it was allowed to hold"""


class OracleGuardError(GlarbError):
    """The brute-force oracle refuses inputs above its vertex guard"""


class BoundTooLargeError(GlarbError):
    """An exact bound would exceed the configured bit horizon"""


class StageError(GlarbError):
    """A staged intermediate hypothesis failed structural validation"""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"stage '{stage}': {message}")

    def to_dict(self) -> dict:
        result = super().to_dict()
        result["stage"] = self.stage
        return result


class InputConsistencyError(GlarbError):
    """Inputs contradict each other, e.g. the declared omega is too small"""


class UniquenessUndecidableError(GlarbError):
    """The uniqueness of a multiplier cannot be certified for this value set"""


class InvariantViolation(GlarbError):
    """An internal postcondition failed; this is a bug"""


class CounterexampleError(GlarbError):
    """A case that the underlying proof rules out was reached"""

    def __init__(self, message: str, values: tuple = ()):
        self.values = tuple(values)
        if self.values:
            message = f"{message}: {', '.join(str(v) for v in self.values)}"
        super().__init__(message)
