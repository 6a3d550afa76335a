# utils/exceptions.py
"""Exception hierarchy for the toolkit.

Library code raises these; the pipeline stages catch them and record the
failure in the report instead of aborting the run.
"""


class CkitError(Exception):
    """Base class for every error raised by the toolkit."""


class ScalarError(CkitError):
    """Division by zero, a value outside the field tower, or an unreadable literal."""


class ValidationError(CkitError):
    """Input data violates a structural requirement.

    Args:
        message (str): What went wrong
        witness: Optional data that re-verifies the failure (indices, a vector, ...)
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotIntegrableError(ValidationError):
    """An operation that needs an integrable complex structure got a non-integrable one."""


class NotSolvableError(ValidationError):
    """An operation that needs a solvable Lie algebra got a non-solvable one."""


class InternalConsistencyError(CkitError):
    """Two independent criteria for the same property disagree."""


class NotExactlyEvaluable(CkitError):
    """A matrix exponential cannot be written down exactly.

    Args:
        message (str): Description
        block: The offending block (index pair or diagonal index)
    """

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class UnsupportedError(CkitError):
    """The request is well-formed but outside what the toolkit decides."""


class SalamonSyntaxError(CkitError):
    """Malformed Salamon tuple.

    Args:
        message (str): Description
        position (int): Character offset of the failure in the source text
    """

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SalamonElaborationError(CkitError):
    """Well-formed Salamon tuple that does not define a Lie algebra."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
