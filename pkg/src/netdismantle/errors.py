"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class InvalidCostError(ValueError):
    """Cost vector is negative, mis-sized, or inconsistent with its mode."""


class ComponentTooSmallError(ValueError):
    """Spectral bisection needs a component with at least two nodes."""


class DegenerateSpectrumError(RuntimeError):
    """Power iteration collapsed twice; the shifted operator has no usable
    second eigenvector (for example a component whose zero-mean subspace is
    annihilated exactly)."""


class OracleBudgetError(ValueError):
    """An exhaustive oracle was asked to run beyond its hard size budget."""


class InternalInvariantError(RuntimeError):
    """A state the algorithm promises can never occur occurred anyway.
    Reserved for bugs, not for bad input."""


class EnsembleMemberError(RuntimeError):
    """A single ensemble member failed; carries the member index."""

    def __init__(self, member_index: int, cause: BaseException):
        super().__init__(f"ensemble member {member_index} failed: {cause!r}")
        self.member_index = member_index
        self.cause = cause
