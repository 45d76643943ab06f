"""Exception types shared across the package.

Every failure mode gets its own class so callers (and the CLI exit-code
mapping) can tell bad input data apart from genuine poles or evaluation
points the exact engine refuses to approximate.
"""


class StringyError(Exception):
    """Base class for all package-specific errors."""


class DomainError(StringyError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(StringyError):
    """Evaluation at a pole of a correction factor or rational function."""


class UnsupportedPointError(StringyError):
    """Point not exactly representable on the lattice (not an L-th power)."""


class IncompleteDataError(StringyError):
    """A computation needs intersection numbers the datum does not carry."""


class NotApplicableError(StringyError):
    """Operation requires Gorenstein canonical input (integer discrepancies)."""


class PreconditionError(StringyError):
    """Structural precondition of a check failed (duality, Euler mismatch, ...)."""


class SchemaError(StringyError):
    """Malformed input document."""


class ValidationError(StringyError):
    """Resolution datum failed validation; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid resolution datum: " + "; ".join(self.violations))
