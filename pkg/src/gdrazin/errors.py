"""Exception types shared across the package.

Every failure mode a caller can act on gets its own class. Parsing and shape
problems are ValueErrors, singularity is an ArithmeticError, and the two
integrity families (violated hypotheses, broken internal cross-checks) carry
enough payload to reconstruct what went wrong.
"""

from __future__ import annotations


class ScalarParseError(ValueError):
    """A scalar string does not match the accepted grammar."""


class DimensionError(ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class SingularMatrixError(ArithmeticError):
    """An exact inverse was requested for a matrix without one."""


class HypothesisError(ValueError):
    """An input pair or block spec violates a formula's hypotheses.

    Attributes:
        condition: name of the violated condition, e.g. "aba = 0".
        residual: the nonzero product witnessing the violation, if available.
    """

    def __init__(self, condition, residual=None):
        self.condition = condition
        self.residual = residual
        msg = f"hypothesis violated: {condition}"
        if residual is not None:
            msg += " (nonzero residual)"
        super().__init__(msg)


class OracleIntegrityError(RuntimeError):
    """An internal cross-check failed where the math says it cannot.

    Raised when a decomposition, a derived identity, or a formula's own
    verification step produces a contradiction. Always a bug or a genuinely
    inconsistent input, never a recoverable condition.
    """


class GenerationError(RuntimeError):
    """An instance generator exhausted its retry budget.

    Attributes:
        recipe: the generation request that failed.
    """

    def __init__(self, message, recipe=None):
        self.recipe = recipe
        super().__init__(message)
