"""Exception types shared across the package.

The CLI maps these onto exit codes, so each family stays distinct.
"""


class BraidParseError(ValueError):
    """Malformed braid text or an index outside the strand range."""


class BraidMoveError(ValueError):
    """A Markov move was requested where it is not defined."""


class EvaluationError(ArithmeticError):
    """A numeric evaluation hit a singular point (division by zero, pole)."""


class BranchCutError(ValueError):
    """Argument lies on a branch cut of a multivalued function."""


class BranchError(ArithmeticError):
    """Path continuation lost track of the intended branch."""


class ResourceGuardError(RuntimeError):
    """Requested computation exceeds the configured size limit."""
