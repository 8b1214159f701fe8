"""Colored Jones polynomials from braids, Kashaev invariants, and the
hyperbolic geometry of the figure-eight knot complement."""

from .braid import FIGURE_EIGHT, TREFOIL, BraidWord, components, parse_braid, writhe
from .errors import (
    BraidMoveError,
    BraidParseError,
    BranchCutError,
    BranchError,
    EvaluationError,
    ResourceGuardError,
)
from .hypgeom import dilog, fig8_complete_volume, lobachevsky, tetra_volume_shape
from .invariants import Method, colored_jones, fig8_invariant, kashaev, tangle_scalar
from .tensorq import QExponent

__all__ = [
    "FIGURE_EIGHT", "TREFOIL", "BraidWord", "components", "parse_braid", "writhe",
    "BraidMoveError", "BraidParseError", "BranchCutError", "BranchError",
    "EvaluationError", "ResourceGuardError",
    "dilog", "fig8_complete_volume", "lobachevsky", "tetra_volume_shape",
    "Method", "colored_jones", "fig8_invariant", "kashaev", "tangle_scalar",
    "QExponent",
]
__version__ = "0.1.0"
