"""Finite, dimension-truncated models of homotopy colimits and left fibrations over nerves."""
__version__ = "0.1.0"

from .errors import (BudgetExceeded, CategoryError, DiagramError, HocolimError, MapError,  # noqa: E402
                     SimplicialError, SimplicialIdentityError, SoundRangeError, TruncationError)
from .kernels import BACKEND  # noqa: E402
from .simplicial import OverObject, SimplicialMap, TruncatedSimplicialSet  # noqa: E402

__all__ = [
    "BACKEND", "BudgetExceeded", "CategoryError", "DiagramError", "HocolimError", "MapError", "OverObject",
    "SimplicialError", "SimplicialIdentityError", "SimplicialMap", "SoundRangeError", "TruncatedSimplicialSet",
    "TruncationError", "__version__",
]
