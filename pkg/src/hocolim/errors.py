"""Exception hierarchy shared by every module."""


class HocolimError(Exception):
    """Base class for all toolkit errors."""


class SimplicialError(HocolimError, ValueError):
    """A malformed simplicial object, map or construction input."""


class SimplicialIdentityError(SimplicialError):
    """A face/degeneracy table violates a simplicial identity."""

    def __init__(self, identity, level, indices, simplex, message=None):
        self.identity = identity
        self.level = level
        self.indices = indices
        self.simplex = simplex
        if message is None:
            message = (
                f"simplicial identity {identity} fails at level {level} "
                f"for indices {indices} on simplex {simplex!r}"
            )
        super().__init__(message)


class MapError(SimplicialError):
    """A component table does not commute with the simplicial operators."""


class CategoryError(HocolimError, ValueError):
    """A finite category, functor or Reedy datum fails its axioms."""


class DiagramError(HocolimError, ValueError):
    """A simplicial diagram or diagram map fails functoriality/naturality."""


class TruncationError(HocolimError, ValueError):
    """An operation needs more simplicial levels than the input provides."""

    def __init__(self, needed, available, what=""):
        self.needed = needed
        self.available = available
        msg = f"dimension demand {needed} exceeds available truncation {available}"
        if what:
            msg = f"{what}: {msg}"
        super().__init__(msg)


class BudgetExceeded(HocolimError, RuntimeError):
    """A combinatorial search ran past its node budget; partial results are dropped."""

    def __init__(self, budget, what=""):
        self.budget = budget
        msg = f"search budget of {budget} nodes exceeded"
        if what:
            msg = f"{what}: {msg}"
        super().__init__(msg)


class SoundRangeError(HocolimError, ValueError):
    """Requested homology degrees lie outside the range the truncation supports."""
