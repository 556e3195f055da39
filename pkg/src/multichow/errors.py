"""Exception hierarchy shared across the package."""


class MultichowError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(MultichowError):
    """Malformed or out-of-range input (bad shapes, invalid rank functions,
    beta vectors with the wrong total, ...)."""


class CycleInputError(PreconditionError):
    """A cycle-tagged multidegree was passed to an operation whose meaning
    requires an irreducible-variety multidegree."""


class DegenerateInputError(MultichowError):
    """Randomized sampling exhausted its retry budget without finding a
    non-degenerate configuration, or a geometric degeneracy makes the
    requested value undefined (e.g. projecting a camera center)."""


class InapplicableError(MultichowError):
    """The requested construction does not apply to the given input (e.g.
    asking for the degree of an incidence form that is identically zero)."""
