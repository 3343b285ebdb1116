"""Exception types shared across the package."""


class PolywidthError(Exception):
    """Base class for all domain errors raised by this package."""


class RationalFormatError(PolywidthError, ValueError):
    """Input string is not an exact rational of the form "p/q" or "p"."""


class NonGenericError(PolywidthError):
    """Some index set balances the length vector exactly (a wall vector)."""


class EmptyModuliError(PolywidthError):
    """The closing condition is unsatisfiable: one edge outweighs the rest."""


class CapabilityError(PolywidthError):
    """Input exceeds a documented size cap for exact exhaustive computation."""


class UnboundedPolytopeError(PolywidthError):
    """Halfspace data describes an unbounded region."""


class NotSimpleError(PolywidthError):
    """Polytope has a vertex lying on more facets than its dimension."""


class NotSmoothError(PolywidthError):
    """Fan has a maximal cone whose ray generators are not a lattice basis."""
