"""Exception hierarchy shared by every lattisym module."""


class LattisymError(Exception):
    """Base class for all library errors."""


class ModeError(LattisymError):
    """Exact and numeric values were mixed in one computation."""


class ParseError(LattisymError, ValueError):
    """Malformed text or JSON input."""


class DegenerateGenerators(LattisymError):
    """Lattice generators are linearly dependent."""


class NormOutsideField(LattisymError):
    """A square root needed in exact mode does not lie in Q(sqrt2, sqrt3)."""


class NotOrthogonal(LattisymError):
    """A matrix expected to be orthogonal is not."""


class NonOrthonormalDirectors(LattisymError):
    pass


class AsymmetricInput(LattisymError):
    """A tensor or matrix required to be symmetric is not."""


class ZeroMatrix(LattisymError):
    pass


class InvalidGenerator(LattisymError):
    """A named isometry is unknown or is not a symmetry of the lattice."""
