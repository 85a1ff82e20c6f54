"""Exception types raised by the library."""


class PolyslopeError(Exception):
    """Base class for all library-specific errors."""


class ParallelLines(PolyslopeError):
    """Two slope lines coincide modulo pi within tolerance."""


class PointOnBoundary(PolyslopeError):
    """Winding number requested at a point lying on the polygon."""


class NonIntegralTurn(PolyslopeError):
    """Cyclic sum of line angles is not an integer multiple of pi."""


class SlopeMismatch(PolyslopeError):
    """A polygon edge is not parallel to its declared slope."""


class SignatureMismatch(PolyslopeError):
    """Sign count of the chart perimeters disagrees with the turning number."""


class ReconstructionDegenerate(PolyslopeError):
    """Polygon reconstruction hit an ill-conditioned or inconsistent step."""


class CoincidentVertices(PolyslopeError):
    """Consecutive vertices coincide within tolerance."""


class AntipodalVertices(PolyslopeError):
    """Consecutive vertices of a cyclic polygon are antipodal within tolerance."""


class LengthMismatch(PolyslopeError):
    """Vertices do not realize the prescribed edge lengths."""


class NotCritical(PolyslopeError):
    """A configuration expected to be a critical point fails the gradient test."""


class Bifurcating(PolyslopeError):
    """Index requested for a cyclic polygon on the bifurcation locus."""


class DegenerateHessian(PolyslopeError):
    """A perimeter Hessian eigenvalue falls inside the numerical dead band."""


class DegenerateCritical(PolyslopeError):
    """An area Hessian eigenvalue falls inside the numerical dead band."""


class InputSchemaError(PolyslopeError):
    """An input file does not match its documented schema."""
