"""Exception hierarchy for the geometry engine."""


class GeometryError(Exception):
    """Base class for all engine errors."""


class ModelConstraintError(GeometryError):
    """A point does not lie on the ambient model within tolerance."""


class TangencyError(GeometryError):
    """A vector is not tangent to the ambient model within tolerance."""


class DomainError(GeometryError):
    """Input outside the domain of an operation (e.g. retraction of 0)."""


class DegenerateImmersionError(GeometryError):
    """The differential of a chart map is rank deficient (det g too small)."""


class BoundaryProximityError(GeometryError):
    """A sample point is too close to the chart boundary for the stencil."""


class FrameUndefinedError(GeometryError):
    """Frenet frame requested where the geodesic curvature vanishes."""


class SingularSpeedError(GeometryError):
    """|gamma'| vanishes where a negative power of the speed is needed."""


class SingularFactorError(GeometryError):
    """|tau_p|^(q-2) requested at a zero of tau_p with q < 2."""


class NoRootInBracketError(GeometryError):
    """A 1-D parameter solve found no admissible root in the bracket."""


class NonConvergenceError(GeometryError):
    """An iterative solver exhausted its iteration budget."""
