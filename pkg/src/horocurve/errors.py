"""Exception hierarchy shared across the package."""


class HorocurveError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVector(HorocurveError):
    """A nonzero vector was required."""


class NotOnH2(HorocurveError):
    """The point does not lie on the upper hyperboloid sheet (within tolerance)."""


class BadFrame(HorocurveError):
    """A pseudo-orthonormal frame check failed."""


class DomainError(HorocurveError):
    """An expression was evaluated outside a partial function's domain.

    Carries the offending subexpression source in ``subexpr``.
    """

    def __init__(self, message, subexpr="", offset=None):
        super().__init__(message)
        self.subexpr = subexpr
        self.offset = offset


class ExprSyntaxError(HorocurveError):
    """Malformed expression source; ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class UnknownIdentifier(ExprSyntaxError):
    """An identifier in the expression is not a known variable or function."""


class OutOfDomain(HorocurveError):
    """Evaluation was requested outside a domain or validity interval."""


class FrameDrift(HorocurveError):
    """Frame invariants broke beyond the drift threshold; the curve definition is suspect."""


class InvalidInitialFrame(HorocurveError):
    """The initial frame handed to curve synthesis is not pseudo-orthonormal."""


class StepTooLarge(HorocurveError):
    """Per-step frame drift exceeded the safety bound during integration."""


class DomainMismatch(HorocurveError):
    """Two curvature pairs do not share a common parameter domain."""


class SingularPoint(HorocurveError):
    """The curve has (numerically) zero velocity at the requested parameter."""


class DegenerateFamily(HorocurveError):
    """The discriminant's non-degeneracy hypothesis fails at this parameter."""


class NoSmoothExtension(HorocurveError):
    """No smooth evolute ratio exists across an inflection (higher-order zero of n)."""


class GapZone(HorocurveError):
    """A tested quantity fell between the zero and nonzero tolerances.

    Classification refuses to guess; ``quantity`` names the ambiguous value.
    """

    def __init__(self, quantity, value, tol_zero, tol_nonzero):
        super().__init__(
            f"|{quantity}| = {abs(value):.3e} is between tol_zero={tol_zero:.1e} "
            f"and tol_nonzero={tol_nonzero:.1e}"
        )
        self.quantity = quantity
        self.value = value


class SchemaError(HorocurveError):
    """A curve-spec document does not match the documented schema."""


class PreFlightFailed(HorocurveError):
    """A user-supplied curve failed the frame-invariant pre-flight check."""

    def __init__(self, message, worst_t=None, worst_residual=None):
        super().__init__(message)
        self.worst_t = worst_t
        self.worst_residual = worst_residual


class EmitError(HorocurveError):
    """Output emission was refused or failed (e.g. empty track)."""
