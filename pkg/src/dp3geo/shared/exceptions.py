"""Custom exceptions for the dp3geo toolkit."""


class Dp3GeoError(Exception):
    """Base exception for the application."""
    pass


class ValidationError(Dp3GeoError):
    """For malformed input data."""
    pass


class InvalidMatrixError(ValidationError):
    """When a weight matrix breaks arity, rank or convexity."""
    pass


class NonUnimodularError(ValidationError):
    """When a basis change is not invertible over the integers."""
    pass


class DegenerateScrollError(Dp3GeoError):
    """When a chamber walk has no chamber at all."""
    pass


class UnboundedEnumerationError(Dp3GeoError):
    """When section enumeration has no positive grading."""
    pass


class DegreeOverflowError(Dp3GeoError):
    """When a Chow expression exceeds the dimension of the scroll."""
    pass


class InadmissibleFamilyError(Dp3GeoError):
    """When an operation needs an admissible dP3 family."""
    pass


class EmptyTableError(Dp3GeoError):
    """When a Newton table has no rows."""
    pass


class SubstitutionRejectedError(Dp3GeoError):
    """When a weighted substitution drives a coefficient degree negative."""
    pass


class InconsistentOverridesError(Dp3GeoError):
    """For h0 overrides violating Riemann-Roch bounds or duality."""
    pass


class NonRealizableFormatError(Dp3GeoError):
    """When generator data admits no symmetric determinantal format."""
    pass


class UnknownFormatError(Dp3GeoError):
    """For unsupported output formats."""
    pass
