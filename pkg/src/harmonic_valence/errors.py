class ParameterError(ValueError):
    """Inputs violate a documented precondition (n > m >= 1, epsilon > 0, ...)."""


class DegeneratePolynomialError(ValueError):
    """Leading coefficient is zero (or may be zero) where a true degree is required."""


class ZeroPolynomialError(ValueError):
    pass


class CertificateSchemaError(ValueError):
    """A certificate or instance file does not match the expected JSON layout."""


class CertificationError(RuntimeError):
    """A constructed certificate violates a proven upper bound; indicates a soundness bug."""
