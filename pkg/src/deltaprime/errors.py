"""Exception and warning types shared across the package."""


class DeltaPrimeError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(DeltaPrimeError):
    """Expression text could not be parsed; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class EvalError(DeltaPrimeError):
    """Domain violation while evaluating an expression (never a silent NaN)."""

    def __init__(self, message: str, node: str, y: float):
        super().__init__(f"{message} in '{node}' at y={y!r}")
        self.node = node
        self.y = y


class NotOddError(DeltaPrimeError):
    """Custom deformation map fails the oddness check on the sample grid."""


class NotMonotoneError(DeltaPrimeError):
    """Custom deformation map is not strictly increasing on [0, 1)."""


class ZeroSlopeAtOriginError(DeltaPrimeError):
    """k'(0) is zero (or negative), so the zero-energy moment may diverge."""


class NonFiniteIntegrandError(DeltaPrimeError):
    """Integrand returned NaN or infinity at a quadrature node."""

    def __init__(self, y: float, value: float):
        super().__init__(f"integrand is non-finite at y={y!r} (value {value!r})")
        self.y = y
        self.value = value


class DivergedAtEndpointError(NonFiniteIntegrandError):
    """Integrand blew up at an interior node of a malformed custom profile."""


class DomainError(DeltaPrimeError):
    """Argument outside the validated domain of a formula."""


class NoBracketFoundError(DeltaPrimeError):
    """Sign-change scan failed even after expanding the search range."""


class NoBoundStateError(DeltaPrimeError):
    """Couplings lie at or below the existence threshold."""


class ConfigError(DeltaPrimeError):
    """Invalid command-line or profile-file configuration."""


class ToleranceNotReachedWarning(UserWarning):
    """Adaptive subdivision hit the depth cap before meeting the tolerance."""


class MultipleRootsWarning(UserWarning):
    """The scan found more than one root of the spectral equation."""
