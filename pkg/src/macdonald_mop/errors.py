"""Exception hierarchy shared by all modules."""


class MacdonaldError(Exception):
    """Base class for errors raised by this package."""


class DomainError(MacdonaldError, ValueError):
    """Argument outside the domain of a function (e.g. K_nu at z <= 0)."""


class DegenerateSystemError(MacdonaldError, ArithmeticError):
    """A defining moment system turned out to be singular."""

    def __init__(self, message, *, n=None, m=None, alpha=None, nu=None):
        self.n, self.m, self.alpha, self.nu = n, m, alpha, nu
        if n is not None or nu is not None:
            message = f"{message} (n={n}, m={m}, alpha={alpha}, nu={nu})"
        super().__init__(message)


class UnsupportedIndexError(MacdonaldError, ValueError):
    """Index pair for which no ladder / Rodrigues relation is available."""


class IdentityViolation(MacdonaldError, AssertionError):
    """An identity that must hold exactly was found to fail.

    ``value`` carries the offending quantity (exact when possible).
    """

    def __init__(self, message, value=None):
        self.value = value
        super().__init__(message if value is None else f"{message}: {value}")


class OrderViolation(IdentityViolation):
    """A Hermite-Pade residual has a nonzero coefficient too early."""


class ZeroLocationError(IdentityViolation):
    """Zeros of a type 2 polynomial failed the real/simple/positive test."""


class QuadratureError(MacdonaldError, RuntimeError):
    """Numerical quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        self.estimate, self.error = estimate, error
        super().__init__(f"{message} (estimate={estimate}, error={error})")
