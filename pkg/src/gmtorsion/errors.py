"""Exception hierarchy shared by every module."""


class GmError(Exception):
    """Base class for all library errors."""


class InvalidArgument(GmError, ValueError):
    """An input violates an operation's precondition."""


class NotEligible(GmError):
    """The input is well formed but the operation does not apply to it."""


class NotFound(GmError):
    """A search that must succeed came up empty (a contract breach)."""


class CertificateRefused(GmError):
    """An order-two certificate could not be issued."""


class ContractViolation(GmError, AssertionError):
    """An internal identity failed re-verification."""


class FactorizationTimeout(GmError):
    """Factoring did not finish within the configured time budget."""
