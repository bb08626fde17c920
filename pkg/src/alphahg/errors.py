"""Exception hierarchy.

Every failure mode is one of three kinds: bad input (malformed files,
invalid constructor arguments), a violated operation precondition
(domain errors), or a blown resource budget.  Budget exhaustion during a
search is *not* an error; it is a verdict (see :mod:`alphahg.search`).
"""


class AlphaHGError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(AlphaHGError, ValueError):
    """Malformed file content or invalid constructor arguments."""


class DomainError(AlphaHGError, ValueError):
    """An operation was called outside its domain (precondition failure)."""


class ResourceLimitError(AlphaHGError, RuntimeError):
    """A brute-force operation would exceed its configured budget."""
