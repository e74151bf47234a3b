"""Shared exception types."""


class ParseError(ValueError):
    """Malformed graph or CRG file text."""


class DomainError(ValueError):
    """Input outside the supported domain (caps, trivial properties, validity ranges)."""


class TrivialPropertyError(DomainError):
    """The forbidden set leaves no nontrivial hereditary property to measure."""


class CapExceededError(DomainError):
    """Input size exceeds a configured exactness cap."""
