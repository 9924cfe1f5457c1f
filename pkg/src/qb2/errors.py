"""Exceptions shared across modules."""


class ClaimViolation(AssertionError):
    """A computation contradicts the result it is meant to confirm."""


class DomainError(ValueError):
    """An operation was called outside the parameter range where it is defined."""
