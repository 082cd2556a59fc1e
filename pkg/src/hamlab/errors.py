"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HamlabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HamlabError, ValueError):
    """An argument violates the mathematical preconditions of an operation."""


class CapabilityError(HamlabError):
    """The input is valid but above a configured exactness or size cap."""


class ParseError(HamlabError, ValueError):
    """Malformed graph6/digraph6 text."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class SerializationError(HamlabError, ValueError):
    """A report record is missing fields or carries values of the wrong type."""


class Cancelled(HamlabError):
    """A long search observed its cancellation token."""
