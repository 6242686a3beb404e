"""Exception and warning types shared across the package."""

from __future__ import annotations


class KgaapError(Exception):
    """Base class for all library errors."""


class ParseError(KgaapError):
    """Input document violates the supported grammar."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class RelativeIriError(KgaapError):
    """An IRI could not be resolved to absolute form."""


class EmptyTaskSignature(KgaapError):
    """A task was submitted with no signature entries."""


class EmptyCatalogue(KgaapError):
    """A task catalogue with no tasks was submitted."""


class UnknownTask(KgaapError):
    """A task id is not present in the catalogue or profile."""


class DuplicateKgId(KgaapError):
    """Two registry profiles declare the same knowledge-graph id."""


class DigestMismatch(KgaapError):
    """A registry file does not match its recorded content digest."""


class CatalogueFormatError(KgaapError):
    """The task-catalogue document is malformed."""


class ProfileFormatError(KgaapError):
    """A profile or mediator document is missing required assertions."""


class PunningWarning(UserWarning):
    """Same IRI used in both class and property positions."""


class CycleWarning(UserWarning):
    """Equivalence axioms form a definitional cycle; cyclic definitions derive nothing."""


class IncoherentClosureWarning(UserWarning):
    """Composed KGs declare conflicting closure treatment for a shared predicate."""


class PartialProfileWarning(UserWarning):
    """A profile was computed under an unsupported grounding route; coverage is a lower bound."""
