"""Exception hierarchy shared by all monkbench modules."""


class MonkbenchError(Exception):
    """Base class for all monkbench errors."""


class DomainError(MonkbenchError):
    """A term or assignment referenced a label outside its domain."""


class UsageError(MonkbenchError):
    """Arguments violate a documented precondition (caller bug)."""


class PreconditionError(MonkbenchError):
    """A construction's hypothesis fails; carries the failing clause name."""

    def __init__(self, clause: str, message: str = ""):
        self.clause = clause
        super().__init__(f"precondition {clause} fails" + (f": {message}" if message else ""))


class IntegrityError(MonkbenchError):
    """An internally verified fact failed; signals an implementation bug."""


class GenerationError(MonkbenchError):
    """A seeded generator exhausted its retry budget."""


class SizeCapError(UsageError):
    """Requested instance exceeds the configured desk-scale size caps."""
