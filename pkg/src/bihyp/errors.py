"""Exception taxonomy shared by all bihyp modules."""


class BihypError(Exception):
    """Base class for all package errors."""


class DomainError(BihypError):
    """An operation was called outside its mathematical domain."""


class ValidationError(BihypError):
    """Configuration or input failed validation.

    The message lists every violated field, one per line.
    """


class InsufficientDataError(BihypError):
    """Not enough data points to produce an estimate."""


class EstimationError(BihypError):
    """An estimation procedure could not satisfy its own consistency bounds."""


class AtomBudgetExceeded(BihypError):
    """An orbit ball holds more atoms than the caller's budget.

    Carries the count reached so the caller can lower the radius.
    """

    def __init__(self, count, budget):
        super().__init__(f"orbit ball holds {count} atoms, budget is {budget}")
        self.count = count
        self.budget = budget


class OrbitParseError(BihypError):
    """A persisted orbit file is malformed; message names the line."""


class IntegrityError(BihypError):
    """Persisted or computed data violates a structural invariant."""


class DependencyError(BihypError):
    """A pipeline command is missing an upstream artifact; names the command to run."""
