"""Exception hierarchy shared by every foliakit module."""


class FoliakitError(Exception):
    """Base class for all errors raised by foliakit."""


class StructuralError(FoliakitError, ValueError):
    """Objects that cannot be combined: mismatched variable sets, unknown
    variables, zero denominators, malformed charts."""


class DomainError(FoliakitError, ValueError):
    """A well-formed input outside the mathematical domain of an operation,
    e.g. linearizing at a regular point or a zero eigenvalue in an index."""


class PreconditionError(FoliakitError, ValueError):
    """Input violates a documented precondition of an algorithm."""
