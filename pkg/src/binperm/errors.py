"""Exception hierarchy shared by all binperm modules."""


class BinpermError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(BinpermError, ValueError):
    """A parameter is out of range or violates a stated precondition."""


class DomainError(BinpermError, ArithmeticError):
    """An operation was applied outside its mathematical domain."""


class NotWrappableError(BinpermError, ValueError):
    """Polynomial exponents are not all congruent modulo q - 1."""


class RewriteInvalidError(DomainError):
    """A(X) has a root on the unit circle, so the quotient rewrite is invalid."""


class NotExpressibleError(BinpermError, ValueError):
    """A rational function could not be put in the form X^s A^(q)(1/X) / A(X)."""


class InvalidFactoryInput(ParameterError):
    """Factory maps do not satisfy the required bijection preconditions."""


class ExistenceViolation(BinpermError, RuntimeError):
    """A search that must succeed for even q came back empty."""


class ResourceLimitError(BinpermError, RuntimeError):
    """The requested computation exceeds the supported field size."""
