"""
Exception hierarchy shared by the library and the command line.
"""


class SelbergError(Exception):
    """Base class for every error raised by this package."""


class FieldError(SelbergError, ValueError):
    """Invalid field parameters or an undefined field operation (e.g. 1/0)."""


class RingMismatchError(SelbergError, TypeError):
    """Operands belong to different cyclotomic rings."""


class PolynomialError(SelbergError, ZeroDivisionError):
    """Division by the zero polynomial, or an operation undefined on it."""


class PoleClashError(SelbergError):
    """A rational symbol argument has a pole sharing a factor with the modulus."""


class BudgetExceededError(SelbergError):
    """An enumeration would exceed the configured term budget."""

    def __init__(self, terms: int, budget: int):
        super().__init__(f"enumeration needs {terms} terms, budget is {budget}")
        self.terms = terms
        self.budget = budget


class PreconditionError(SelbergError, ValueError):
    """An operation was called outside its documented domain."""


class ReconstructionError(SelbergError):
    """Rational reconstruction received an unusable window."""


class ParseError(SelbergError, ValueError):
    """Command-line text could not be parsed into a field element or polynomial."""
