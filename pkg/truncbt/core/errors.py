"""Exceptions raised by truncbt."""
from typing import Optional, Sequence

EXIT_DOMAIN = 1
EXIT_BUDGET = 2
EXIT_INVARIANT = 3


class TruncBTError(Exception):
    """Base class for all truncbt exceptions."""

    exit_code: int = EXIT_DOMAIN

    def __init__(self, msg, *args):
        assert msg
        self.msg = msg
        super().__init__(msg, *args)


class DomainError(TruncBTError):
    """Bad input: the requested object does not exist or is not defined"""

    exit_code = EXIT_DOMAIN


class BudgetExceeded(TruncBTError):
    """A configured enumeration or orbit cap was hit"""

    exit_code = EXIT_BUDGET


class InvariantViolation(TruncBTError, AssertionError):
    """An internal consistency check failed. This is a bug, not bad input"""

    exit_code = EXIT_INVARIANT


class InvalidArgumentError(ValueError, DomainError):
    """Thrown if arguments are invalid."""


class RingMismatch(ValueError, DomainError):
    _message = "Operands live in different rings: {left} and {right}"

    def __init__(self, left, right) -> None:
        self.left = left
        self.right = right
        super().__init__(self._message.format(left=left, right=right))


class NotAUnit(ArithmeticError, DomainError):
    """Thrown on inversion of an element divisible by p"""


class PrecisionIncrease(ValueError, DomainError):
    _message = "Cannot change precision from m={m} up to m'={new_m}: lifting is not supported"

    def __init__(self, m: int, new_m: int) -> None:
        self.m = m
        self.new_m = new_m
        super().__init__(self._message.format(m=m, new_m=new_m))


class NotInvertible(ArithmeticError, DomainError):
    """Thrown if a matrix is singular modulo p"""


class ShapeMismatch(ValueError, DomainError):
    """Thrown if matrix dimensions are incompatible"""


class NotCoprime(ValueError, DomainError):
    _message = "Minimal data need coprime (c, d), got ({c}, {d})"

    def __init__(self, c: int, d: int) -> None:
        self.c = c
        self.d = d
        super().__init__(self._message.format(c=c, d=d))


class PairNotInJMinus(ValueError, DomainError):
    _message = "Pair {pair} is not in J_- for cut c={c}"

    def __init__(self, pair, c: int) -> None:
        self.pair = pair
        self.c = c
        super().__init__(self._message.format(pair=pair, c=c))


class InsufficientPrecision(DomainError):
    """Thrown if the Newton polygon cannot be certified at the given precision"""

    _message = "Newton polygon is not determined at precision m={m}; uncertain coefficients: {uncertain}"

    def __init__(self, m: int, uncertain: Sequence[int]) -> None:
        self.m = m
        self.uncertain = list(uncertain)
        super().__init__(
            self._message.format(m=m, uncertain=self.uncertain)
        )


class SymplecticViolation(ValueError, DomainError):
    """Thrown if an input breaks the symplectic block conventions"""


class InsufficientData(ValueError, DomainError):
    """Thrown if a dimension fit gets fewer than two data points"""


class EnumerationTooLarge(BudgetExceeded):
    _message = "Enumeration of {what} needs {size} steps, budget is {budget}"

    def __init__(self, what: str, size: int, budget: int) -> None:
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(
            self._message.format(what=what, size=size, budget=budget)
        )


class OrbitTooLarge(BudgetExceeded):
    _message = "Orbit exceeded the budget of {budget} states (at least {lower_bound} elements)"

    def __init__(self, budget: int, lower_bound: int) -> None:
        self.budget = budget
        self.lower_bound = lower_bound
        super().__init__(
            self._message.format(budget=budget, lower_bound=lower_bound)
        )


class NonIntegralQuotient(InvariantViolation):
    _message = "{numerator} is not divisible by {denominator} ({what})"

    def __init__(
        self, numerator, denominator, what: Optional[str] = None
    ) -> None:
        self.numerator = numerator
        self.denominator = denominator
        super().__init__(
            self._message.format(
                numerator=numerator,
                denominator=denominator,
                what=what or "quotient",
            )
        )


class NotAnAutomorphism(InvariantViolation):
    """Thrown if a stabilizer element does not map to an automorphism"""
