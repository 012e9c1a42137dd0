"""Exception types raised across the package."""


class ChebyError(ValueError):
    """Base class for all domain errors."""


class NotAUnit(ChebyError):
    pass


class InvalidModulus(ChebyError):
    pass


class NonIntegerResult(ArithmeticError):
    """An exact division that must land on an integer did not.

    Never caused by valid input; it means a formula implementation is wrong.
    """


class EvenDegree(ChebyError):
    pass


class DegreeOverflow(ChebyError):
    pass


class NotPermutation(ChebyError):
    pass


class StateOutOfRange(ChebyError):
    pass


class IterationBudgetExceeded(RuntimeError):
    pass


class StateSpaceTooLarge(ChebyError):
    pass


class MixedClassCycle(AssertionError):
    """A cycle contains states from two residue classes."""


class NonIntegerQ(ArithmeticError):
    """The self-loop digit recursion hit a non-exact division."""


class CycleRangeError(ChebyError):
    """Requested cycle-length exponent lies outside the valid range."""
