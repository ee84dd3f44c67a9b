"""Exception types shared across the package."""


class BiclosedError(Exception):
    """Base class for all errors raised by this package."""


class NotQuasitrivial(BiclosedError, ValueError):
    """A table entry F(a, b) is not one of a, b."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAssociative(BiclosedError, ValueError):
    """An operation expected to be associative is not.

    ``witness`` is a triple (a, b, c) with F(F(a,b),c) != F(a,F(b,c)) when one
    could be found.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotBiclosed(BiclosedError, ValueError):
    """A root set is not biclosed.

    ``witness`` is ``(side, x, y)`` where ``side`` is ``"set"`` or
    ``"complement"`` and x, y are roots of that side whose sum is a root
    lying on the other side.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RankTooLarge(BiclosedError, ValueError):
    pass


class CrossCheckFailure(BiclosedError, AssertionError):
    pass


class LatticeViolation(BiclosedError, AssertionError):
    pass
