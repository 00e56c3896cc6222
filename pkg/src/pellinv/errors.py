"""Exception hierarchy.

Every domain error derives from :class:`PellError` so the CLI can map the
whole family onto a single exit code.
"""


class PellError(ValueError):
    """Base class for domain errors (bad input for a well-formed call)."""


class SquareInput(PellError):
    pass


class RingMismatch(PellError):
    pass


class SmallDiscriminant(PellError):
    pass


class EmptySequence(PellError):
    pass


class NonpositiveTerm(PellError):
    pass


class NotCoprime(PellError):
    pass


class NotRepresentable(PellError):
    pass


class NotPalindrome(PellError):
    pass


class NotInteger(PellError):
    pass


class BelowThreshold(PellError):
    pass


class NotPrime(PellError):
    pass


class WrongResidue(PellError):
    pass


class RingInfeasible(PellError):
    pass


class NotSquareFree(PellError):
    pass


class IsLeast(PellError):
    pass


class NotCoprimeClass(PellError):
    pass
