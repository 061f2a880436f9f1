"""Exception types shared across the package."""


class KnotInvError(Exception):
    """Base class for all library errors."""


class OddExponent(KnotInvError):
    """An odd power of q appeared where only even powers are representable."""


class OddAlphaExponent(KnotInvError):
    """An odd power of the weight variable survived a computation that must
    produce only even powers; signals a convention violation."""


class NonzeroAlphaSquareCounter(KnotInvError):
    """The formal quadratic-exponent counter did not cancel; the input diagram
    was not writhe normalized."""


class NotPrimePower(KnotInvError):
    """The requested root-of-unity order is not a prime power."""


class DivisionFailed(KnotInvError):
    """An exact division that is guaranteed to succeed did not."""


class NotAUnit(KnotInvError):
    """An element expected to be invertible has no inverse in the ring."""


class NotAKnot(KnotInvError):
    """A braid closure has more than one component."""


class UnknownKnot(KnotInvError):
    """Requested name is not in the bundled knot table."""


class MismatchBeyondPrecision(KnotInvError):
    """Two pipelines that must agree within stated precision disagree."""


class CongruenceFailure(KnotInvError):
    """A residue congruence that must hold was violated."""
