"""Exception types shared across the package.

The CLI maps these onto exit codes: InputError -> 1,
NotARepresentation -> 2, CapExceeded -> 3.
"""


class SpecrepError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SpecrepError):
    """Malformed or inconsistent input data (bad labels, bad schema, A = C, ...)."""


class NotARepresentation(SpecrepError):
    """A point family that was required to intersect down to the target fails to.

    Carries a counterexample element label (an element of the symmetric
    difference between the achieved intersection and the target).
    """

    def __init__(self, message: str, witness: str | None = None):
        super().__init__(message)
        self.witness = witness


class CapExceeded(SpecrepError):
    """An exhaustive enumeration was refused because the instance exceeds a size cap."""


class NotAntichain(SpecrepError):
    """An operation requiring pairwise incomparable points received comparable ones."""


class ConsistencyError(SpecrepError):
    """An internal cross-check between two routes to the same answer failed.

    This signals a bug in the engine (or a broken instance invariant), never
    a user error.
    """
