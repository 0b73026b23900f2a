"""Exception hierarchy.

Library code raises subclasses of :class:`IsoperimetryError` for violated
preconditions of a domain operation.  The CLI maps these to exit code 1 and
everything it rejects while parsing input to exit code 2.
"""


class IsoperimetryError(ValueError):
    """A domain precondition failed."""


class DimensionMismatchError(IsoperimetryError):
    pass


class DegenerateError(IsoperimetryError):
    """A polytope or body that must be full-dimensional is not."""


class CapExceededError(IsoperimetryError):
    """An exhaustive enumeration would exceed its configured size cap."""


class NotGeneratingError(IsoperimetryError):
    pass
