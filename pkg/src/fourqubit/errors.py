"""Exception types shared across the package."""


class FourQubitError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(FourQubitError):
    """Malformed state, operator, or parameter data."""


class SingularFilterError(FourQubitError):
    """A local filter would require inverting a (numerically) singular
    single-qubit density operator.  During distillation this signals a
    non-generic state whose success probability tends to zero."""


class AmbiguousStructureError(FourQubitError):
    """Two candidate eigenvalue clusterings fit the state within twice the
    tolerance but imply different Jordan structures.

    The competing structures and their fit residuals are kept in
    ``candidates`` so callers (and the CLI) can report both.
    """

    def __init__(self, message, candidates=None):
        super().__init__(message)
        self.candidates = candidates if candidates is not None else []
