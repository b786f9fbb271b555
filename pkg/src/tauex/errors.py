"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: input problems exit 4, resource caps
exit 3, violated properties exit 2.
"""


class TauexError(Exception):
    """Base class for all errors raised by tauex."""


class InputError(TauexError, ValueError):
    """Malformed or inconsistent user input."""


class SchemaError(InputError):
    pass


class AdmissibilityError(InputError):
    """A relation term has a path of length < 2."""


class NonParallelRelationError(InputError):
    pass


class AlgebraMismatchError(InputError):
    """Two modules (or a module and a morphism) live over different algebras."""


class DimensionNotCertifiedError(TauexError):
    """Paths of the nilpotency bound's length do not all vanish in the quotient."""


class ResourceError(TauexError):
    """An enumeration or search would exceed its configured cap."""

    def __init__(self, message, required=None, detail=None):
        super().__init__(message)
        self.required = required
        self.detail = detail


class UniverseError(TauexError):
    """A global computation was requested on an incomplete module universe."""


class InvariantViolation(TauexError):
    """An internal consistency check failed; indicates a bug or a false claim."""
