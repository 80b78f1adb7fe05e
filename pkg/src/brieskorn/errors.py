"""Exception hierarchy shared by the library and the command line."""


class BrieskornError(Exception):
    """Base class for all errors raised by this package."""


class SeifertError(BrieskornError, ValueError):
    """Invalid Seifert data (non-coprime multiplicities, bad ranges, ...)."""


class DiagramError(BrieskornError, ValueError):
    """Malformed or unsupported planar diagram."""


class ConventionError(DiagramError):
    """A constructed diagram failed a structural gate (e.g. two components)."""


class NumericalFailure(BrieskornError, ArithmeticError):
    """A floating point construction missed its residual tolerance."""


class InconsistencyError(BrieskornError, RuntimeError):
    """Two independent computations of the same quantity disagree."""


class TheoremViolation(BrieskornError):
    """A hard identity (integrality/nonnegativity of Floer ranks) failed.

    ``inputs`` carries the offending values so callers can report them.
    """

    def __init__(self, message, **inputs):
        super().__init__(message)
        self.inputs = inputs


class ResourceLimit(BrieskornError):
    """A computation would exceed its configured budget."""
