"""Exception hierarchy. Every error carries a stable ``code`` string."""


class OrthoSPSError(Exception):
    code = "E-GENERIC"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def __str__(self):
        return f"{self.code}: {self.args[0]}"


class OrderError(OrthoSPSError):
    """The supplied order pairs contain a cycle (antisymmetry violation)."""

    code = "E-ORDER"


class LatticeError(OrthoSPSError):
    """Some pair of elements has no infimum or no supremum."""

    code = "E-LATTICE"


class UnknownElementError(OrthoSPSError, KeyError):
    code = "E-UNKNOWN-ELEMENT"


class UnknownStateError(OrthoSPSError, KeyError):
    code = "E-UNKNOWN-STATE"


class SizeCapError(OrthoSPSError):
    code = "E-SIZE-CAP"


class AxiomPreconditionError(OrthoSPSError):
    """AO1 or AO2 does not hold where an operation requires both."""

    code = "E-PRE-AXIOMS"


class ParseError(OrthoSPSError):
    code = "E-PARSE"

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class TheoremViolation(OrthoSPSError, AssertionError):
    """A machine-checked theorem failed on a concrete instance.

    This always indicates a bug in the implementation.
    """

    code = "THEOREM-VIOLATION"
