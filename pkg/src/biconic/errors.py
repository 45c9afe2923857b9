"""Exception hierarchy for the biconic package.

Every domain error raised by the library derives from BiconicError, so
callers (and the CLI) can distinguish domain failures from programming
errors.
"""


class BiconicError(Exception):
    """Base class for all domain errors."""


# --- exact arithmetic ---------------------------------------------------

class PrecisionExhausted(BiconicError):
    """A p-adic operation would return a value with no known digits."""


class NotARoot(BiconicError):
    """Hensel lifting was started from a residue that is not a root."""


class NonsimpleRoot(BiconicError):
    """Hensel lifting was started from a root with vanishing derivative."""


class ZeroPolynomial(BiconicError):
    """Operation rejects the zero polynomial."""


class UnsupportedDegree(BiconicError):
    """Input degree exceeds the supported bound."""


class IncompatiblePrime(BiconicError):
    """Two p-adic objects live over different primes."""


# --- conics -------------------------------------------------------------

class ZeroForm(BiconicError):
    """A quadratic form expected to be nonzero is identically zero."""


class DegenerateConic(BiconicError):
    """Operation requires a rank-3 conic."""


class PointNotOnConic(BiconicError):
    """Base point of a parametrization does not lie on the conic."""


class CommonComponent(BiconicError):
    """Two conics share a component; their intersection is not a zero-cycle."""


class SearchBudgetExceeded(BiconicError):
    """Bounded point search hit its height bound without a conclusion."""


# --- surfaces -----------------------------------------------------------

class DegenerateData(BiconicError):
    """The (q, r1, r2) data does not define a valid double-cover surface."""


class IdenticallySingularPencil(BiconicError):
    """Every member of the conic pencil is singular."""


class IndeterminatePoint(BiconicError):
    """All four fibration coordinates vanish at the point."""


class PointNotOnSurface(BiconicError):
    """A point claimed to lie on the surface does not satisfy its equation."""


class SingularFiber(BiconicError):
    """Operation requires a smooth fiber."""


class NoRationalPoint(BiconicError):
    """A rational point was required but none exists (or none was found)."""


# --- propagation / local points -----------------------------------------

class SingularFiberAtNode(BiconicError):
    """A propagation node sits on a singular fiber of the expanding fibration."""


class ForbiddenParameter(BiconicError):
    """The expanding fiber is a rank-1 pencil member."""


class SeedOnSingularFiber(BiconicError):
    """The seed point does not lie on a smooth fiber of the first fibration."""


class TargetNotLiftable(BiconicError):
    """The steering target is not a smooth, Hensel-liftable residue point."""


class BadPrime(BiconicError):
    """The prime is excluded (p = 2 or divides the defining data)."""


class NotSmoothModP(BiconicError):
    """Residue point is not smooth, so it cannot be Hensel lifted."""


# --- CLI ----------------------------------------------------------------

class ParseError(BiconicError):
    """Surface spec file is malformed; carries line information."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
