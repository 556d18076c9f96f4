"""Exception hierarchy shared by all modules.

Every mathematically meaningful failure raises a subclass of MathError so
the CLI can map it to a structured JSON error with a stable code.
"""


class MathError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self):
        return type(self).__name__


# -- scalars -----------------------------------------------------------------

class DivisionByZero(MathError):
    pass


class MixedFields(MathError):
    pass


class BadReduction(MathError):
    """A rational has a denominator divisible by the reduction prime."""


class NoReconstruction(MathError):
    """CRT residues admit no rational within the requested bound."""


# -- exterior algebra --------------------------------------------------------

class DegreeOverflow(MathError):
    pass


class WrongAmbient(MathError):
    pass


class WrongDimension(MathError):
    pass


class ZeroInput(MathError):
    pass


class ZeroVector(MathError):
    pass


# -- subspaces / plane families ----------------------------------------------

class MixedAmbient(MathError):
    pass


class GenerationFailed(MathError):
    pass


# -- lagrangian machinery ----------------------------------------------------

class NotIncident(MathError):
    pass


class NotIsotropic(MathError):
    pass


class NotAMember(MathError):
    pass


# -- polynomials ---------------------------------------------------------------

class NotDivisible(MathError):
    pass


class InconsistentEvaluations(MathError):
    pass


class BadChart(MathError):
    pass


class NotOnHypersurface(MathError):
    pass


# -- EPW sextics ---------------------------------------------------------------

class BadHyperplane(MathError):
    pass


class ConstructionDegenerate(MathError):
    pass


class SpanDeficient(MathError):
    pass


# -- curves --------------------------------------------------------------------

class BadFrame(MathError):
    pass


class NotACurve(MathError):
    pass


class InfeasibleInput(MathError):
    pass


class InternalInconsistency(MathError):
    """A computed report contradicts a proved constraint; indicates a bug."""
