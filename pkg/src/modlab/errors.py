"""Exception and warning types shared across the package.

NumericalGuardError marks failures of runtime numerical guards (as opposed
to bad arguments); the CLI maps them to a dedicated exit code.
"""


class ModlabError(Exception):
    """Base class for all package errors."""


class NumericalGuardError(ModlabError):
    """A numerical guard tripped at run time."""


# grid construction and transforms
class NonPowerOfTwo(ModlabError):
    pass


class NonPositiveDomain(ModlabError):
    pass


class GridMismatch(ModlabError):
    pass


# state constructors
class EdgeMargin(ModlabError):
    pass


class ResolutionGuard(ModlabError):
    pass


class DisjointnessViolated(ModlabError):
    pass


class ZeroState(ModlabError):
    pass


class BadInterval(ModlabError):
    pass


# time evolution
class NonFiniteAmplitude(NumericalGuardError):
    pass


class PhaseWrapWarning(UserWarning):
    """Kinetic phase advance per step exceeded the wrap guard."""


# observables
class InternalInconsistency(NumericalGuardError):
    """Two independent computations of the same quantity disagree."""


class PeriodUnderResolved(NumericalGuardError):
    pass


class DegreeCap(ModlabError):
    pass


class NonUniformSampling(ModlabError):
    pass


class OffLatticeL(ModlabError):
    pass


class NoPeaks(ModlabError):
    pass


class DegreeOverflowWarning(UserWarning):
    """A moment exceeded the representable range; series truncated."""


# operator matrices
class DimCap(ModlabError):
    pass


class NonDifferentiableV(ModlabError):
    pass


# flux-line scattering
class OutOfEnvelope(ModlabError):
    pass


class TruncationTooSmall(NumericalGuardError):
    pass


# experiment runner
class UnknownExperiment(ModlabError):
    pass


class SchemaViolation(ModlabError):
    pass


class IoFailure(ModlabError):
    pass


class RegimeViolation(NumericalGuardError):
    pass
