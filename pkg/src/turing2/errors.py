"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class Turing2Error(Exception):
    exit_code = 1


class ConfigError(Turing2Error):
    exit_code = 2


class ExistenceViolated(Turing2Error):
    exit_code = 3


class NotTuringCapable(Turing2Error):
    exit_code = 4


class HardCase(Turing2Error):
    """Cubic self-interaction coefficients of opposite sign (kappa11*kappa22 < 0)."""

    exit_code = 5


class ModeOutsideWindow(Turing2Error, ValueError):
    exit_code = 2


class OutOfRange(Turing2Error, ValueError):
    exit_code = 2


class NotSingular(Turing2Error):
    exit_code = 2


class ResonantModes(Turing2Error):
    exit_code = 2


class SingularSystem(Turing2Error):
    exit_code = 2


class DegenerateCubic(Turing2Error):
    exit_code = 5


class OnBoundary(Turing2Error):
    exit_code = 2


class StepFailure(Turing2Error):
    exit_code = 10


class DenominatorBlowup(Turing2Error):
    exit_code = 11


class NonNegativityViolation(Turing2Error):
    exit_code = 12
