"""Exception types shared across the package."""


class CoreVarietyError(Exception):
    pass


class DependentBasis(CoreVarietyError, ValueError):
    """Basis functions are linearly dependent on the ground set."""


class UnknownLabel(CoreVarietyError, KeyError):
    pass


class NoMeasure(CoreVarietyError, ValueError):
    """The functional has no representing measure (precondition failure)."""


class NotInCoreVariety(CoreVarietyError, ValueError):
    pass


class InvalidNesting(CoreVarietyError, ValueError):
    pass


class InternalInfeasible(CoreVarietyError, RuntimeError):
    """An LP that theory guarantees feasible came back infeasible."""


class InvariantViolation(CoreVarietyError, RuntimeError):
    pass


class ParseError(CoreVarietyError, ValueError):
    pass


class StaircaseCertificationError(InvariantViolation):
    """The generated staircase instance did not produce the expected chain."""

    def __init__(self, message, system=None, functional=None, trace=None):
        super().__init__(message)
        self.system = system
        self.functional = functional
        self.trace = trace
