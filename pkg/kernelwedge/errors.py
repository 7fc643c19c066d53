class KernelWedgeError(Exception):
    """Base class for every error raised by kernelwedge."""


class ContractViolation(KernelWedgeError, ValueError):
    """Operands live on different spaces or belong to different operators."""


class PreconditionError(KernelWedgeError, ValueError):
    """An operation was called outside its documented domain."""


class StochasticOperatorError(PreconditionError):
    """The operator is stochastic (up to tolerance), so no completion exists."""


class SpectralRadiusError(PreconditionError):
    """A shift or series radius does not exceed the spectral radius estimate."""


class InfimumNotAttained(PreconditionError):
    """The Young infimum is 0 and has no minimizing t."""


class ConvergenceError(KernelWedgeError, ArithmeticError):
    """A series did not converge within budget or a linear solve was singular."""


class NumericalOverflowError(KernelWedgeError, ArithmeticError):
    """A computed quantity is not finite."""


class InternalConsistencyError(KernelWedgeError, ArithmeticError):
    """Numerical re-verification of a result guaranteed in exact arithmetic failed."""


class ConeRejected(KernelWedgeError, ValueError):
    """Raised by ``certify`` when a vector is not in C(S)."""

    def __init__(self, rejection):
        self.rejection = rejection
        super().__init__(rejection.describe())


class ParseError(KernelWedgeError, ValueError):
    """Malformed matrix/vector/weights file."""

    def __init__(self, path, line: int, message: str):
        self.path = str(path)
        self.line = line
        self.message = message
        super().__init__(f"{self.path}:{line}: {message}")
