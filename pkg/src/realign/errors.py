"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible or unexpected dimensions."""


class ValidationError(ValueError):
    """An input fails a structural invariant (named in the message)."""


class HermiticityError(ValidationError):
    """Matrix is not Hermitian within tolerance."""


class TraceError(ValidationError):
    """Density matrix trace deviates from 1 beyond tolerance."""


class PositivityError(ValidationError):
    """Density matrix has an eigenvalue below the PSD tolerance."""


class NumericalError(RuntimeError):
    """A computed quantity is outside the range round-off can explain."""


class ConvergenceError(NumericalError):
    """An iterative solve did not reach tolerance in the sweep budget."""
