"""Exception hierarchy. Every error raised by the library derives from CoalformError."""


class CoalformError(Exception):
    pass


class ValidationError(CoalformError, ValueError):
    """Bad input: bounds, shapes, labels, missing payoffs."""


class InvalidBounds(ValidationError):
    pass


class SizeMismatch(ValidationError):
    pass


class StructureOutOfBounds(ValidationError):
    pass


class DuplicateLabel(ValidationError):
    pass


class MissingPayoff(ValidationError):
    pass


class UnknownPlayer(ValidationError):
    pass


class ProjectionUndefined(ValidationError):
    pass


class MechanismImageUncovered(ValidationError):
    pass


class StructureNotImplementable(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidInit(ValidationError):
    pass


class MissingEquilibrium(ValidationError):
    pass


class ScaleExceeded(ValidationError):
    pass


class SpecError(ValidationError):
    """Spec document problem, positioned by a field path such as ``payoffs[3].labels``."""

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class NonConvergence(CoalformError, RuntimeError):
    """Numeric solver could not produce a verified equilibrium."""

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)
