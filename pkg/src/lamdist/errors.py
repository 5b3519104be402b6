"""Exception hierarchy shared by the calculi."""


class LamDistError(Exception):
    """Base class for every domain error raised by this package."""


class NotCoinitialError(LamDistError, ValueError):
    """Two steps or derivations were combined although their sources differ."""


class InvalidStepError(LamDistError, ValueError):
    """A position does not designate a redex of the source term."""


class FuelExhaustedError(LamDistError, RuntimeError):
    """An internal iteration bound was hit.

    For developments this indicates a bug, since developments are finite.
    """


class DistTypeError(LamDistError, ValueError):
    """A distributive term is not typable."""

    def __init__(self, message, position=()):
        super().__init__(message)
        self.position = tuple(position)


class SubstitutionError(LamDistError, ValueError):
    """A type-directed substitution is undefined for its arguments."""


class RefinementError(LamDistError, ValueError):
    """A refinement precondition does not hold."""


class SpaceTooLargeError(LamDistError, RuntimeError):
    """A derivation space is not finite within the configured budget."""


class ParseError(LamDistError, ValueError):
    def __init__(self, message, text, offset):
        line = text.count("\n", 0, offset) + 1
        column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
