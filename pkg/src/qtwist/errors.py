"""Exception types shared across the package."""


class QtwistError(Exception):
    """Base class for all errors raised by qtwist."""


class StructuralError(QtwistError, ValueError):
    """Inputs of incompatible shape or from different universes."""


class NotMonomialUnit(QtwistError, ArithmeticError):
    """A group-ring element that is not of the form +-1*(g) was inverted."""


class UnsupportedGroup(QtwistError, ValueError):
    """Ideal arithmetic was requested over a group where it is not decided."""


class QuandleAxiomError(StructuralError):
    def __init__(self, violation):
        super().__init__(f"not a quandle: {violation}")
        self.violation = violation


class CocycleViolation(QtwistError, ValueError):
    def __init__(self, violation):
        super().__init__(f"not a quandle 2-cocycle: {violation}")
        self.violation = violation


class NonColoringAssignment(QtwistError, ValueError):
    """An assignment does not satisfy every relator of a presentation."""


class NonHomomorphism(QtwistError, ValueError):
    """A map between finite quandles does not preserve the operation."""


class LoopNotClosed(QtwistError, ValueError):
    """A loop word of a marked presentation does not return to the base point."""


class NotConnected(QtwistError, ValueError):
    """A connected quandle was required."""


class ParseError(QtwistError, ValueError):
    def __init__(self, path, line, expected, got=None):
        where = f"{path}:{line}" if line is not None else str(path)
        msg = f"{where}: expected {expected}"
        if got is not None:
            msg += f", got {got!r}"
        super().__init__(msg)
        self.path = path
        self.line = line
        self.expected = expected
