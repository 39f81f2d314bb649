"""Exception hierarchy shared by every revlogic module."""


class RevlogicError(Exception):
    """Base class for all toolkit errors."""


# permutations

class PermutationError(RevlogicError, ValueError):
    pass


class DuplicatePoint(PermutationError):
    pass


class OutOfRange(PermutationError):
    pass


class RepeatedPoint(PermutationError):
    pass


class CycleSyntaxError(PermutationError):
    pass


class DegreeMismatch(PermutationError):
    pass


# gates

class GateError(RevlogicError, ValueError):
    pass


class WidthMismatch(GateError):
    pass


class NonClassicalGate(GateError):
    """V and V-dagger have no basis-state action in this toolkit."""


class UnknownCost(GateError):
    pass


class Unsupported(GateError):
    pass


# circuits

class CircuitError(RevlogicError, ValueError):
    pass


class MissingInput(CircuitError):
    pass


class UnknownInput(CircuitError):
    pass


class TooWide(CircuitError):
    pass


class NetlistSyntaxError(CircuitError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NetlistSemanticError(CircuitError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


# designs / synthesis

class UnknownMode(RevlogicError, ValueError):
    pass


class UnknownDesign(RevlogicError, ValueError):
    pass


class SpecError(RevlogicError, ValueError):
    pass


class BoundsTooLarge(RevlogicError):
    pass
