"""Exception hierarchy shared by every nearvec module."""


class NearVecError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class NotPrime(NearVecError, ValueError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class SizeBoundExceeded(NearVecError):
    def __init__(self, what, size, bound):
        super().__init__(f"{what} has size {size}, above the bound {bound}")
        self.size = size
        self.bound = bound


class DivisionByZero(NearVecError, ZeroDivisionError):
    pass


class DimensionMismatch(NearVecError, ValueError):
    pass


class NotInQuasiKernel(NearVecError, ValueError):
    pass


class ZeroGenerator(NearVecError, ValueError):
    pass


class BlockIndexOutOfRange(NearVecError, IndexError):
    pass


class LengthMismatch(NearVecError, ValueError):
    pass


class NotInImage(NearVecError, ValueError):
    pass


class FieldMismatch(NearVecError, ValueError):
    pass


class FormulaSyntaxError(NearVecError):
    def __init__(self, position, expected, text=""):
        msg = f"at position {position}: expected {expected}"
        if text:
            msg += f"\n  {text}\n  {' ' * position}^"
        super().__init__(msg)
        self.position = position
        self.expected = expected


class UnboundVariable(NearVecError, KeyError):
    def __str__(self):
        return f"unbound variable {self.args[0]!r}"


class CapacityExceeded(NearVecError):
    def __init__(self, block, exclusions, capacity):
        super().__init__(
            f"block {block}: {exclusions} excluded points but only {capacity} elements"
        )
        self.block = block
        self.exclusions = exclusions
        self.capacity = capacity


class ZeroArgument(NearVecError, ValueError):
    pass


class DescriptorError(NearVecError, ValueError):
    pass


class InconsistencyError(NearVecError, AssertionError):
    """Two independent characterisations of the same property disagreed."""
