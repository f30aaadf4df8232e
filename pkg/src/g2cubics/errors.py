"""Exception types raised by the library."""


class G2CubicsError(Exception):
    pass


class MixedRingError(G2CubicsError, TypeError):
    """Exact and floating scalars were combined in one operation."""


class NormNotThree(G2CubicsError, ValueError):
    def __init__(self, norm, message=None):
        self.norm = norm
        super().__init__(message or f"expected an imaginary octonion of norm 3, got norm {norm}")


class ZeroTorusCoordinate(G2CubicsError, ZeroDivisionError):
    pass


class RealizationFailed(G2CubicsError, RuntimeError):
    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"could not realise invariants (residual {residual:.3e})")


class OrbitTruncated(G2CubicsError, RuntimeError):
    def __init__(self, size, partial=None):
        self.size = size
        self.partial = partial
        super().__init__(f"orbit enumeration stopped after {size} states")


class ClosureTruncated(G2CubicsError, RuntimeError):
    def __init__(self, size):
        self.size = size
        super().__init__(f"group closure exceeded {size} elements")


class DictionaryNotFound(G2CubicsError, LookupError):
    pass


class NotUnimodular(G2CubicsError, ValueError):
    pass


class NotARoot(G2CubicsError, ValueError):
    pass


class BadIndex(G2CubicsError, IndexError):
    pass
