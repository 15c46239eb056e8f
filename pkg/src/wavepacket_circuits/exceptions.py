""" Errors raised by circuit synthesis, evaluation and the reference oracle """


class WavePacketError(Exception):
    pass


class InvalidParams(WavePacketError, ValueError):
    def __init__(self, message, **params):
        super().__init__(message)
        self.params = params


class DimensionTooLarge(WavePacketError):
    def __init__(self, num_qubits, limit):
        super().__init__(
            f"{num_qubits} qubits exceed the dense evaluation limit of {limit}"
        )
        self.num_qubits = num_qubits
        self.limit = limit


class DimensionMismatch(WavePacketError, ValueError):
    def __init__(self, expected, got):
        super().__init__(f"expected dimension {expected}, got {got}")
        self.expected = expected
        self.got = got


class AncillaLeakage(WavePacketError):
    def __init__(self, leakage):
        super().__init__(f"ancillas not returned to |0>: leaked amplitude {leakage:.3e}")
        self.leakage = leakage


class NotAPermutation(WavePacketError):
    def __init__(self, column, amplitude):
        super().__init__(
            f"column {column} has an entry of magnitude {amplitude:.3e}, not a 0/1 permutation"
        )
        self.column = column
        self.amplitude = amplitude


class DomainError(WavePacketError, ValueError):
    def __init__(self, x, lo=-1.0, hi=1.0):
        super().__init__(f"beta is defined on [{lo:g}, {hi:g}], got {x}")
        self.x = x
        self.lo = lo
        self.hi = hi


class TooLarge(WavePacketError):
    def __init__(self, num_qubits, degree):
        super().__init__(
            f"monomial expansion of degree {degree} on {num_qubits} qubits is too large"
        )
        self.num_qubits = num_qubits
        self.degree = degree
