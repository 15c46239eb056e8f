""" Exact quantum Fourier transform, F[k][j] = exp(+2 pi i k j / N) / sqrt(N) """
import math

from ..circuit import Circuit, adjoint, controlled, h, rz, swap
from ..exceptions import InvalidParams


def qft_circuit(m: int, swaps: bool = True) -> Circuit:
    """Without the final swaps the output register comes out bit-reversed."""
    if m < 1:
        raise InvalidParams("QFT needs at least one qubit", m=m)
    gates = []
    for i in reversed(range(m)):
        gates.append(h(i))
        for l in reversed(range(i)):
            theta = 2 * math.pi / 2 ** (i - l + 1)
            gates.append(controlled(rz(i, theta), [(l, True)]))
    if swaps:
        for i in range(m // 2):
            gates.append(swap(i, m - 1 - i))
    return Circuit(m, 0, gates)


def iqft_circuit(m: int, swaps: bool = True) -> Circuit:
    """Without the leading swaps the input register is read bit-reversed."""
    return adjoint(qft_circuit(m, swaps))
