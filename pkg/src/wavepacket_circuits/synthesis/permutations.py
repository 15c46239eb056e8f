""" Circuits for the index permutations used by the reshuffles """
import numpy as np

from ..circuit import Circuit, adjoint, circuit_to_unitary, cnot, mcx, swap, x
from ..exceptions import InvalidParams, NotAPermutation

# an entry counts as 1 above 1 - PERM_TOLERANCE and as 0 below PERM_TOLERANCE
PERM_TOLERANCE = 1e-8


def shift_circuit(m: int) -> Circuit:
    """Cyclic increment |x> -> |x + 1 mod 2^m>."""
    if m < 1:
        raise InvalidParams("shift needs at least one qubit", m=m)
    gates = [mcx([(c, True) for c in range(t)], t) for t in reversed(range(m))]
    return Circuit(m, 0, gates)


def r_perm_circuit(m: int) -> Circuit:
    """
    |j> -> |2j> and |M-1-j> -> |2j+1> for j < M/2: the top bit is XORed into
    every lower bit, then rotated down to bit 0.
    """
    if m < 1:
        raise InvalidParams("R permutation needs at least one qubit", m=m)
    gates = [cnot(m - 1, i) for i in reversed(range(m - 1))]
    gates += [swap(i, i - 1) for i in reversed(range(1, m))]
    return Circuit(m, 0, gates)


def q_perm_circuit(m: int) -> Circuit:
    """
    Q_M = R_M (I (x) L) CNOT (I (x) L)^dagger, with the CNOT from the top qubit
    onto qubit 0.
    """
    if m < 2:
        raise InvalidParams("Q permutation needs at least two qubits", m=m)
    lower = list(range(m - 1))
    shift = shift_circuit(m - 1).placed(lower, m)
    return (
        adjoint(shift)
        .extend([cnot(m - 1, 0)])
        .then(shift, r_perm_circuit(m))
    )


def s_perm_circuit(n: int, b: int) -> Circuit:
    """S_{N,B} = (I (x) CNOT (x) I)(R_{N/B} (x) I_B), acting on the top n-b qubits."""
    if b < 0 or n < b + 2:
        raise InvalidParams(f"S permutation needs n >= b + 2, got n={n}, b={b}", n=n, b=b)
    top = list(range(b, n))
    return r_perm_circuit(n - b).placed(top, n).extend([cnot(b + 1, b)])


def wire_permutation_circuit(destinations) -> Circuit:
    """
    Moves the bit on wire w to wire destinations[w]. Each cycle c0 -> c1 -> ...
    becomes SWAP(c0, c1), SWAP(c0, c2), ...
    """
    m = len(destinations)
    if sorted(destinations) != list(range(m)):
        raise InvalidParams(f"{list(destinations)} is not a permutation of the wires")
    gates = []
    done = [False] * m
    for start in range(m):
        done[start] = True
        wire = destinations[start]
        while not done[wire]:
            gates.append(swap(start, wire))
            done[wire] = True
            wire = destinations[wire]
    return Circuit(m, 0, gates)


def folded_s_perm_circuit(n: int, b: int) -> Circuit:
    """
    Rev_{b+1} S_{N,B} Rev_n, the bit reversals of F_N and F_2B folded into S_{N,B}.
    CNOTs form the XORed bits in place, then one wire permutation moves every
    bit where the product sends it.
    """
    if b < 0 or n < b + 2:
        raise InvalidParams(f"S permutation needs n >= b + 2, got n={n}, b={b}", n=n, b=b)
    gates = [cnot(0, k) for k in range(1, n - b - 1)]
    gates.append(cnot(n - b - 1, 0))
    destinations = [0] * n
    destinations[0] = b + 1
    for k in range(1, n - b - 1):
        destinations[k] = n - k
    for q in range(b + 1):
        destinations[n - 1 - b + q] = q
    return Circuit(n, 0, gates).then(wire_permutation_circuit(destinations))


def t_perm_circuit(n: int) -> Circuit:
    """Transposes the first and third quarter of the indices."""
    if n < 2:
        raise InvalidParams("T permutation needs at least two qubits", n=n)
    return Circuit(n, 0, [cnot(n - 2, n - 1, on=False)])


def wq_circuit(n: int, j: int) -> Circuit:
    """
    Groups the top-j patterns 0..01 -> 1..10 and fixes 1..11:
    zero-controlled NOTs from the top qubit onto qubits n-2..n-j+1, then
    SWAP(n-1, n-j).
    """
    if not 2 <= j <= n:
        raise InvalidParams(f"W_Q needs 2 <= j <= n, got j={j}, n={n}", n=n, j=j)
    gates = [cnot(n - 1, t, on=False) for t in range(n - 2, n - j, -1)]
    gates.append(swap(n - 1, n - j))
    return Circuit(n, 0, gates)


def perm_table(c: Circuit) -> np.ndarray:
    """sigma with sigma[x] = the unique y such that |<y|U|x>| is 1."""
    u = np.abs(np.asarray(circuit_to_unitary(c)))
    table = np.argmax(u, axis=0)
    for column in range(u.shape[1]):
        col = u[:, column]
        bad = (col > PERM_TOLERANCE) & (col < 1 - PERM_TOLERANCE)
        if bad.any():
            raise NotAPermutation(column, float(col[bad][0]))
        if np.count_nonzero(col >= 1 - PERM_TOLERANCE) != 1:
            raise NotAPermutation(column, float(col.max()))
    return table
