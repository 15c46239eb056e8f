""" Shannon and Meyer wavelet transform circuits """
import math
from typing import List, Sequence, Tuple

import chex
import jax.numpy as jnp
import numpy as np
from numpy.polynomial import Polynomial
from transformers.utils import logging

from .. import tensor
from ..circuit import (
    Circuit,
    Gate,
    adjoint,
    cancel_adjacent_inverses,
    circuit_to_unitary,
    controlled,
    h,
    mcx,
    x,
)
from ..exceptions import InvalidParams
from .diagonal import phase_polynomial_gates
from .permutations import wq_circuit
from .profiles import BetaProfile, eval_beta, eval_g, get_profile
from .qft import iqft_circuit, qft_circuit

logger = logging.get_logger(__name__)

Control = Tuple[int, bool]


def _check_meyer(n: int):
    if n < 3:
        raise InvalidParams(f"Meyer wavelets need n >= 3, got n={n}", n=n)


def _check_level(n: int, j: int):
    if not 1 <= j <= n:
        raise InvalidParams(f"wavelet level must satisfy 1 <= j <= n, got j={j}, n={n}", n=n, j=j)


def shannon_reshuffle_circuit(n: int) -> Circuit:
    """
    S_N unrolled: at level k the quarter transposition T_K, then F_{K/2}^dagger on
    the lower k-1 qubits when qubit k-1 is off, recursing into the on branch.
    """
    if n < 1:
        raise InvalidParams("reshuffle needs at least one qubit", n=n)
    circuit = Circuit(n)
    for k in range(n, 1, -1):
        above = [(q, True) for q in range(k, n)]
        transposition = mcx(above + [(k - 2, False)], k - 1)
        window = iqft_circuit(k - 1).placed(range(k - 1), n)
        circuit = circuit.extend([transposition])
        circuit = circuit.then(window.with_controls(above + [(k - 1, False)]))
    return circuit.extend([mcx([(q, True) for q in range(1, n)], 0)])


def shannon_circuit(n: int) -> Circuit:
    """U_WS = S_N F_N"""
    if n < 2:
        raise InvalidParams(f"Shannon wavelets need n >= 2, got n={n}", n=n)
    circuit = qft_circuit(n).then(shannon_reshuffle_circuit(n))
    logger.info(f"Shannon wavelet n={n}: {len(circuit)} gates")
    return circuit


def psi_ms_hat(omega, beta) -> chex.Array:
    """Phase-shifted Meyer mother wavelet in frequency, conjugate symmetric."""
    beta = get_profile(beta)
    omega = jnp.asarray(omega, dtype=jnp.float64)
    w = jnp.abs(omega)
    inner = (w >= 2 * jnp.pi / 3) & (w <= 4 * jnp.pi / 3)
    outer = (w > 4 * jnp.pi / 3) & (w <= 8 * jnp.pi / 3)
    # clip keeps eval_g inside its domain on the masked-out branches
    near = eval_g(beta, jnp.clip(1.5 * w - 2 * jnp.pi, -jnp.pi, jnp.pi))
    far = eval_g(beta, jnp.clip(0.75 * w - jnp.pi, -jnp.pi, jnp.pi))
    magnitude = jnp.where(inner, near, jnp.where(outer, far, 0.0))
    value = magnitude * jnp.exp(1j * (jnp.pi / 4 - w / 2))
    return jnp.where(omega < 0, jnp.conj(value), value)


def threshold_prefixes(m: int, bound: int) -> List[str]:
    """MSB-first bit prefixes whose matches are exactly the m-bit x < bound."""
    if bound <= 0:
        return []
    if bound >= 2**m:
        return [""]
    bits = format(bound, f"0{m}b")
    return [bits[:i] + "0" for i, bit in enumerate(bits) if bit == "1"]


def comparator_prefixes(m: int) -> List[str]:
    """Prefixes of the m-bit x with 3x < 2^m."""
    if m < 2:
        raise InvalidParams(f"comparator needs m >= 2, got m={m}", m=m)
    return threshold_prefixes(m, 2**m // 3 + 1)


def comparator_gates(
    register: Sequence[int],
    prefixes: Sequence[str],
    flag: int,
    extra: Sequence[Control] = (),
    complement: bool = False,
) -> List[Gate]:
    """
    Flips flag for inputs matching one of the prefixes; register is MSB first.
    With complement the prefixes are matched against the inverted register.
    """
    gates = []
    for prefix in prefixes:
        controls = [(register[i], (bit == "1") != complement) for i, bit in enumerate(prefix)]
        gates.append(mcx(controls + list(extra), flag))
    return gates


def _level_d(n: int, j: int) -> np.ndarray:
    block = 2 ** (n - j)
    size = -(-block // 3)
    return -0.5 + 3.0 * np.arange(size) / (2 * block)


def wk_matrix(n: int, j: int, beta) -> chex.Array:
    """W_K on 2 N / 2^j indices, entrywise with identity padding in each half."""
    if not 2 <= j <= n:
        raise InvalidParams(f"W_K needs 2 <= j <= n, got j={j}, n={n}", n=n, j=j)
    beta = get_profile(beta)
    block = 2 ** (n - j)
    d = _level_d(n, j)
    q = np.arange(d.size)
    profile = np.asarray(eval_beta(beta, d))
    c, s = np.cos(np.pi / 2 * profile), np.sin(np.pi / 2 * profile)
    w = np.eye(2 * block, dtype=np.complex128)
    w[q, q] = np.exp(1j * np.pi * (d / 3 + 5 / 12)) * c
    w[q, block + q] = np.exp(1j * np.pi * (d / 3 - 1 / 12)) * s
    w[block + q, q] = -np.exp(1j * np.pi * (2 * d / 3 + 1 / 12)) * s
    w[block + q, block + q] = -np.exp(1j * np.pi * (2 * d / 3 + 7 / 12)) * c
    return jnp.asarray(w)


def wk_factored_matrix(n: int, j: int, beta) -> chex.Array:
    """diag(outer phases) (H (x) I) diag(e^{-i pi beta(D)/2}, e^{i pi beta(D)/2}) (H (x) I)"""
    if not 2 <= j <= n:
        raise InvalidParams(f"W_K needs 2 <= j <= n, got j={j}, n={n}", n=n, j=j)
    beta = get_profile(beta)
    block = 2 ** (n - j)
    d = _level_d(n, j)
    theta = np.zeros(block)
    theta[: d.size] = np.pi / 2 * np.asarray(eval_beta(beta, d))
    upper, lower = np.zeros(block), np.zeros(block)
    upper[: d.size] = np.pi * (d / 3 + 5 / 12)
    lower[: d.size] = np.pi * (2 * d / 3 - 5 / 12)
    hadamard = tensor.kron(tensor.HADAMARD, jnp.eye(block))
    middle = jnp.diag(jnp.exp(1j * jnp.concatenate([-theta, theta])))
    outer = jnp.diag(jnp.exp(1j * jnp.concatenate([upper, lower])))
    return outer @ hadamard @ middle @ hadamard


def wk_tilde_matrix(n: int, beta) -> chex.Array:
    """Level-1 diagonal on N/2 indices: e^{i pi(-5/12 + 2D/3 - beta(D)/2)}, then ones."""
    _check_meyer(n)
    beta = get_profile(beta)
    d = _level_d(n, 1)
    phase = np.zeros(2 ** (n - 1))
    phase[: d.size] = np.pi * (-5 / 12 + 2 * d / 3 - np.asarray(eval_beta(beta, d)) / 2)
    return jnp.diag(jnp.exp(1j * jnp.asarray(phase)))


def wr_reference(n: int, j: int, beta) -> chex.Array:
    """Data unitary W_R at level j assembled from the block matrices."""
    _check_level(n, j)
    size = 2**n
    if j == 1:
        return tensor.direct_sum(jnp.eye(size // 2), wk_tilde_matrix(n, beta))
    grouping = jnp.asarray(circuit_to_unitary(wq_circuit(n, j)))
    block = wk_matrix(n, j, beta)
    embedded = tensor.direct_sum(jnp.eye(size - block.shape[0]), block)
    return tensor.dagger(grouping) @ embedded @ grouping


def _mixed_body(
    hbit: int,
    lower: Sequence[int],
    flag: int,
    middle: Tuple[Polynomial, Polynomial],
    outer: Tuple[Polynomial, Polynomial],
) -> List[Gate]:
    """Flag-controlled diag(outer) (H (x) I) diag(middle) (H (x) I) on hbit and lower."""
    on = [(flag, True)]
    gates = [controlled(h(hbit), on)]
    for value, phase in zip((False, True), middle):
        gates += phase_polynomial_gates(lower, phase, on + [(hbit, value)])
    gates.append(controlled(h(hbit), on))
    for value, phase in zip((False, True), outer):
        gates += phase_polynomial_gates(lower, phase, on + [(hbit, value)])
    return gates


def wr_circuit(n: int, j: int, beta) -> Circuit:
    """
    W_R at level j with the comparator flag on ancilla n. Level 1 is a single
    flag-controlled phase on N/2 + q; deeper levels group +-N/2^j + q with W_Q and
    mix the pair under the flag.
    """
    _check_level(n, j)
    beta = get_profile(beta)
    m, flag = n - j, n
    register = list(reversed(range(m)))
    lower = list(range(m))
    profile = beta.composed(-3.0 / 2 ** (m + 1), 0.5)
    prefixes = threshold_prefixes(m, 2**m // 3 + 1)
    if j == 1:
        compute = comparator_gates(register, prefixes, flag, [(n - 1, True)])
        phase = Polynomial([-3 * math.pi / 4, math.pi / 2**m]) - math.pi / 2 * profile
        body = phase_polynomial_gates(lower, phase, [(flag, True)])
        return Circuit(n, 1, compute + body + compute[::-1])
    extra = [(t, True) for t in range(m + 1, n)]
    compute = comparator_gates(register, prefixes, flag, extra)
    body = _mixed_body(
        m,
        lower,
        flag,
        middle=(-math.pi / 2 * profile, math.pi / 2 * profile),
        outer=(
            Polynomial([math.pi / 4, math.pi / 2 ** (m + 1)]),
            Polynomial([-3 * math.pi / 4, math.pi / 2**m]),
        ),
    )
    grouping = wq_circuit(n, j)
    gates = list(grouping.gates) + compute + body + compute[::-1]
    return Circuit(n, 1, gates + list(adjoint(grouping).gates))


def wl_circuit(n: int, j: int, beta) -> Circuit:
    """
    W_L at level j on the indices +-N/2^j - q, 1 <= q < N/(3 2^j). The register
    holds r = 2^m - q and the comparator runs on its complement q - 1.
    """
    _check_level(n, j)
    beta = get_profile(beta)
    m, flag = n - j, n
    bound = 2**m // 3
    if bound == 0:
        return Circuit(n, 1)
    register = list(reversed(range(m)))
    lower = list(range(m))
    profile = beta.composed(3.0 / 2 ** (m + 1), -1.0)
    prefixes = threshold_prefixes(m, bound)
    if j == 1:
        compute = comparator_gates(register, prefixes, flag, [(n - 1, False)], complement=True)
        phase = Polynomial([-math.pi / 4, math.pi / 2**m]) + math.pi / 2 * profile
        body = phase_polynomial_gates(lower, phase, [(flag, True)])
        return Circuit(n, 1, compute + body + compute[::-1])
    extra = [(t, True) for t in range(m + 1, n)]
    compute = comparator_gates(register, prefixes, flag, extra, complement=True)
    body = _mixed_body(
        m,
        lower,
        flag,
        middle=(math.pi / 2 * profile, -math.pi / 2 * profile),
        outer=(
            Polynomial([-math.pi / 4, math.pi / 2**m]),
            Polynomial([-3 * math.pi / 4, math.pi / 2 ** (m + 1)]),
        ),
    )
    grouping = wq_circuit(n, j)
    gates = [x(m)] + list(grouping.gates) + compute + body + compute[::-1]
    return Circuit(n, 1, gates + list(adjoint(grouping).gates) + [x(m)])


def tw_circuit(n: int, beta) -> Circuit:
    """T_W as the product of every W_R and W_L level; the levels commute."""
    _check_meyer(n)
    circuit = Circuit(n, 1)
    for j in range(1, n + 1):
        circuit = circuit.then(wr_circuit(n, j, beta))
    for j in range(1, n + 1):
        circuit = circuit.then(wl_circuit(n, j, beta))
    return cancel_adjacent_inverses(circuit)


def meyer_circuit(n: int, beta) -> Circuit:
    """U_WB = S_N T_W F_N"""
    _check_meyer(n)
    beta = get_profile(beta)
    circuit = qft_circuit(n).then(tw_circuit(n, beta), shannon_reshuffle_circuit(n))
    logger.info(
        f"Meyer wavelet n={n} beta={beta.name}: {len(circuit)} gates, "
        f"{circuit.num_ancilla} ancilla"
    )
    return circuit
