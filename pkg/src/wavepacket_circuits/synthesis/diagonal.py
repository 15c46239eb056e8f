""" Diagonal unitaries exp(i q(A)) from multilinear expansions into controlled Rz """
import functools
import itertools
import math
from typing import List, Sequence, Tuple, Union

import chex
import jax.numpy as jnp
import numpy as np
from flax import struct
from numpy.polynomial import Polynomial

from ..circuit import Circuit, Gate, controlled, rz, x
from ..exceptions import DimensionMismatch, InvalidParams, TooLarge
from .profiles import BetaProfile, eval_beta

MAX_DEGREE = 16
MAX_TERMS = 10**6

# rotations this close to a multiple of 2 pi are dropped
ANGLE_EPSILON = 1e-14


@functools.lru_cache(maxsize=None)
def monomial_expand(m: int, s: int) -> List[Tuple[Tuple[int, ...], int]]:
    """
    Exact integer c_J with x^s = sum_J c_J prod_{j in J} x_j for every m-bit x.
    Only subsets with |J| <= s carry weight, so the guard counts those subsets.
    """
    if s < 0 or s > MAX_DEGREE:
        raise TooLarge(m, s)
    if sum(math.comb(m, size) for size in range(min(s, m) + 1)) > MAX_TERMS:
        raise TooLarge(m, s)
    if s == 0:
        return [((), 1)]
    terms = []
    for size in range(1, min(s, m) + 1):
        # c_J = sum over k_j >= 1 with sum k_j = s of s! / prod k_j! * prod 2^(j k_j)
        parts = []
        for cuts in itertools.combinations(range(1, s), size - 1):
            bounds = (0,) + cuts + (s,)
            parts.append([hi - lo for lo, hi in zip(bounds, bounds[1:])])
        for subset in itertools.combinations(range(m), size):
            c = 0
            for ks in parts:
                term = math.factorial(s)
                for j, k in zip(subset, ks):
                    term = term // math.factorial(k) * 2 ** (j * k)
                c += term
            terms.append((subset, c))
    return terms


def _as_polynomial(q) -> Polynomial:
    poly = q if isinstance(q, Polynomial) else Polynomial(np.asarray(q, dtype=float))
    coef = poly.coef
    if not np.all(np.isfinite(coef)):
        raise InvalidParams("phase polynomial has non-finite coefficients")
    return Polynomial(np.trim_zeros(coef, "b") if np.any(coef) else [0.0])


def multilinear_phases(m: int, q) -> List[Tuple[Tuple[int, ...], float]]:
    """Collects sum_s q_s x^s into one angle per bit subset."""
    poly = _as_polynomial(q)
    if poly.degree() > MAX_DEGREE:
        raise TooLarge(m, poly.degree())
    angles = {}
    for s, coefficient in enumerate(poly.coef):
        if coefficient == 0:
            continue
        for subset, c in monomial_expand(m, s):
            angles[subset] = angles.get(subset, 0.0) + coefficient * c
    return sorted(angles.items(), key=lambda item: (len(item[0]), item[0]))


def _constant_phase(theta, register, controls) -> List[Gate]:
    if controls:
        # phase on the subspace selected by the controls: rotate one control
        ordered = sorted(controls, key=lambda c: not c[1])
        (target, on), rest = ordered[0], ordered[1:]
        gate = controlled(rz(target, theta), rest)
        return [gate] if on else [x(target), gate, x(target)]
    if register:
        t = register[0]
        return [x(t), rz(t, theta), x(t), rz(t, theta)]
    raise InvalidParams("a constant phase needs at least one qubit")


def phase_polynomial_gates(
    register: Sequence[int], q, controls: Sequence[Tuple[int, bool]] = ()
) -> List[Gate]:
    """
    Gates for diag{exp(i q(x))} where register[i] holds bit i of x, applied only
    where all controls match.
    """
    register = list(register)
    controls = list(controls)
    gates = []
    for subset, angle in multilinear_phases(len(register), q):
        theta = math.remainder(angle, 2 * math.pi)
        if abs(theta) < ANGLE_EPSILON:
            continue
        if not subset:
            gates.extend(_constant_phase(theta, register, controls))
            continue
        qubits = [register[i] for i in subset]
        target = qubits[-1]
        gate = controlled(rz(target, theta), [(c, True) for c in qubits[:-1]])
        gates.append(controlled(gate, controls))
    return gates


def exp_poly_circuit(m: int, q) -> Circuit:
    """diag{exp(i q(x)) : x in [2^m]} on m qubits."""
    if m < 1:
        raise InvalidParams("phase polynomial needs at least one qubit", m=m)
    return Circuit(m, 0, phase_polynomial_gates(range(m), q))


@struct.dataclass
class DiagonalSpec:
    """Affine diagonal d_k = offset + scale * k for k < size."""

    scale: float = struct.field(pytree_node=False)
    offset: float = struct.field(pytree_node=False)
    size: int = struct.field(pytree_node=False)

    @classmethod
    def d_plus(cls, b: int) -> "DiagonalSpec":
        return cls(1.0 / 2**b, 0.0, 2 ** (b - 1))

    @classmethod
    def d_minus(cls, b: int) -> "DiagonalSpec":
        return cls(1.0 / 2**b, -0.5, 2 ** (b - 1))

    @classmethod
    def wavelet(cls, n: int, j: int, padded: bool = False) -> "DiagonalSpec":
        """-1/2 + 3 q 2^(j-1) / N over q < N / (3 2^j), or q < N / 2^j padded."""
        block = 2 ** (n - j)
        size = block if padded else -(-block // 3)
        return cls(3.0 / (2 * block), -0.5, size)

    def entries(self) -> np.ndarray:
        return self.offset + self.scale * np.arange(self.size)


def exp_affine_of_beta_diag(
    dim: int,
    d: DiagonalSpec,
    alpha: float,
    gamma: float,
    delta: float,
    beta: Union[BetaProfile, None],
) -> chex.Array:
    """diag{exp(i (alpha beta(d_k) + gamma d_k + delta))}"""
    if dim != d.size:
        raise DimensionMismatch(d.size, dim)
    entries = jnp.asarray(d.entries())
    phase = gamma * entries + delta
    if alpha:
        phase = phase + alpha * eval_beta(beta, entries)
    return jnp.diag(jnp.exp(1j * phase))
