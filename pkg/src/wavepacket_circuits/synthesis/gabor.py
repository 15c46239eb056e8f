""" Sharp and blended Gabor transform circuits """
import math
from typing import Dict, List, Sequence, Tuple

import chex
import jax.numpy as jnp
from flax import struct
from numpy.polynomial import Polynomial
from transformers.utils import logging

from .. import tensor
from ..circuit import Circuit, Gate, adjoint, controlled, custom, h
from ..exceptions import InvalidParams
from .diagonal import DiagonalSpec, exp_affine_of_beta_diag, phase_polynomial_gates
from .permutations import folded_s_perm_circuit, q_perm_circuit, s_perm_circuit
from .profiles import BetaProfile, get_profile
from .qft import iqft_circuit, qft_circuit

logger = logging.get_logger(__name__)


def default_window_exponent(n: int) -> int:
    return (n - 1) // 2


@struct.dataclass
class GaborParams:
    n: int = struct.field(pytree_node=False)
    b: int = struct.field(pytree_node=False)
    beta: BetaProfile = struct.field(pytree_node=False, default=None)

    def __post_init__(self):
        if self.beta is not None:
            object.__setattr__(self, "beta", get_profile(self.beta))

    @property
    def size(self) -> int:
        return 2**self.n

    @property
    def window(self) -> int:
        return 2**self.b

    def check_sharp(self):
        if self.b < 0 or self.n < self.b + 2:
            raise InvalidParams(
                f"sharp Gabor needs 0 <= b <= n - 2, got n={self.n}, b={self.b}",
                n=self.n,
                b=self.b,
            )

    def check_blended(self):
        if self.b < 1 or self.n < self.b + 3:
            raise InvalidParams(
                f"blended Gabor needs 1 <= b and n >= b + 3, got n={self.n}, b={self.b}",
                n=self.n,
                b=self.b,
            )
        if self.beta is None:
            raise InvalidParams("blended Gabor needs a beta profile")


def _phase_diag(b: int, d: DiagonalSpec, alpha: float, beta: BetaProfile):
    """diag e^{i(alpha beta(d) + pi/2 d)} on the B/2 entries of d"""
    return exp_affine_of_beta_diag(2 ** (b - 1), d, alpha, math.pi / 2, 0.0, beta)


def vg_blocks(b: int, beta) -> Dict[str, chex.Array]:
    """The four B x B blocks of V_G: k_hat_e, k_e, k_o, k_hat_o."""
    if b < 1:
        raise InvalidParams(f"V_G blocks need b >= 1, got b={b}", b=b)
    beta = get_profile(beta)
    half = 2 ** (b - 1)
    hadamard = tensor.kron(tensor.HADAMARD, jnp.eye(half))
    d_minus, d_plus = DiagonalSpec.d_minus(b), DiagonalSpec.d_plus(b)
    minus_up = _phase_diag(b, d_minus, math.pi / 2, beta)
    minus_down = _phase_diag(b, d_minus, -math.pi / 2, beta)
    plus_up = _phase_diag(b, d_plus, math.pi / 2, beta)
    plus_down = _phase_diag(b, d_plus, -math.pi / 2, beta)
    return {
        "k_hat_e": tensor.kron(tensor.IDENTITY_2, minus_up),
        "k_e": hadamard @ tensor.direct_sum(minus_up, minus_down) @ hadamard,
        "k_o": hadamard @ tensor.direct_sum(plus_down, plus_up) @ hadamard,
        "k_hat_o": tensor.kron(tensor.IDENTITY_2, plus_down),
    }


def assemble_vg_matrix(b: int, n: int, beta) -> chex.Array:
    """Block diagonal V_G: K_hat_e, then K_o / K_e alternating, then K_hat_o."""
    GaborParams(n, b, beta).check_blended()
    blocks = vg_blocks(b, beta)
    num_blocks = 2 ** (n - b)
    diagonal = []
    for t in range(num_blocks):
        if t == 0:
            diagonal.append(blocks["k_hat_e"])
        elif t == num_blocks - 1:
            diagonal.append(blocks["k_hat_o"])
        else:
            diagonal.append(blocks["k_e"] if t % 2 == 0 else blocks["k_o"])
    return tensor.direct_sum(*diagonal)


def _block_register(b: int) -> Tuple[int, ...]:
    return tuple(reversed(range(b)))


def _vg_custom_gates(p: GaborParams) -> List[Gate]:
    blocks = vg_blocks(p.b, p.beta)
    register = _block_register(p.b)
    top = range(p.b, p.n)
    parity = p.b
    return [
        controlled(custom(blocks["k_e"], register), [(parity, False)]),
        controlled(
            custom(blocks["k_hat_e"] @ tensor.dagger(blocks["k_e"]), register),
            [(t, False) for t in top],
        ),
        controlled(custom(blocks["k_o"], register), [(parity, True)]),
        controlled(
            custom(blocks["k_hat_o"] @ tensor.dagger(blocks["k_o"]), register),
            [(t, True) for t in top],
        ),
    ]


def _branch_polynomials(b: int, beta: BetaProfile, odd: bool):
    """
    Phases (hbit 0, hbit 1) of the middle diagonal of K_e or K_o as polynomials
    in the lower block index q.
    """
    scale = 2.0**-b
    if odd:
        profile = beta.composed(scale, 0.0)
        linear = Polynomial([0.0, math.pi / 2 * scale])
        return -math.pi / 2 * profile + linear, math.pi / 2 * profile + linear
    profile = beta.composed(-scale, 0.5)
    linear = Polynomial([-math.pi / 4, math.pi / 2 * scale])
    return math.pi / 2 * profile + linear, -math.pi / 2 * profile + linear


def _mixing_gates(
    b: int, phases, controls: Sequence[Tuple[int, bool]]
) -> List[Gate]:
    """(H (x) I) diag(e^{i phases[0]}, e^{i phases[1]}) (H (x) I) under controls."""
    hbit, lower = b - 1, range(b - 1)
    gates = [controlled(h(hbit), controls)]
    for value, phase in zip((False, True), phases):
        gates += phase_polynomial_gates(lower, phase, list(controls) + [(hbit, value)])
    gates.append(controlled(h(hbit), controls))
    return gates


def _vg_synthesized_gates(p: GaborParams) -> List[Gate]:
    b, lower = p.b, range(p.b - 1)
    parity, top = p.b, range(p.b, p.n)
    even = _branch_polynomials(b, p.beta, odd=False)
    odd = _branch_polynomials(b, p.beta, odd=True)
    all_off = [(t, False) for t in top]
    all_on = [(t, True) for t in top]
    gates = _mixing_gates(b, even, [(parity, False)])
    # K_hat_e K_e^dagger: conjugated K_e branches, then the hbit-free phase of K_hat_e
    gates += _mixing_gates(b, (-even[0], -even[1]), all_off)
    gates += phase_polynomial_gates(lower, even[0], all_off)
    gates += _mixing_gates(b, odd, [(parity, True)])
    gates += _mixing_gates(b, (-odd[0], -odd[1]), all_on)
    gates += phase_polynomial_gates(lower, odd[0], all_on)
    return gates


def vg_circuit(p: GaborParams, synthesize_diagonals: bool = False) -> Circuit:
    """
    V_G on n qubits. Block index t is the top n-b qubits; K_e / K_o act on
    even / odd t and the hatted corrections on t = 0 and t = N/B - 1.
    """
    p.check_blended()
    if synthesize_diagonals:
        gates = _vg_synthesized_gates(p)
    else:
        gates = _vg_custom_gates(p)
    return Circuit(p.n, 0, gates)


def sharp_gabor_circuit(p: GaborParams, merge_permutations: bool = False) -> Circuit:
    """
    (I (x) F_2B^dagger) S_{N,B} F_N. With merge_permutations the swap layers of
    both Fourier transforms are folded into S_{N,B}, one CNOT and swap network.
    """
    p.check_sharp()
    if merge_permutations:
        fourier = qft_circuit(p.n, swaps=False)
        reshuffle = folded_s_perm_circuit(p.n, p.b)
        window_fourier = iqft_circuit(p.b + 1, swaps=False).placed(range(p.b + 1), p.n)
    else:
        fourier = qft_circuit(p.n)
        reshuffle = s_perm_circuit(p.n, p.b)
        window_fourier = iqft_circuit(p.b + 1).placed(range(p.b + 1), p.n)
    circuit = fourier.then(reshuffle, window_fourier)
    logger.info(f"sharp Gabor n={p.n} b={p.b}: {len(circuit)} gates")
    return circuit


def blended_gabor_circuit(p: GaborParams, synthesize_diagonals: bool = False) -> Circuit:
    """(I (x) F_2B^dagger) S_{N,B} T_G F_N with T_G = (Q (x) I)^dagger V_G (Q (x) I)."""
    p.check_blended()
    fourier = qft_circuit(p.n)
    q_perm = q_perm_circuit(p.n - p.b + 1).placed(range(p.b - 1, p.n), p.n)
    vg = vg_circuit(p, synthesize_diagonals=synthesize_diagonals)
    reshuffle = s_perm_circuit(p.n, p.b)
    window_fourier = iqft_circuit(p.b + 1).placed(range(p.b + 1), p.n)
    circuit = fourier.then(q_perm, vg, adjoint(q_perm), reshuffle, window_fourier)
    logger.info(
        f"blended Gabor n={p.n} b={p.b} beta={p.beta.name}: {len(circuit)} gates"
        + (" (synthesized diagonals)" if synthesize_diagonals else "")
    )
    return circuit
