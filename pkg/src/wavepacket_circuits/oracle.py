""" Circuit-free reference bases, reallocation maps and transforms """
import math
from typing import Optional

import chex
import jax.numpy as jnp
import numpy as np
from einops import rearrange
from flax import struct
from transformers.utils import logging

from . import tensor
from .configuration import GABOR_KINDS, TransformSpec
from .exceptions import DimensionMismatch, InvalidParams
from .synthesis.profiles import BetaProfile, eval_g, get_profile
from .synthesis.wavelet import psi_ms_hat

logger = logging.get_logger(__name__)


def _check_power_of_two(size: int):
    if size < 1 or size & (size - 1):
        raise InvalidParams(f"size must be a power of two, got {size}", size=size)


def dft_matrix(size: int) -> chex.Array:
    """F[k][j] = exp(+2 pi i k j / N) / sqrt(N)"""
    _check_power_of_two(size)
    k = np.arange(size)
    exponent = np.outer(k, k) % size
    return jnp.asarray(np.exp(2j * np.pi * exponent / size) / np.sqrt(size))


def signed_frequencies(size: int) -> np.ndarray:
    """Representatives in [-N/2, N/2) of the indices 0..N-1."""
    k = np.arange(size)
    return np.where(k < size // 2, k, k - size)


def inner_product(f1, f2) -> complex:
    """sum_t f1(t) conj(f2(t))"""
    return complex(jnp.sum(jnp.asarray(f1) * jnp.conj(jnp.asarray(f2))))


def _g(beta: BetaProfile, s) -> np.ndarray:
    return np.asarray(eval_g(beta, s))


def sharp_gabor_frequency(n: int, b: int) -> np.ndarray:
    size, window = 2**n, 2**b
    k = signed_frequencies(size)[:, None]
    j = np.arange(size // (2 * window))[None, :]
    p = np.arange(2 * window)[None, :]
    inside = ((k >= j * window) & (k < (j + 1) * window)) | (
        (k >= -(j + 1) * window) & (k < -j * window)
    )
    phase = np.exp(2j * np.pi * k * p / (2 * window)) / np.sqrt(2 * window)
    columns = inside[:, :, None] * phase[:, None, :]
    return rearrange(columns, "k j p -> k (j p)")


def _g_per(beta: BetaProfile, s: np.ndarray, period: float) -> np.ndarray:
    # the window has support 2 pi and the period is at least 4 pi
    return sum(_g(beta, s + q * period) for q in (-1, 0, 1))


def blended_gabor_frequency(n: int, b: int, beta) -> np.ndarray:
    beta = get_profile(beta)
    size, window = 2**n, 2**b
    period = np.pi * size / window
    k = signed_frequencies(size)[:, None]
    j = np.arange(size // (2 * window))[None, :]
    p = np.arange(2 * window)[None, :]
    right = (k - window * j) / window
    left = (k + window * j) / window
    bumps = np.exp(0.5j * np.pi * (0.5 - right)) * _g_per(
        beta, np.pi * (right - 0.5), period
    ) + np.exp(0.5j * np.pi * (-0.5 - left)) * _g_per(beta, np.pi * (left + 0.5), period)
    phase = np.exp(2j * np.pi * k * p / (2 * window)) / np.sqrt(2 * window)
    columns = bumps[:, :, None] * phase[:, None, :]
    return rearrange(columns, "k j p -> k (j p)")


def _wavelet_frequency(n: int, level_values) -> np.ndarray:
    """Columns (j, p) at N - 2^{n-j+1} + p, then the scaling function at N - 1."""
    size = 2**n
    k = signed_frequencies(size)
    out = np.zeros((size, size), dtype=np.complex128)
    for j in range(1, n + 1):
        block = 2 ** (n - j)
        p = np.arange(block)[None, :]
        phase = np.exp(2j * np.pi * k[:, None] * p / block) / np.sqrt(block)
        offset = size - 2 * block
        out[:, offset : offset + block] = level_values(j, block, k)[:, None] * phase
    out[0, size - 1] = 1.0
    return out


def shannon_frequency(n: int) -> np.ndarray:
    def window(j, block, k):
        return (((k >= -block) & (k < -block / 2)) | ((k >= block / 2) & (k < block))).astype(
            np.float64
        )

    return _wavelet_frequency(n, window)


def meyer_frequency(n: int, beta) -> np.ndarray:
    beta = get_profile(beta)
    size = 2**n

    def bumps(j, block, k):
        shifts = (-1, 0, 1) if j == 1 else (0,)
        return sum(
            np.asarray(psi_ms_hat(2 ** (j + 1) * np.pi * (k / size + q), beta)) for q in shifts
        )

    return _wavelet_frequency(n, bumps)


@struct.dataclass
class BasisMatrix:
    """Basis with column c the frequency-domain vector psi_hat_c."""

    kind: str = struct.field(pytree_node=False)
    n: int = struct.field(pytree_node=False)
    b: Optional[int] = struct.field(pytree_node=False)
    beta: Optional[str] = struct.field(pytree_node=False)
    frequency: chex.Array

    @property
    def size(self) -> int:
        return 2**self.n

    @property
    def matrix(self) -> chex.Array:
        """Spatial basis: column c is psi_c = F^dagger psi_hat_c."""
        return tensor.dagger(dft_matrix(self.size)) @ self.frequency

    @property
    def coefficient_matrix(self) -> chex.Array:
        """Psi^dagger = Psi_hat^dagger F, mapping f to a."""
        return tensor.dagger(self.frequency) @ dft_matrix(self.size)


def _basis(kind: str, n: int, b, beta, frequency) -> BasisMatrix:
    return BasisMatrix(kind, n, b, beta, jnp.asarray(frequency))


def sharp_gabor_basis(n: int, b: int) -> BasisMatrix:
    spec = TransformSpec("gabor-sharp", n, b)
    return _basis(spec.kind, n, b, None, sharp_gabor_frequency(n, b))


def blended_gabor_basis(n: int, b: int, beta) -> BasisMatrix:
    spec = TransformSpec("gabor-blended", n, b, _profile_name(beta))
    return _basis(spec.kind, n, b, spec.beta, blended_gabor_frequency(n, b, beta))


def shannon_basis(n: int) -> BasisMatrix:
    TransformSpec("shannon", n)
    return _basis("shannon", n, None, None, shannon_frequency(n))


def meyer_basis(n: int, beta) -> BasisMatrix:
    spec = TransformSpec("meyer", n, beta=_profile_name(beta))
    return _basis(spec.kind, n, None, spec.beta, meyer_frequency(n, beta))


def _profile_name(beta) -> str:
    return beta.name if isinstance(beta, BetaProfile) else beta


def basis_matrix(spec: TransformSpec) -> BasisMatrix:
    if spec.kind == "gabor-sharp":
        return sharp_gabor_basis(spec.n, spec.b)
    if spec.kind == "gabor-blended":
        return blended_gabor_basis(spec.n, spec.b, spec.beta)
    if spec.kind == "shannon":
        return shannon_basis(spec.n)
    return meyer_basis(spec.n, spec.beta)


def gabor_realloc_matrix(n: int, b: int, beta) -> chex.Array:
    """T_G with h = T_G f_hat, one row per h(jB + q) and h((j + 1/2)B + q)."""
    spec = TransformSpec("gabor-blended", n, b, _profile_name(beta))
    beta = spec.profile
    size, window = 2**n, 2**b
    half = window // 2
    j, q = np.meshgrid(
        np.arange(-size // (2 * window), size // (2 * window)), np.arange(half), indexing="ij"
    )
    s = q * np.pi / window
    lower_row, upper_row = j * window + q, j * window + half + q
    entries = [
        (lower_row, lower_row, _g(beta, -np.pi / 2 + s) * np.exp(0.5j * (-np.pi / 2 + s))),
        (lower_row, -j * window + q, _g(beta, np.pi / 2 + s) * np.exp(0.5j * (np.pi / 2 + s))),
        (upper_row, upper_row, _g(beta, s) * np.exp(0.5j * s)),
        (upper_row, -j * window - 3 * half + q, _g(beta, -np.pi + s) * np.exp(0.5j * (-np.pi + s))),
    ]
    out = np.zeros((size, size), dtype=np.complex128)
    for rows, cols, values in entries:
        flat = [rearrange(np.asarray(a), "j q -> (j q)") for a in (rows, cols, values)]
        np.add.at(out, (flat[0] % size, flat[1] % size), flat[2])
    return jnp.asarray(out)


def wavelet_realloc_matrix(n: int, beta) -> chex.Array:
    """
    T_W with h = T_W f_hat. Level j touches +-N/2^j + q for 0 <= q and
    +-N/2^j - q for 1 <= q, 3q < N/2^j; at level 1 only N/2 +- q remain and
    coinciding columns accumulate. h(0) = f_hat(0).
    """
    spec = TransformSpec("meyer", n, beta=_profile_name(beta))
    beta = spec.profile
    size = 2**n
    out = np.zeros((size, size), dtype=np.complex128)
    out[0, 0] = 1.0
    quarter = np.pi / 4

    def add(rows, cols, values):
        np.add.at(out, (rows % size, cols % size), values)

    for j in range(1, n + 1):
        block = 2 ** (n - j)
        q = np.arange(-(-block // 3))
        u, v, t = np.pi * q / (2 * block), np.pi * q / block, 1.5 * q / block
        up, down = _g(beta, -np.pi / 2 + np.pi * t), _g(beta, np.pi / 2 + np.pi * t)
        plus, minus = block + q, -block + q
        if j >= 2:
            add(plus, plus, np.exp(1j * (quarter + u)) * up)
            add(plus, minus, np.exp(1j * (-quarter + u)) * down)
        add(minus, plus, -np.exp(1j * (-quarter + v)) * down)
        add(minus, minus, -np.exp(1j * (quarter + v)) * up)

        q = q[1:]
        u, v, t = u[1:], v[1:], t[1:]
        up, down = _g(beta, np.pi / 2 - np.pi * t), _g(beta, -np.pi / 2 - np.pi * t)
        plus, minus = block - q, -block - q
        add(plus, plus, -np.exp(1j * (-quarter - v)) * up)
        add(plus, minus, -np.exp(1j * (quarter - v)) * down)
        if j >= 2:
            add(minus, plus, np.exp(1j * (quarter - u)) * down)
            add(minus, minus, np.exp(1j * (-quarter - u)) * up)
    return jnp.asarray(out)


def realloc_matrix(spec: TransformSpec) -> chex.Array:
    """T_G or T_W; the identity for the sharp kinds."""
    if spec.kind == "gabor-blended":
        return gabor_realloc_matrix(spec.n, spec.b, spec.beta)
    if spec.kind == "meyer":
        return wavelet_realloc_matrix(spec.n, spec.beta)
    return jnp.eye(spec.size, dtype=jnp.complex128)


def _check_signal(signal, size: int) -> chex.Array:
    signal = tensor.as_matrix(signal)
    if signal.shape[0] != size:
        raise DimensionMismatch(size, signal.shape[0])
    return signal


def h_realloc_gabor(fhat, n: int, b: int, beta) -> chex.Array:
    fhat = _check_signal(fhat, 2**n)
    return gabor_realloc_matrix(n, b, beta) @ fhat


def h_realloc_wavelet(fhat, n: int, beta) -> chex.Array:
    fhat = _check_signal(fhat, 2**n)
    return wavelet_realloc_matrix(n, beta) @ fhat


def window_coefficients(h, spec: TransformSpec) -> chex.Array:
    """
    Windowed inverse-DFT sums of a reallocated spectrum: the sharp Gabor
    windows for Gabor kinds, the Shannon windows for wavelet kinds.
    """
    h = _check_signal(h, spec.size)
    if spec.kind in GABOR_KINDS:
        sharp = sharp_gabor_frequency(spec.n, spec.b)
    else:
        sharp = shannon_frequency(spec.n)
    return tensor.dagger(jnp.asarray(sharp)) @ h


def transform_reference(spec: TransformSpec, f) -> chex.Array:
    """a_c = <f, psi_c> = sum_t f(t) conj(psi_c(t))"""
    f = _check_signal(f, spec.size)
    return basis_matrix(spec).coefficient_matrix @ f


def inverse_transform_reference(spec: TransformSpec, a) -> chex.Array:
    """f = Psi a"""
    a = _check_signal(a, spec.size)
    return basis_matrix(spec).matrix @ a
