""" Dense complex128 linear algebra shared by circuits and oracles """
import chex
import jax
import jax.numpy as jnp
from jax.scipy.linalg import block_diag

from .exceptions import DimensionMismatch

# standard single-qubit matrices, first row/column is |0>
IDENTITY_2 = jnp.eye(2, dtype=jnp.complex128)
PAULI_X = jnp.array([[0, 1], [1, 0]], dtype=jnp.complex128)
PAULI_Y = jnp.array([[0, -1j], [1j, 0]], dtype=jnp.complex128)
PAULI_Z = jnp.array([[1, 0], [0, -1]], dtype=jnp.complex128)
HADAMARD = jnp.array([[1, 1], [1, -1]], dtype=jnp.complex128) / jnp.sqrt(2.0)


def rz(theta: float) -> chex.Array:
    """Phase rotation diag(1, e^{i theta})."""
    return jnp.diag(jnp.array([1.0, jnp.exp(1j * theta)], dtype=jnp.complex128))


def as_matrix(a) -> chex.Array:
    return jnp.asarray(a, dtype=jnp.complex128)


def kron(a: chex.Array, b: chex.Array) -> chex.Array:
    """Kronecker product; the first factor acts on the most significant qubits."""
    return jnp.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors: chex.Array) -> chex.Array:
    out = as_matrix(factors[0])
    for factor in factors[1:]:
        out = kron(out, factor)
    return out


def direct_sum(*blocks: chex.Array) -> chex.Array:
    return block_diag(*[as_matrix(b) for b in blocks])


def dagger(a: chex.Array) -> chex.Array:
    return jnp.conj(as_matrix(a)).T


def unitarity_defect(u: chex.Array) -> float:
    """max-abs entry of U^dagger U - I"""
    u = as_matrix(u)
    gram = dagger(u) @ u
    return float(jnp.max(jnp.abs(gram - jnp.eye(u.shape[0], dtype=u.dtype))))


def max_abs_diff(a: chex.Array, b: chex.Array) -> float:
    return float(jnp.max(jnp.abs(as_matrix(a) - as_matrix(b))))


def apply(u: chex.Array, v: chex.Array) -> chex.Array:
    u, v = as_matrix(u), as_matrix(v)
    if u.shape[1] != v.shape[0]:
        raise DimensionMismatch(u.shape[1], v.shape[0])
    return u @ v


def random_unitary(rng: jax.random.PRNGKey, dim: int) -> chex.Array:
    """Haar-like unitary from the QR decomposition of a complex Gaussian matrix."""
    re_rng, im_rng = jax.random.split(rng)
    z = jax.random.normal(re_rng, (dim, dim)) + 1j * jax.random.normal(
        im_rng, (dim, dim)
    )
    q, r = jnp.linalg.qr(z)
    phases = jnp.diag(r) / jnp.abs(jnp.diag(r))
    return q * phases[None, :]


def random_signal(rng: jax.random.PRNGKey, dim: int) -> chex.Array:
    """Unit-norm complex Gaussian vector."""
    re_rng, im_rng = jax.random.split(rng)
    v = jax.random.normal(re_rng, (dim,)) + 1j * jax.random.normal(im_rng, (dim,))
    return v / jnp.linalg.norm(v)
