import jax
import numpy as np
import pytest

from wavepacket_circuits import tensor
from wavepacket_circuits.circuit import Circuit, cnot, controlled, custom, h, rz, swap, x


@pytest.fixture
def rng():
    return jax.random.PRNGKey(0)


@pytest.fixture
def random_signal(rng):
    """Unit-norm complex signals of a given length, a fresh key per call."""
    keys = iter(jax.random.split(rng, 64))

    def make(dim):
        return np.asarray(tensor.random_signal(next(keys), dim))

    return make


@pytest.fixture
def random_circuit():
    """A mixed circuit of named, controlled, swap and dense gates."""

    def make(num_qubits, depth=20, seed=0):
        gen = np.random.default_rng(seed)
        gates = []
        for _ in range(depth):
            a, b = (int(q) for q in gen.choice(num_qubits, size=2, replace=False))
            kind = gen.integers(5)
            if kind == 0:
                gates.append(h(a))
            elif kind == 1:
                gates.append(rz(a, float(gen.uniform(-np.pi, np.pi))))
            elif kind == 2:
                gates.append(cnot(a, b, on=bool(gen.integers(2))))
            elif kind == 3:
                gates.append(swap(a, b))
            else:
                key = jax.random.PRNGKey(int(gen.integers(1 << 30)))
                block = custom(np.asarray(tensor.random_unitary(key, 2)), [b])
                gates.append(controlled(block, [(a, True)]))
        gates.append(x(0))
        return Circuit(num_qubits, 0, gates)

    return make
