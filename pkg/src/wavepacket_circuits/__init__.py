__version__ = "0.1.0"

import jax

# every oracle and tolerance in this package assumes complex128
jax.config.update("jax_enable_x64", True)

from .circuit import Circuit, adjoint, apply_circuit, circuit_to_unitary, gate_counts
from .configuration import TransformSpec
from .oracle import basis_matrix, transform_reference
from .synthesis import build_transform_circuit
