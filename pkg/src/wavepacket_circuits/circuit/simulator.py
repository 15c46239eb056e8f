""" Exact gate-by-gate evaluation of circuits on dense state tensors """
from typing import Sequence

import chex
import numpy as np
from tqdm import tqdm
from transformers.utils import logging

from .. import tensor
from ..exceptions import AncillaLeakage, DimensionMismatch, DimensionTooLarge
from .gates import Circuit, Controlled, Gate, Swap

logger = logging.get_logger(__name__)

# qubit limits for the dense unitary and the statevector paths
DENSE_LIMIT = 12
STATEVECTOR_LIMIT = 26

LEAKAGE_TOLERANCE = 1e-10


def _axis(qubit: int, num_qubits: int) -> int:
    # qubit 0 is the least significant bit, i.e. the last tensor axis
    return num_qubits - 1 - qubit


def _apply_block(state: np.ndarray, matrix: np.ndarray, axes: Sequence[int]):
    k = len(axes)
    op = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(op, state, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


def _apply_elementary(state, gate, axis_of):
    if isinstance(gate, Swap):
        return np.swapaxes(state, axis_of(gate.a), axis_of(gate.b))
    return _apply_block(state, gate.matrix(), [axis_of(t) for t in gate.targets])


def apply_gate(state: np.ndarray, gate: Gate, num_qubits: int) -> np.ndarray:
    """
    Applies one gate to a state tensor of shape (2,) * num_qubits + (batch,).
    """
    if not isinstance(gate, Controlled):
        return _apply_elementary(state, gate, lambda q: _axis(q, num_qubits))

    index = [slice(None)] * state.ndim
    control_axes = []
    for q, on in gate.controls:
        axis = _axis(q, num_qubits)
        index[axis] = int(on)
        control_axes.append(axis)
    index = tuple(index)

    def sub_axis(q):
        axis = _axis(q, num_qubits)
        return axis - sum(1 for a in control_axes if a < axis)

    updated = _apply_elementary(state[index], gate.inner, sub_axis)
    state = state.copy()
    state[index] = updated
    return state


def _evolve(state, gates, num_qubits, progress=False):
    for gate in tqdm(gates, desc="gates", disable=not progress, leave=False):
        state = apply_gate(state, gate, num_qubits)
    return state


def circuit_to_unitary(c: Circuit) -> chex.Array:
    """
    Evaluates the circuit on every data basis state with ancillas in |0> and
    returns the 2^n x 2^n block it induces on the data register.
    """
    total = c.num_qubits
    if total > DENSE_LIMIT:
        raise DimensionTooLarge(total, DENSE_LIMIT)
    dim = 2**c.num_data_qubits
    columns = np.eye(2**total, dim, dtype=np.complex128)
    state = _evolve(columns.reshape((2,) * total + (dim,)), c.gates, total)
    full = np.ascontiguousarray(state).reshape(2**total, dim)

    if c.num_ancilla:
        leakage = float(np.max(np.abs(full[dim:])))
        if leakage > LEAKAGE_TOLERANCE:
            raise AncillaLeakage(leakage)
    u = full[:dim]
    defect = tensor.unitarity_defect(u)
    if defect > LEAKAGE_TOLERANCE:
        raise AncillaLeakage(defect)
    logger.debug(
        f"evaluated {len(c)} gates on {total} qubits, unitarity defect {defect:.2e}"
    )
    return u


def apply_circuit(c: Circuit, psi: chex.Array, progress: bool = False) -> np.ndarray:
    """
    Statevector evaluation. psi is a vector of length 2^n or a (2^n, batch)
    matrix of column vectors.
    """
    psi = np.asarray(psi, dtype=np.complex128)
    single = psi.ndim == 1
    if single:
        psi = psi[:, None]
    dim = 2**c.num_data_qubits
    if psi.shape[0] != dim:
        raise DimensionMismatch(dim, psi.shape[0])
    total = c.num_qubits
    if total > STATEVECTOR_LIMIT:
        raise DimensionTooLarge(total, STATEVECTOR_LIMIT)

    batch = psi.shape[1]
    full = np.zeros((2**total, batch), dtype=np.complex128)
    full[:dim] = psi
    state = _evolve(full.reshape((2,) * total + (batch,)), c.gates, total, progress)
    full = np.ascontiguousarray(state).reshape(2**total, batch)

    out = full[:dim]
    if c.num_ancilla:
        leaked = float(np.max(np.sum(np.abs(full[dim:]) ** 2, axis=0)))
        if leaked > LEAKAGE_TOLERANCE:
            raise AncillaLeakage(leaked)
        norm_in = np.linalg.norm(psi, axis=0)
        norm_out = np.linalg.norm(out, axis=0)
        scale = np.where(norm_out > 0, norm_in / np.where(norm_out > 0, norm_out, 1), 1)
        out = out * scale[None, :]
    return out[:, 0] if single else out
