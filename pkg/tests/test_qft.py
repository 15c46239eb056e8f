import numpy as np
import pytest

from wavepacket_circuits import tensor
from wavepacket_circuits.circuit import Controlled, Swap, apply_circuit, circuit_to_unitary, gate_counts
from wavepacket_circuits.exceptions import InvalidParams
from wavepacket_circuits.oracle import dft_matrix
from wavepacket_circuits.synthesis import iqft_circuit, qft_circuit


def test_one_qubit_qft_is_hadamard():
    np.testing.assert_allclose(circuit_to_unitary(qft_circuit(1)), tensor.HADAMARD, atol=1e-15)
    np.testing.assert_allclose(circuit_to_unitary(iqft_circuit(1)), tensor.HADAMARD, atol=1e-15)


def test_plus_sign_convention():
    u = np.asarray(circuit_to_unitary(qft_circuit(2)))
    assert u[1, 1] == pytest.approx(0.5j, abs=1e-15)


@pytest.mark.parametrize("m", range(1, 9))
def test_qft_matches_dft(m):
    np.testing.assert_allclose(circuit_to_unitary(qft_circuit(m)), dft_matrix(2**m), atol=1e-12)


@pytest.mark.parametrize("m", [2, 5, 8])
def test_iqft_inverts_qft(m):
    u = np.asarray(circuit_to_unitary(qft_circuit(m)))
    v = np.asarray(circuit_to_unitary(iqft_circuit(m)))
    np.testing.assert_allclose(v @ u, np.eye(2**m), atol=1e-12)


def test_iqft_of_uniform_state():
    out = apply_circuit(iqft_circuit(3), np.full(8, 1 / np.sqrt(8)))
    np.testing.assert_allclose(out, np.eye(8)[0], atol=1e-12)


def test_amplitudes_of_one():
    n = 16
    out = apply_circuit(qft_circuit(4), np.eye(n)[1])
    np.testing.assert_allclose(out, np.exp(2j * np.pi * np.arange(n) / n) / 4, atol=1e-12)


@pytest.mark.parametrize("m", [1, 4, 7])
def test_qft_gate_counts(m):
    c = qft_circuit(m)
    counts = gate_counts(c)
    phases = sum(isinstance(g, Controlled) for g in c)
    swaps = sum(isinstance(g, Swap) for g in c)
    assert counts.single_qubit == m
    assert phases == m * (m - 1) // 2
    assert swaps == m // 2
    assert counts.two_qubit == phases + swaps


def test_qft_unitarity_defect():
    assert tensor.unitarity_defect(circuit_to_unitary(qft_circuit(10))) < 1e-12


def test_qft_needs_a_qubit():
    with pytest.raises(InvalidParams):
        qft_circuit(0)


def bit_reversal(m):
    return np.array([int(format(k, f"0{m}b")[::-1], 2) for k in range(2**m)])


@pytest.mark.parametrize("m", [2, 3, 5])
def test_qft_without_swaps_is_bit_reversed(m):
    u = np.asarray(circuit_to_unitary(qft_circuit(m, swaps=False)))
    np.testing.assert_allclose(u, np.asarray(dft_matrix(2**m))[bit_reversal(m)], atol=1e-12)
    v = np.asarray(circuit_to_unitary(iqft_circuit(m, swaps=False)))
    np.testing.assert_allclose(v @ u, np.eye(2**m), atol=1e-12)
    assert not any(isinstance(g, Swap) for g in qft_circuit(m, swaps=False))
