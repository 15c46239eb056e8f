import math
import time

import numpy as np
import pytest

from wavepacket_circuits import tensor
from wavepacket_circuits.circuit import (
    Custom,
    adjoint,
    apply_circuit,
    circuit_to_unitary,
    elementary_cost,
    gate_counts,
    lower_multicontrol,
)
from wavepacket_circuits.configuration import TransformSpec
from wavepacket_circuits.exceptions import InvalidParams
from wavepacket_circuits.oracle import basis_matrix, gabor_realloc_matrix
from wavepacket_circuits.synthesis import (
    GaborParams,
    assemble_vg_matrix,
    blended_gabor_circuit,
    get_profile,
    iqft_circuit,
    q_perm_circuit,
    qft_circuit,
    s_perm_circuit,
    sharp_gabor_circuit,
    vg_blocks,
    vg_circuit,
)

BLENDED_CASES = [
    (4, 1, "linear"),
    (5, 1, "linear"),
    (5, 2, "quadratic"),
    (6, 2, "deg7"),
    (6, 3, "linear"),
]


def unitary(circuit):
    return np.asarray(circuit_to_unitary(circuit))


@pytest.mark.parametrize("n, b", [(2, 0), (3, 0), (3, 1), (4, 2), (5, 1), (6, 2), (7, 3)])
def test_sharp_gabor_matches_oracle(n, b):
    oracle = basis_matrix(TransformSpec("gabor-sharp", n, b)).coefficient_matrix
    np.testing.assert_allclose(unitary(sharp_gabor_circuit(GaborParams(n, b))), oracle, atol=1e-10)


def test_sharp_gabor_basis_response():
    basis = np.asarray(basis_matrix(TransformSpec("gabor-sharp", 4, 1)).matrix)
    out = apply_circuit(sharp_gabor_circuit(GaborParams(4, 1)), basis[:, 5])
    np.testing.assert_allclose(out, np.eye(16)[5], atol=1e-10)


def test_sharp_gabor_layout():
    c = sharp_gabor_circuit(GaborParams(6, 2))
    head, tail = len(qft_circuit(6)), len(iqft_circuit(3))
    assert len(c) == head + 7 + tail
    middle = gate_counts(c.replace(gates=c.gates[head : head + 7]))
    assert middle.two_qubit == 7


def test_sharp_gabor_params():
    with pytest.raises(InvalidParams):
        sharp_gabor_circuit(GaborParams(3, 2))


@pytest.mark.parametrize("n, b", [(2, 0), (3, 0), (3, 1), (4, 2), (5, 1), (6, 2), (7, 3), (8, 3)])
def test_merged_sharp_gabor_matches_oracle(n, b):
    oracle = basis_matrix(TransformSpec("gabor-sharp", n, b)).coefficient_matrix
    c = sharp_gabor_circuit(GaborParams(n, b), merge_permutations=True)
    np.testing.assert_allclose(unitary(c), oracle, atol=1e-10)


def test_merged_sharp_gabor_layout():
    c = sharp_gabor_circuit(GaborParams(12, 5), merge_permutations=True)
    # 78 QFT gates, 6 CNOTs, 8 swaps, 21 window IQFT gates
    assert len(c) == 113
    assert elementary_cost(gate_counts(c)) == 113
    assert len(c) < len(sharp_gabor_circuit(GaborParams(12, 5)))


@pytest.mark.parametrize("n", [9, 10])
def test_sharp_gabor_spot_check(n):
    spec = TransformSpec("gabor-sharp", n)
    oracle = basis_matrix(spec).coefficient_matrix
    np.testing.assert_allclose(unitary(sharp_gabor_circuit(GaborParams(n, spec.b))), oracle, atol=1e-10)


@pytest.mark.parametrize("n, b, beta", BLENDED_CASES)
def test_blended_gabor_matches_oracle(n, b, beta):
    oracle = basis_matrix(TransformSpec("gabor-blended", n, b, beta)).coefficient_matrix
    circuit = blended_gabor_circuit(GaborParams(n, b, beta))
    np.testing.assert_allclose(unitary(circuit), oracle, atol=1e-10)


@pytest.mark.parametrize("n, b, beta", [(5, 1, "linear"), (6, 2, "deg7")])
def test_blended_gabor_with_synthesized_diagonals(n, b, beta):
    oracle = basis_matrix(TransformSpec("gabor-blended", n, b, beta)).coefficient_matrix
    circuit = blended_gabor_circuit(GaborParams(n, b, beta), synthesize_diagonals=True)
    assert gate_counts(circuit).custom_block == ()
    np.testing.assert_allclose(unitary(circuit), oracle, atol=1e-10)


def test_blended_gabor_params():
    with pytest.raises(InvalidParams):
        blended_gabor_circuit(GaborParams(4, 2, "linear"))
    with pytest.raises(InvalidParams):
        blended_gabor_circuit(GaborParams(5, 0, "linear"))
    with pytest.raises(InvalidParams):
        blended_gabor_circuit(GaborParams(5, 1))


def test_blended_gabor_layout():
    c = blended_gabor_circuit(GaborParams(6, 2, "linear"))
    q_perm = q_perm_circuit(5).placed(range(1, 6), 6)
    head = qft_circuit(6).gates + q_perm.gates
    assert c.gates[: len(head)] == head
    blocks = c.gates[len(head) : len(head) + 4]
    assert all(isinstance(g.inner, Custom) and g.inner.targets == (1, 0) for g in blocks)
    # K_e, K_hat_e K_e^dagger, K_o, K_hat_o K_o^dagger
    assert [g.controls for g in blocks] == [
        ((2, False),),
        tuple((t, False) for t in range(2, 6)),
        ((2, True),),
        tuple((t, True) for t in range(2, 6)),
    ]
    tail = (
        adjoint(q_perm).gates
        + s_perm_circuit(6, 2).gates
        + iqft_circuit(3).placed(range(3), 6).gates
    )
    assert c.gates[len(head) + 4 :] == tail


def test_blended_gabor_round_trip_at_sixteen_qubits(random_signal):
    c = blended_gabor_circuit(GaborParams(16, 7, "deg7"))
    f = random_signal(2**16)
    start = time.perf_counter()
    back = apply_circuit(adjoint(c), apply_circuit(c, f))
    assert time.perf_counter() - start < 30
    assert np.max(np.abs(back - f)) <= 1e-10


def test_blended_gabor_preserves_norm(random_signal):
    f = random_signal(64)
    out = apply_circuit(blended_gabor_circuit(GaborParams(6, 2, "quadratic")), f)
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("b", [1, 2, 3])
@pytest.mark.parametrize("beta", ["linear", "quadratic", "deg7"])
def test_vg_blocks_are_unitary(b, beta):
    for block in vg_blocks(b, beta).values():
        assert tensor.unitarity_defect(block) <= 1e-12


def test_k_e_corner():
    k_e = np.asarray(vg_blocks(2, "linear")["k_e"])
    assert k_e[0, 0] == pytest.approx(math.cos(math.pi / 4) * np.exp(-1j * math.pi / 4))


def test_k_hat_e_against_formula():
    beta = get_profile("linear")
    d_minus = np.array([-0.5, -0.25])
    profile = np.abs(d_minus)
    diagonal = np.exp(0.5j * (np.pi * profile + np.pi * d_minus))
    np.testing.assert_allclose(
        vg_blocks(2, beta)["k_hat_e"], np.kron(np.eye(2), np.diag(diagonal)), atol=1e-15
    )


@pytest.mark.parametrize("n, b", [(4, 1), (5, 2)])
def test_vg_is_block_diagonal(n, b):
    vg = np.asarray(assemble_vg_matrix(b, n, "quadratic"))
    window = 2**b
    blocks = vg_blocks(b, "quadratic")
    mask = np.kron(np.eye(2 ** (n - b)), np.ones((window, window)))
    assert np.max(np.abs(vg * (1 - mask))) == 0.0
    np.testing.assert_allclose(vg[:window, :window], blocks["k_hat_e"])
    np.testing.assert_allclose(vg[window : 2 * window, window : 2 * window], blocks["k_o"])
    np.testing.assert_allclose(vg[-window:, -window:], blocks["k_hat_o"])
    if n - b >= 2:
        np.testing.assert_allclose(vg[2 * window : 3 * window, 2 * window : 3 * window], blocks["k_e"])


@pytest.mark.parametrize("n, b, beta", BLENDED_CASES)
@pytest.mark.parametrize("synthesize", [False, True])
def test_vg_circuit_matches_matrix(n, b, beta, synthesize):
    circuit = vg_circuit(GaborParams(n, b, beta), synthesize_diagonals=synthesize)
    np.testing.assert_allclose(unitary(circuit), assemble_vg_matrix(b, n, beta), atol=1e-10)


@pytest.mark.parametrize("n, b, beta", BLENDED_CASES)
def test_conjugated_vg_is_reallocation(n, b, beta):
    q_perm = unitary(q_perm_circuit(n - b + 1).placed(range(b - 1, n), n))
    vg = np.asarray(assemble_vg_matrix(b, n, beta))
    np.testing.assert_allclose(
        q_perm.conj().T @ vg @ q_perm, gabor_realloc_matrix(n, b, beta), atol=1e-10
    )


def test_lowering_vg_preserves_unitary():
    circuit = vg_circuit(GaborParams(6, 2, "linear"))
    lowered = lower_multicontrol(circuit)
    assert lowered.num_ancilla == 1
    np.testing.assert_allclose(unitary(lowered), unitary(circuit), atol=1e-10)
