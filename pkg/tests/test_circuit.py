import json

import chex
import numpy as np
import pytest

from wavepacket_circuits import tensor
from wavepacket_circuits.circuit import (
    Circuit,
    Controlled,
    GateCounts,
    adjoint,
    apply_circuit,
    cancel_adjacent_inverses,
    circuit_from_json,
    circuit_to_json,
    circuit_to_unitary,
    cnot,
    controlled,
    custom,
    elementary_cost,
    gate_counts,
    h,
    lower_multicontrol,
    mcx,
    rz,
    swap,
    x,
)
from wavepacket_circuits.circuit.serialization import (
    circuit_to_dict,
    dumps,
    gate_to_dict,
    signal_from_dict,
    signal_to_dict,
)
from wavepacket_circuits.exceptions import (
    AncillaLeakage,
    DimensionMismatch,
    DimensionTooLarge,
    InvalidParams,
)
from wavepacket_circuits.synthesis import qft_circuit


def test_single_hadamard():
    u = circuit_to_unitary(Circuit(1, 0, [h(0)]))
    np.testing.assert_allclose(u, tensor.HADAMARD, atol=1e-15)


def test_cnot_upper_qubit_controls():
    u = np.asarray(circuit_to_unitary(Circuit(2, 0, [cnot(1, 0)])))
    np.testing.assert_allclose(u[:, 0], np.eye(4)[0])
    np.testing.assert_allclose(u[:, 2], np.eye(4)[3])


def test_zero_controlled_not():
    u = np.asarray(circuit_to_unitary(Circuit(2, 0, [cnot(1, 0, on=False)])))
    np.testing.assert_allclose(u[:, 0], np.eye(4)[1])
    np.testing.assert_allclose(u[:, 3], np.eye(4)[3])


def test_custom_targets_are_msb_first():
    block = np.kron(np.asarray(tensor.PAULI_X), np.eye(2))
    u = np.asarray(circuit_to_unitary(Circuit(2, 0, [custom(block, [0, 1])])))
    # flips the first listed target, qubit 0
    np.testing.assert_allclose(u[:, 0], np.eye(4)[1])


def test_gate_validation():
    with pytest.raises(InvalidParams):
        controlled(x(0), [(0, True)])
    with pytest.raises(InvalidParams):
        custom(np.diag([1.0, 2.0]), [0])
    with pytest.raises(InvalidParams):
        swap(1, 1)
    with pytest.raises(InvalidParams):
        Circuit(2, 0, [h(2)])


def test_controlled_gates_merge():
    gate = controlled(cnot(0, 1), [(2, False)])
    assert gate.controls == ((2, False), (0, True))
    assert gate.inner == x(1)


def test_two_controlled_block_lowers_to_ancilla_pattern(rng):
    block = custom(np.asarray(tensor.random_unitary(rng, 2)), [0])
    c = Circuit(3, 0, [controlled(block, [(1, True), (2, False)])])
    lowered = lower_multicontrol(c)
    assert lowered.num_ancilla == 1
    assert len(lowered) == 3
    np.testing.assert_allclose(
        circuit_to_unitary(lowered), circuit_to_unitary(c), atol=1e-12
    )


def test_lowering_without_multicontrols_is_a_no_op():
    c = qft_circuit(3)
    assert lower_multicontrol(c) is c


def test_lowering_shares_the_ancilla_between_equal_controls(rng):
    first = custom(np.asarray(tensor.random_unitary(rng, 2)), [0])
    second = custom(np.asarray(tensor.random_unitary(rng, 2)), [1])
    controls = [(2, True), (3, True)]
    c = Circuit(4, 0, [controlled(first, controls), controlled(second, controls)])
    lowered = lower_multicontrol(c)
    # the uncompute of the first block cancels the compute of the second
    assert len(lowered) == 4
    np.testing.assert_allclose(
        circuit_to_unitary(lowered), circuit_to_unitary(c), atol=1e-12
    )


def test_two_controlled_rz_needs_no_ancilla():
    c = Circuit(3, 0, [controlled(rz(0, 0.7), [(1, True), (2, False)])])
    lowered = lower_multicontrol(c)
    assert lowered.num_ancilla == 0
    counts = gate_counts(lowered)
    assert counts.multi_control == ()
    # three CRz, two CNOTs and the X pair around the zero control
    assert (counts.single_qubit, counts.two_qubit) == (2, 5)
    np.testing.assert_allclose(
        circuit_to_unitary(lowered), circuit_to_unitary(c), atol=1e-12
    )


def test_run_computes_shared_controls_once(rng):
    block = custom(np.asarray(tensor.random_unitary(rng, 2)), [1])
    shared = [(3, True), (4, False)]
    c = Circuit(
        5,
        0,
        [
            controlled(h(0), shared),
            controlled(rz(0, 0.3), shared + [(1, True)]),
            controlled(swap(0, 1), shared),
            controlled(rz(1, -1.1), shared + [(2, False)]),
            controlled(block, shared),
        ],
    )
    lowered = lower_multicontrol(c)
    assert lowered.num_ancilla == 1
    # one compute and one uncompute of the shared controls
    flips = [g for g in lowered if isinstance(g, Controlled) and g.inner == x(5)]
    assert [g.num_controls for g in flips] == [2, 2]
    np.testing.assert_allclose(
        circuit_to_unitary(lowered), circuit_to_unitary(c), atol=1e-12
    )


def test_run_breaks_when_a_block_keeps_extra_controls(rng):
    block = custom(np.asarray(tensor.random_unitary(rng, 2)), [0])
    shared = [(3, True), (4, True)]
    c = Circuit(
        5,
        0,
        [controlled(h(0), shared), controlled(block, shared + [(2, True)])],
    )
    lowered = lower_multicontrol(c)
    assert dict(gate_counts(lowered).multi_control) == {2: 2, 3: 2}
    np.testing.assert_allclose(
        circuit_to_unitary(lowered), circuit_to_unitary(c), atol=1e-12
    )


def test_apply_circuit_matches_unitary(random_circuit, random_signal):
    c = random_circuit(5, depth=40, seed=3)
    psi = random_signal(32)
    np.testing.assert_allclose(
        apply_circuit(c, psi), np.asarray(circuit_to_unitary(c)) @ psi, atol=1e-10
    )


def test_apply_circuit_batches_columns(random_circuit):
    c = random_circuit(3, seed=1)
    np.testing.assert_allclose(
        apply_circuit(c, np.eye(8)), circuit_to_unitary(c), atol=1e-12
    )


def test_apply_circuit_is_linear(random_circuit, random_signal):
    c = random_circuit(4, seed=2)
    u, v = random_signal(16), random_signal(16)
    alpha, beta = 0.3 - 1.2j, 2.0 + 0.5j
    np.testing.assert_allclose(
        apply_circuit(c, alpha * u + beta * v),
        alpha * apply_circuit(c, u) + beta * apply_circuit(c, v),
        atol=1e-12,
    )


def test_identity_circuit_leaves_signal(random_signal):
    psi = random_signal(8)
    np.testing.assert_allclose(apply_circuit(Circuit(3), psi), psi)


def test_qft_of_delta_is_uniform():
    out = apply_circuit(qft_circuit(4), np.eye(16)[0])
    np.testing.assert_allclose(out, np.full(16, 0.25), atol=1e-12)


def test_apply_circuit_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        apply_circuit(Circuit(3), np.ones(4))


def test_dense_limit():
    with pytest.raises(DimensionTooLarge):
        circuit_to_unitary(Circuit(13))


def test_ancilla_leakage_is_detected():
    leaky = Circuit(1, 1, [cnot(0, 1)])
    with pytest.raises(AncillaLeakage):
        circuit_to_unitary(leaky)
    with pytest.raises(AncillaLeakage):
        apply_circuit(leaky, np.array([0.0, 1.0]))


def test_adjoint_of_named_gates():
    assert adjoint(Circuit(1, 0, [h(0)])).gates == (h(0),)
    assert adjoint(Circuit(1, 0, [rz(0, 0.4)])).gates == (rz(0, -0.4),)


def test_adjoint_is_dagger(random_circuit):
    c = random_circuit(4, seed=5)
    chex.assert_trees_all_close(
        circuit_to_unitary(adjoint(c)),
        tensor.dagger(circuit_to_unitary(c)),
        atol=1e-12,
    )


def test_round_trip(random_circuit):
    c = random_circuit(4, seed=6)
    product = np.asarray(circuit_to_unitary(adjoint(c))) @ np.asarray(circuit_to_unitary(c))
    np.testing.assert_allclose(product, np.eye(16), atol=1e-10)


def test_gate_counts():
    counts = gate_counts(Circuit(2, 0, [h(0), cnot(0, 1)]))
    assert counts.single_qubit == 1
    assert counts.two_qubit == 1
    assert counts.total == 2


def test_gate_counts_categories():
    c = Circuit(
        4,
        0,
        [
            mcx([(0, True), (1, True)], 2),
            controlled(swap(0, 1), [(2, True)]),
            custom(np.eye(4), [0, 1]),
            controlled(custom(np.eye(2), [3]), [(0, True)]),
        ],
    )
    counts = gate_counts(c)
    assert counts.multi_control == ((2, 2),)
    assert counts.custom_block == ((2, 2),)
    assert counts.to_dict() == {
        "single_qubit": 0,
        "two_qubit": 0,
        "multi_control_2": 2,
        "custom_block": 2,
    }


def test_gate_counts_invariant_under_adjoint(random_circuit):
    c = random_circuit(5, seed=7)
    assert gate_counts(adjoint(c)) == gate_counts(c)


def test_elementary_cost():
    counts = GateCounts(
        single_qubit=2, two_qubit=1, multi_control=((3, 1),), custom_block=((2, 1),)
    )
    assert elementary_cost(counts) == 2 + 1 + 45 + 16


def test_cancel_adjacent_inverses():
    c = Circuit(2, 0, [h(0), h(0), x(1), cnot(0, 1), cnot(0, 1), rz(0, 0.1), rz(0, 0.1)])
    out = cancel_adjacent_inverses(c)
    assert out.gates == (x(1), rz(0, 0.1), rz(0, 0.1))


def test_cancel_adjacent_inverses_cascades():
    c = Circuit(2, 0, [x(0), swap(0, 1), swap(1, 0), x(0)])
    assert len(cancel_adjacent_inverses(c)) == 0


def test_json_round_trip(random_circuit):
    c = random_circuit(4, seed=8)
    restored = circuit_from_json(circuit_to_json(c))
    assert restored.num_data_qubits == 4
    np.testing.assert_allclose(
        circuit_to_unitary(restored), circuit_to_unitary(c), atol=1e-15
    )


def test_json_schema_fields():
    gate = controlled(rz(0, 0.5), [(1, False)])
    assert gate_to_dict(gate) == {
        "kind": "controlled",
        "targets": [0],
        "controls": [{"qubit": 1, "on": False}],
        "inner": {"kind": "rz", "targets": [0], "theta": 0.5},
    }
    d = json.loads(circuit_to_json(Circuit(2, 1, [h(0)])))
    assert d == {"n": 2, "ancilla": 1, "gates": [{"kind": "h", "targets": [0]}]}
    assert circuit_to_dict(Circuit(1)) == {"n": 1, "ancilla": 0, "gates": []}


def test_dumps_is_deterministic():
    assert dumps({"a": 1.0, "b": [1, True, None]}) == '{"a":1.0000000000000000e+00,"b":[1,true,null]}'
    assert dumps({"x": 0.1}) == dumps({"x": float("0.1")})


def test_signal_dict(random_signal):
    signal = random_signal(8)
    d = signal_to_dict(signal)
    assert d["n"] == 3
    np.testing.assert_allclose(signal_from_dict(d), signal)
    with pytest.raises(InvalidParams):
        signal_from_dict({"n": 2, "data": d["data"]})
