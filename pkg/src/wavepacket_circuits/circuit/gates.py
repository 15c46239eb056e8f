""" Gate-level intermediate representation """
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from flax import struct

from .. import tensor
from ..exceptions import InvalidParams

NAMED_GATES = ("x", "y", "z", "h", "rz")
SELF_INVERSE_GATES = ("x", "y", "z", "h")

_NAMED_MATRICES = {
    "x": np.asarray(tensor.PAULI_X),
    "y": np.asarray(tensor.PAULI_Y),
    "z": np.asarray(tensor.PAULI_Z),
    "h": np.asarray(tensor.HADAMARD),
}

# unitarity tolerance for Custom blocks
CUSTOM_TOLERANCE = 1e-12

Control = Tuple[int, bool]


@struct.dataclass
class Named1Q:
    name: str = struct.field(pytree_node=False)
    target: int = struct.field(pytree_node=False)
    theta: float = struct.field(pytree_node=False, default=0.0)

    def __post_init__(self):
        if self.name not in NAMED_GATES:
            raise InvalidParams(f"Unknown gate name: {self.name}")

    @property
    def targets(self) -> Tuple[int, ...]:
        return (self.target,)

    @property
    def qubits(self) -> Tuple[int, ...]:
        return (self.target,)

    def matrix(self) -> np.ndarray:
        if self.name == "rz":
            return np.diag([1.0, np.exp(1j * self.theta)]).astype(np.complex128)
        return _NAMED_MATRICES[self.name]

    def inverse(self) -> "Named1Q":
        if self.name == "rz":
            return self.replace(theta=-self.theta)
        return self

    def remap(self, mapping: Callable[[int], int]) -> "Named1Q":
        return self.replace(target=mapping(self.target))

    def key(self):
        if self.name in SELF_INVERSE_GATES:
            return ("named", self.name, self.target)
        return None


@struct.dataclass
class Custom:
    """Dense block; targets[0] is the most significant bit of the block index."""

    unitary: np.ndarray
    targets: Tuple[int, ...] = struct.field(pytree_node=False)

    def __post_init__(self):
        unitary = np.asarray(self.unitary, dtype=np.complex128)
        object.__setattr__(self, "unitary", unitary)
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if unitary.shape != (2 ** len(self.targets),) * 2:
            raise InvalidParams(
                f"matrix of shape {unitary.shape} does not fit {len(self.targets)} targets"
            )
        if len(set(self.targets)) != len(self.targets):
            raise InvalidParams(f"repeated target in {self.targets}")
        defect = np.max(np.abs(unitary.conj().T @ unitary - np.eye(unitary.shape[0])))
        if defect > CUSTOM_TOLERANCE:
            raise InvalidParams(f"custom block is not unitary (defect {defect:.3e})")

    @property
    def qubits(self) -> Tuple[int, ...]:
        return self.targets

    def matrix(self) -> np.ndarray:
        return self.unitary

    def inverse(self) -> "Custom":
        return self.replace(unitary=self.unitary.conj().T)

    def remap(self, mapping: Callable[[int], int]) -> "Custom":
        return self.replace(targets=tuple(mapping(t) for t in self.targets))

    def key(self):
        return None


@struct.dataclass
class Swap:
    a: int = struct.field(pytree_node=False)
    b: int = struct.field(pytree_node=False)

    def __post_init__(self):
        if self.a == self.b:
            raise InvalidParams(f"swap of qubit {self.a} with itself")

    @property
    def targets(self) -> Tuple[int, ...]:
        return (self.a, self.b)

    @property
    def qubits(self) -> Tuple[int, ...]:
        return (self.a, self.b)

    def matrix(self) -> np.ndarray:
        m = np.eye(4, dtype=np.complex128)
        return m[[0, 2, 1, 3]]

    def inverse(self) -> "Swap":
        return self

    def remap(self, mapping: Callable[[int], int]) -> "Swap":
        return Swap(mapping(self.a), mapping(self.b))

    def key(self):
        return ("swap", min(self.a, self.b), max(self.a, self.b))


Elementary = Union[Named1Q, Custom, Swap]


@struct.dataclass
class Controlled:
    """Applies inner on the subspace where every control matches its polarity."""

    controls: Tuple[Control, ...] = struct.field(pytree_node=False)
    inner: Elementary

    def __post_init__(self):
        controls = tuple((int(q), bool(on)) for q, on in self.controls)
        object.__setattr__(self, "controls", controls)
        if isinstance(self.inner, Controlled):
            raise InvalidParams("nested controlled gates must be merged")
        control_qubits = [q for q, _ in controls]
        if not control_qubits:
            raise InvalidParams("controlled gate without controls")
        if len(set(control_qubits)) != len(control_qubits):
            raise InvalidParams(f"repeated control in {control_qubits}")
        if set(control_qubits) & set(self.inner.qubits):
            raise InvalidParams(
                f"controls {control_qubits} overlap targets {self.inner.qubits}"
            )

    @property
    def targets(self) -> Tuple[int, ...]:
        return self.inner.targets

    @property
    def qubits(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.controls) + self.inner.qubits

    @property
    def num_controls(self) -> int:
        return len(self.controls)

    def inverse(self) -> "Controlled":
        return self.replace(inner=self.inner.inverse())

    def remap(self, mapping: Callable[[int], int]) -> "Controlled":
        return Controlled(
            tuple((mapping(q), on) for q, on in self.controls),
            self.inner.remap(mapping),
        )

    def key(self):
        inner_key = self.inner.key()
        if inner_key is None:
            return None
        return ("controlled", frozenset(self.controls), inner_key)


Gate = Union[Named1Q, Custom, Swap, Controlled]


def x(target: int) -> Named1Q:
    return Named1Q("x", target)


def y(target: int) -> Named1Q:
    return Named1Q("y", target)


def z(target: int) -> Named1Q:
    return Named1Q("z", target)


def h(target: int) -> Named1Q:
    return Named1Q("h", target)


def rz(target: int, theta: float) -> Named1Q:
    return Named1Q("rz", target, float(theta))


def swap(a: int, b: int) -> Swap:
    return Swap(a, b)


def custom(matrix, targets: Sequence[int]) -> Custom:
    return Custom(np.asarray(matrix, dtype=np.complex128), tuple(targets))


def controlled(gate: Gate, controls: Sequence[Control]) -> Gate:
    """Adds controls to a gate, merging with controls it already has."""
    controls = tuple((int(q), bool(on)) for q, on in controls)
    if not controls:
        return gate
    if isinstance(gate, Controlled):
        return Controlled(controls + gate.controls, gate.inner)
    return Controlled(controls, gate)


def cnot(control: int, target: int, on: bool = True) -> Controlled:
    return Controlled(((control, on),), x(target))


def mcx(controls: Sequence[Control], target: int) -> Gate:
    return controlled(x(target), controls)


def is_multi_controlled_not(gate: Gate) -> bool:
    return (
        isinstance(gate, Controlled)
        and isinstance(gate.inner, Named1Q)
        and gate.inner.name == "x"
    )


def inner_gate(gate: Gate) -> Elementary:
    return gate.inner if isinstance(gate, Controlled) else gate


def gate_controls(gate: Gate) -> Tuple[Control, ...]:
    return gate.controls if isinstance(gate, Controlled) else ()


def strip_controls(gate: Gate, drop: Optional[set] = None) -> Gate:
    """Removes the listed control qubits (all when drop is None)."""
    if not isinstance(gate, Controlled):
        return gate
    if drop is None:
        return gate.inner
    return controlled(gate.inner, [c for c in gate.controls if c[0] not in drop])


@struct.dataclass
class Circuit:
    """Ordered gates over data qubits 0..n-1 followed by ancillas n..n+a-1."""

    num_data_qubits: int = struct.field(pytree_node=False)
    num_ancilla: int = struct.field(pytree_node=False, default=0)
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_data_qubits < 1:
            raise InvalidParams(
                "circuit needs at least one data qubit", n=self.num_data_qubits
            )
        if self.num_ancilla < 0:
            raise InvalidParams("negative ancilla count", ancilla=self.num_ancilla)
        width = self.num_qubits
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < width:
                    raise InvalidParams(
                        f"gate {gate} references qubit {q} outside 0..{width - 1}"
                    )

    @property
    def num_qubits(self) -> int:
        return self.num_data_qubits + self.num_ancilla

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def extend(self, gates: Sequence[Gate]) -> "Circuit":
        return self.replace(gates=self.gates + tuple(gates))

    def then(self, *others: "Circuit") -> "Circuit":
        """Sequential composition; all circuits share the same data register."""
        gates = list(self.gates)
        num_ancilla = self.num_ancilla
        for other in others:
            if other.num_data_qubits != self.num_data_qubits:
                raise InvalidParams(
                    "cannot compose circuits over different data registers",
                    left=self.num_data_qubits,
                    right=other.num_data_qubits,
                )
            gates.extend(other.gates)
            num_ancilla = max(num_ancilla, other.num_ancilla)
        return Circuit(self.num_data_qubits, num_ancilla, gates)

    def placed(
        self, qubits: Sequence[int], num_data_qubits: int, num_ancilla: int = 0
    ) -> "Circuit":
        """
        Embeds this circuit in a larger register: data qubit i goes to qubits[i],
        ancilla i goes to num_data_qubits + i.
        """
        if len(qubits) != self.num_data_qubits:
            raise InvalidParams(
                f"{self.num_data_qubits} data qubits placed on {len(qubits)} wires"
            )
        qubits = list(qubits)

        def mapping(q):
            if q < self.num_data_qubits:
                return qubits[q]
            return num_data_qubits + q - self.num_data_qubits

        return Circuit(
            num_data_qubits,
            max(num_ancilla, self.num_ancilla),
            [gate.remap(mapping) for gate in self.gates],
        )

    def with_controls(self, controls: Sequence[Control]) -> "Circuit":
        return self.replace(gates=tuple(controlled(g, controls) for g in self.gates))
