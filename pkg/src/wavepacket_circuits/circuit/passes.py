""" Circuit-to-circuit rewrites and gate accounting """
from collections import Counter
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from flax import struct
from transformers.utils import logging

from .gates import (
    Circuit,
    Controlled,
    Custom,
    Gate,
    Named1Q,
    Swap,
    cnot,
    controlled,
    is_multi_controlled_not,
    mcx,
    rz,
    x,
)

logger = logging.get_logger(__name__)


def adjoint(c: Circuit) -> Circuit:
    return c.replace(gates=tuple(g.inverse() for g in reversed(c.gates)))


@struct.dataclass
class GateCounts:
    """
    Gate totals by category. multi_control maps the number of controls k >= 2
    to a count (a controlled SWAP counts one extra control); custom_block maps
    the number of qubits a dense block spans, controls included, to a count.
    """

    single_qubit: int = struct.field(pytree_node=False, default=0)
    two_qubit: int = struct.field(pytree_node=False, default=0)
    multi_control: Tuple[Tuple[int, int], ...] = struct.field(
        pytree_node=False, default=()
    )
    custom_block: Tuple[Tuple[int, int], ...] = struct.field(
        pytree_node=False, default=()
    )

    @property
    def total(self) -> int:
        return (
            self.single_qubit
            + self.two_qubit
            + sum(c for _, c in self.multi_control)
            + sum(c for _, c in self.custom_block)
        )

    def to_dict(self) -> Dict[str, int]:
        out = {"single_qubit": self.single_qubit, "two_qubit": self.two_qubit}
        for k, count in self.multi_control:
            out[f"multi_control_{k}"] = count
        out["custom_block"] = sum(c for _, c in self.custom_block)
        return out


def gate_counts(c: Circuit) -> GateCounts:
    single, two = 0, 0
    multi, blocks = Counter(), Counter()
    for gate in c.gates:
        if isinstance(gate, Named1Q):
            single += 1
        elif isinstance(gate, Swap):
            two += 1
        elif isinstance(gate, Custom):
            blocks[len(gate.targets)] += 1
        elif isinstance(gate.inner, Custom):
            blocks[len(gate.qubits)] += 1
        elif isinstance(gate.inner, Swap):
            multi[gate.num_controls + 1] += 1
        elif gate.num_controls == 1:
            two += 1
        else:
            multi[gate.num_controls] += 1
    return GateCounts(
        single_qubit=single,
        two_qubit=two,
        multi_control=tuple(sorted(multi.items())),
        custom_block=tuple(sorted(blocks.items())),
    )


def elementary_cost(counts: GateCounts) -> int:
    """
    Elementary-gate equivalent: one per single or two-qubit gate, 15(2k-3) per
    k-controlled gate (Toffoli chain), 4^k per dense block on k qubits.
    """
    cost = counts.single_qubit + counts.two_qubit
    cost += sum(15 * (2 * k - 3) * count for k, count in counts.multi_control)
    cost += sum(4**k * count for k, count in counts.custom_block)
    return cost


def cancel_adjacent_inverses(c: Circuit) -> Circuit:
    """Drops adjacent pairs of equal self-inverse gates until none are left."""
    kept = []
    for gate in c.gates:
        key = gate.key()
        if key is not None and kept and kept[-1].key() == key:
            kept.pop()
        else:
            kept.append(gate)
    if len(kept) != len(c.gates):
        logger.debug(f"peephole removed {len(c.gates) - len(kept)} gates")
    return c.replace(gates=tuple(kept))


def _is_rz(gate) -> bool:
    return isinstance(gate.inner, Named1Q) and gate.inner.name == "rz"


def _is_two_controlled_rz(gate) -> bool:
    return isinstance(gate, Controlled) and gate.num_controls == 2 and _is_rz(gate)


def _needs_lowering(gate) -> bool:
    return (
        isinstance(gate, Controlled)
        and gate.num_controls >= 2
        and not is_multi_controlled_not(gate)
        and not _is_two_controlled_rz(gate)
    )


def _fits(gate, shared) -> bool:
    # once shared controls move onto the ancilla the gate must be elementary
    rest = gate.num_controls - len(shared)
    return rest == 0 or (rest == 1 and _is_rz(gate))


def _control_runs(gates) -> Iterator[Tuple[Optional[FrozenSet], List]]:
    """
    Groups consecutive gates that need lowering and share two or more controls.
    Gates kept as they are come out alone with shared None.
    """
    shared, run = frozenset(), []
    for gate in gates:
        if run and _needs_lowering(gate):
            narrowed = shared & frozenset(gate.controls)
            if len(narrowed) >= 2 and all(_fits(g, narrowed) for g in run + [gate]):
                shared = narrowed
                run.append(gate)
                continue
        if run:
            yield shared, run
            shared, run = frozenset(), []
        if _needs_lowering(gate):
            shared, run = frozenset(gate.controls), [gate]
        else:
            yield None, [gate]
    if run:
        yield shared, run


def _lower_run(shared, run, ancilla: int) -> List[Gate]:
    flip = mcx([c for c in run[0].controls if c in shared], ancilla)
    body = [
        controlled(g.inner, [c for c in g.controls if c not in shared] + [(ancilla, True)])
        for g in run
    ]
    return [flip, *body, flip]


def _split_two_controlled_rz(gate) -> List[Gate]:
    """
    Phase theta on c1 c2 t as CRz(theta/2)[c2], CNOT(c1, c2), CRz(-theta/2)[c2],
    CNOT(c1, c2), CRz(theta/2)[c1]. Zero-polarity controls are conjugated by X.
    """
    (first, _), (second, _) = gate.controls
    target, theta = gate.inner.target, gate.inner.theta
    flips = [x(q) for q, on in gate.controls if not on]
    return [
        *flips,
        controlled(rz(target, theta / 2), [(second, True)]),
        cnot(first, second),
        controlled(rz(target, -theta / 2), [(second, True)]),
        cnot(first, second),
        controlled(rz(target, theta / 2), [(first, True)]),
        *flips,
    ]


def lower_multicontrol(c: Circuit) -> Circuit:
    """
    Rewrites every run of consecutive blocks sharing two or more controls as a
    multi-controlled NOT of the shared controls onto one fresh ancilla, the
    blocks controlled by that ancilla and their remaining control, and the same
    NOT again. Rz gates left with two controls become two-qubit gates.
    """
    if not any(_needs_lowering(g) or _is_two_controlled_rz(g) for g in c.gates):
        return c
    ancilla = c.num_qubits
    uses_ancilla = False
    gates = []
    for shared, run in _control_runs(c.gates):
        if shared is not None:
            run = _lower_run(shared, run, ancilla)
            uses_ancilla = True
        for gate in run:
            if _is_two_controlled_rz(gate):
                gates.extend(_split_two_controlled_rz(gate))
            else:
                gates.append(gate)
    lowered = cancel_adjacent_inverses(
        Circuit(c.num_data_qubits, c.num_ancilla + int(uses_ancilla), gates)
    )
    logger.info(
        f"lowered multi-controls: {len(c)} -> {len(lowered)} gates, "
        f"{lowered.num_ancilla} ancilla"
    )
    return lowered
