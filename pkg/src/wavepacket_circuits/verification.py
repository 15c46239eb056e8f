""" Circuit-versus-oracle verification and gate-count sweeps """
from typing import Dict, List, Optional, Sequence

import jax
import jax.numpy as jnp
import wandb
from flax import struct
from tqdm import tqdm
from transformers.utils import logging

from . import tensor
from .circuit import adjoint, circuit_to_unitary, elementary_cost, gate_counts
from .circuit.passes import GateCounts
from .configuration import TransformSpec
from .exceptions import WavePacketError
from .oracle import basis_matrix, realloc_matrix, window_coefficients
from .synthesis import build_transform_circuit

logger = logging.get_logger(__name__)

# one comparator flag plus one shared multi-control ancilla
MAX_ANCILLA = 2


@struct.dataclass
class VerificationReport:
    spec: TransformSpec = struct.field(pytree_node=False)
    tol: float = struct.field(pytree_node=False)
    residuals: Dict[str, float] = struct.field(pytree_node=False)
    num_ancilla: int = struct.field(pytree_node=False)
    error: Optional[str] = struct.field(pytree_node=False, default=None)

    @property
    def passed(self) -> bool:
        return (
            self.error is None
            and all(value <= self.tol for value in self.residuals.values())
            and self.num_ancilla <= MAX_ANCILLA
        )

    def to_dict(self) -> dict:
        return {
            **self.spec.to_dict(),
            **self.residuals,
            "num_ancilla": self.num_ancilla,
            "tol": self.tol,
            "passed": self.passed,
            **({"error": self.error} if self.error else {}),
        }

    def format(self) -> str:
        lines = [f"verify {self.spec.describe()} (tol {self.tol:.1e})"]
        for name, value in self.residuals.items():
            status = "ok" if value <= self.tol else "FAIL"
            lines.append(f"  {name:<22} {value:.3e}  {status}")
        lines.append(f"  {'num_ancilla':<22} {self.num_ancilla}")
        if self.error:
            lines.append(f"  {'error':<22} {self.error}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def reallocation_residual(
    spec: TransformSpec, num_signals: int = 20, seed: int = 0
) -> float:
    """
    Max over random spectra f_hat of |windowed sums of T f_hat - <f_hat, psi_hat>|
    taken over every coefficient.
    """
    basis = basis_matrix(spec)
    realloc = realloc_matrix(spec)
    rng = jax.random.PRNGKey(seed)
    worst = 0.0
    for signal_rng in jax.random.split(rng, num_signals):
        fhat = tensor.random_signal(signal_rng, spec.size)
        direct = tensor.dagger(basis.frequency) @ fhat
        windowed = window_coefficients(realloc @ fhat, spec)
        worst = max(worst, tensor.max_abs_diff(direct, windowed))
    return worst


def _verify_circuit(
    spec: TransformSpec, circuit, tol: float, num_signals: int, seed: int
) -> VerificationReport:
    unitary = jnp.asarray(circuit_to_unitary(circuit))
    basis = basis_matrix(spec)
    identity = jnp.eye(spec.size, dtype=jnp.complex128)
    residuals = {
        "circuit_vs_oracle": tensor.max_abs_diff(unitary, basis.coefficient_matrix),
        "circuit_unitarity": tensor.unitarity_defect(unitary),
        "basis_orthonormality": tensor.unitarity_defect(basis.matrix),
        "reallocation": reallocation_residual(spec, num_signals, seed),
        "round_trip": tensor.max_abs_diff(
            jnp.asarray(circuit_to_unitary(adjoint(circuit))) @ unitary, identity
        ),
    }
    return VerificationReport(spec, tol, residuals, circuit.num_ancilla)


def verify_transform(
    spec: TransformSpec,
    tol: float = 1e-10,
    num_signals: int = 20,
    seed: int = 0,
    lower: bool = False,
    use_wandb: bool = False,
) -> VerificationReport:
    """
    Builds the circuit and the oracle and reports every residual. Synthesis errors
    become a failed report instead of propagating.
    """
    try:
        circuit = build_transform_circuit(spec, lower=lower)
        report = _verify_circuit(spec, circuit, tol, num_signals, seed)
    except WavePacketError as e:
        logger.warning(f"{spec.describe()}: {type(e).__name__}: {e}")
        report = VerificationReport(spec, tol, {}, 0, error=f"{type(e).__name__}: {e}")
    else:
        logger.info(f"{spec.describe()}: {'pass' if report.passed else 'FAIL'} {report.residuals}")
    if use_wandb:
        wandb.log(report.to_dict())
    return report


@struct.dataclass
class GateCountRow:
    n: int = struct.field(pytree_node=False)
    b: Optional[int] = struct.field(pytree_node=False)
    counts: GateCounts = struct.field(pytree_node=False)
    num_ancilla: int = struct.field(pytree_node=False)

    @property
    def cost(self) -> int:
        return elementary_cost(self.counts)

    @property
    def ratio_n2(self) -> float:
        return self.cost / self.n**2

    @property
    def ratio_n3(self) -> float:
        return self.cost / self.n**3

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "b": self.b,
            **self.counts.to_dict(),
            "num_ancilla": self.num_ancilla,
            "cost": self.cost,
            "cost_per_n2": self.ratio_n2,
            "cost_per_n3": self.ratio_n3,
        }


def gatecount_table(
    kind: str,
    n_values: Sequence[int],
    b: Optional[int] = None,
    beta: Optional[str] = "linear",
    use_wandb: bool = False,
) -> List[GateCountRow]:
    """
    Counts after synthesizing diagonals, merging the sharp Gabor swap layers and
    lowering multi-controls, one row per n.
    With b None the Gabor window follows the default (n - 1) // 2.
    """
    rows = []
    for n in tqdm(n_values, desc=f"gate counts {kind}", disable=len(n_values) < 4):
        spec = TransformSpec(kind, n, b, beta)
        circuit = build_transform_circuit(
            spec, lower=True, synthesize_diagonals=True, merge_permutations=True
        )
        row = GateCountRow(n, spec.b, gate_counts(circuit), circuit.num_ancilla)
        logger.info(f"{spec.describe()}: cost {row.cost}")
        if use_wandb:
            wandb.log(row.to_dict())
        rows.append(row)
    return rows


def format_gatecount_table(rows: Sequence[GateCountRow]) -> str:
    header = f"{'n':>3} {'b':>3} {'1q':>8} {'2q':>8} {'multi':>8} {'cost':>10} {'cost/n^2':>10} {'cost/n^3':>10}"
    lines = [header]
    for row in rows:
        multi = sum(c for _, c in row.counts.multi_control)
        b = "-" if row.b is None else str(row.b)
        lines.append(
            f"{row.n:>3} {b:>3} {row.counts.single_qubit:>8} {row.counts.two_qubit:>8} "
            f"{multi:>8} {row.cost:>10} {row.ratio_n2:>10.2f} {row.ratio_n3:>10.3f}"
        )
    return "\n".join(lines)
