from transformers.utils import logging

from ..circuit import Circuit, lower_multicontrol
from .diagonal import DiagonalSpec, exp_affine_of_beta_diag, exp_poly_circuit, monomial_expand
from .gabor import (
    GaborParams,
    assemble_vg_matrix,
    blended_gabor_circuit,
    sharp_gabor_circuit,
    vg_blocks,
    vg_circuit,
)
from .permutations import (
    folded_s_perm_circuit,
    perm_table,
    q_perm_circuit,
    r_perm_circuit,
    s_perm_circuit,
    shift_circuit,
    t_perm_circuit,
    wire_permutation_circuit,
    wq_circuit,
)
from .profiles import BETA_PRESETS, BetaProfile, eval_beta, eval_g, get_profile
from .qft import iqft_circuit, qft_circuit
from .wavelet import (
    comparator_prefixes,
    meyer_circuit,
    psi_ms_hat,
    shannon_circuit,
    shannon_reshuffle_circuit,
    tw_circuit,
    wk_matrix,
    wk_tilde_matrix,
    wl_circuit,
    wr_circuit,
)

logger = logging.get_logger(__name__)


def build_transform_circuit(
    spec,
    lower: bool = False,
    synthesize_diagonals: bool = False,
    merge_permutations: bool = False,
) -> Circuit:
    """
    Circuit mapping a signal f to its coefficient vector a for a TransformSpec.
    merge_permutations only changes the sharp Gabor layout.
    """
    if spec.kind == "gabor-sharp":
        circuit = sharp_gabor_circuit(
            GaborParams(spec.n, spec.b), merge_permutations=merge_permutations
        )
    elif spec.kind == "gabor-blended":
        circuit = blended_gabor_circuit(
            GaborParams(spec.n, spec.b, spec.profile),
            synthesize_diagonals=synthesize_diagonals,
        )
    elif spec.kind == "shannon":
        circuit = shannon_circuit(spec.n)
    else:
        circuit = meyer_circuit(spec.n, spec.profile)
    if lower:
        circuit = lower_multicontrol(circuit)
    logger.debug(
        f"{spec.describe()}: {len(circuit)} gates on {circuit.num_data_qubits} + "
        f"{circuit.num_ancilla} qubits"
    )
    return circuit
