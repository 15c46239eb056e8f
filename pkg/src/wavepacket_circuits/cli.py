#!/usr/bin/env python
# coding=utf-8
"""
Command line entry point: build, verify, transform, gatecount and basis-dump.

    wavepacket-circuits build --kind meyer --n 5 --beta deg7 --out meyer5.json
    wavepacket-circuits verify tools/verify/config/meyer.json
"""
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np
import transformers
import wandb
from transformers import HfArgumentParser

from .circuit import adjoint, apply_circuit, gate_counts
from .circuit.serialization import (
    circuit_to_dict,
    complex_to_pairs,
    format_float,
    read_json,
    signal_from_dict,
    signal_to_dict,
    write_json,
)
from .configuration import TRANSFORM_KINDS, TransformSpec
from .exceptions import InvalidParams, WavePacketError
from .oracle import basis_matrix, realloc_matrix
from .synthesis import GaborParams, assemble_vg_matrix, build_transform_circuit
from .synthesis.profiles import BETA_PRESETS
from .verification import format_gatecount_table, gatecount_table, verify_transform

logger = logging.getLogger(__name__)

VERIFY_LIMIT = 10
DUMP_LIMIT = 9


@dataclass
class TransformArguments:
    """
    Which transform to build and its parameters.
    """

    kind: str = field(
        metadata={"help": f"Transform kind, one of {list(TRANSFORM_KINDS)}."},
    )
    n: int = field(metadata={"help": "Number of qubits, the signal has 2^n entries."})
    b: Optional[int] = field(
        default=None,
        metadata={"help": "Gabor window exponent, B = 2^b. Defaults to (n - 1) // 2."},
    )
    beta: Optional[str] = field(
        default="linear",
        metadata={"help": f"Blending profile, one of {list(BETA_PRESETS)}."},
    )

    def __post_init__(self):
        assert self.kind in TRANSFORM_KINDS, f"unknown kind {self.kind}"
        assert self.beta in BETA_PRESETS, f"unknown beta profile {self.beta}"

    def to_spec(self) -> TransformSpec:
        return TransformSpec(self.kind, self.n, self.b, self.beta)


@dataclass
class BuildArguments:
    out: str = field(metadata={"help": "Path of the circuit JSON to write."})
    lower: bool = field(
        default=False,
        metadata={"help": "Lower multi-controlled blocks onto one shared ancilla."},
    )
    synthesize_diagonals: bool = field(
        default=False,
        metadata={
            "help": "Emit blended Gabor blocks as Hadamards and phase polynomials instead of dense blocks."
        },
    )
    merge_permutations: bool = field(
        default=False,
        metadata={"help": "Fold the Fourier swap layers of a sharp Gabor circuit into S_{N,B}."},
    )


@dataclass
class VerifyArguments:
    tol: float = field(default=1e-10, metadata={"help": "Largest accepted residual."})
    num_signals: int = field(
        default=20, metadata={"help": "Random spectra for the reallocation check."}
    )
    seed: int = field(default=0, metadata={"help": "Seed of the random spectra."})
    use_wandb: bool = field(
        default=False, metadata={"help": "Log the report to Weights & Biases."}
    )
    wandb_project: str = field(default="wavepacket-circuits")
    wandb_entity: Optional[str] = field(default=None)


@dataclass
class SignalArguments:
    input_path: str = field(
        metadata={"help": "Signal JSON to transform.", "aliases": ["--in"]},
    )
    out: str = field(metadata={"help": "Path of the coefficient JSON to write."})
    inverse: bool = field(
        default=False, metadata={"help": "Apply the inverse transform instead."}
    )


@dataclass
class GatecountArguments:
    kind: str = field(
        metadata={"help": f"Transform kind, one of {list(TRANSFORM_KINDS)}."},
    )
    n_min: int = field(default=4)
    n_max: int = field(default=10)
    b: Optional[int] = field(
        default=None,
        metadata={"help": "Fixed Gabor window exponent. Defaults to (n - 1) // 2 per n."},
    )
    beta: Optional[str] = field(default="linear")
    use_wandb: bool = field(default=False)
    wandb_project: str = field(default="wavepacket-circuits")
    wandb_entity: Optional[str] = field(default=None)

    def __post_init__(self):
        assert self.kind in TRANSFORM_KINDS, f"unknown kind {self.kind}"
        assert self.beta in BETA_PRESETS, f"unknown beta profile {self.beta}"
        if self.n_min > self.n_max:
            raise InvalidParams(
                f"empty range n_min={self.n_min} > n_max={self.n_max}",
                n_min=self.n_min,
                n_max=self.n_max,
            )


@dataclass
class DumpArguments:
    out: str = field(metadata={"help": "Path of the matrix JSON to write."})
    matrix: str = field(
        default="basis",
        metadata={"help": "Which matrix to dump: basis, realloc or vg."},
    )
    heatmap: Optional[str] = field(
        default=None,
        metadata={"help": "Magnitude CSV path. Defaults to the JSON path with a .csv suffix."},
    )

    def __post_init__(self):
        assert self.matrix in ["basis", "realloc", "vg"], f"unknown matrix {self.matrix}"
        if self.heatmap is None:
            self.heatmap = str(Path(self.out).with_suffix(".csv"))


def _parse(dataclass_types, args: List[str], command: str):
    parser = HfArgumentParser(dataclass_types, prog=f"wavepacket-circuits {command}")
    if len(args) == 1 and args[0].endswith(".json"):
        return parser.parse_json_file(json_file=os.path.abspath(args[0]))
    return parser.parse_args_into_dataclasses(args=args)


def cmd_build(args: List[str]) -> int:
    transform_args, build_args = _parse((TransformArguments, BuildArguments), args, "build")
    spec = transform_args.to_spec()
    circuit = build_transform_circuit(
        spec,
        lower=build_args.lower,
        synthesize_diagonals=build_args.synthesize_diagonals,
        merge_permutations=build_args.merge_permutations,
    )
    write_json(build_args.out, circuit_to_dict(circuit))
    counts = gate_counts(circuit)
    print(f"{spec.describe()}: {circuit.num_data_qubits} data qubits, {circuit.num_ancilla} ancilla")
    for name, count in counts.to_dict().items():
        print(f"  {name:<16} {count}")
    logger.info(f"wrote {build_args.out}")
    return 0


def cmd_verify(args: List[str]) -> int:
    transform_args, verify_args = _parse((TransformArguments, VerifyArguments), args, "verify")
    spec = transform_args.to_spec()
    if spec.n > VERIFY_LIMIT:
        raise InvalidParams(f"verify supports n <= {VERIFY_LIMIT}, got n={spec.n}", n=spec.n)
    if verify_args.use_wandb:
        wandb.init(
            entity=verify_args.wandb_entity,
            project=verify_args.wandb_project,
            job_type="verify",
            config=spec.to_dict(),
        )
    report = verify_transform(
        spec,
        tol=verify_args.tol,
        num_signals=verify_args.num_signals,
        seed=verify_args.seed,
        use_wandb=verify_args.use_wandb,
    )
    print(report.format())
    if verify_args.use_wandb:
        wandb.finish()
    return 0 if report.passed else 1


def cmd_transform(args: List[str]) -> int:
    transform_args, signal_args = _parse((TransformArguments, SignalArguments), args, "transform")
    spec = transform_args.to_spec()
    signal = signal_from_dict(read_json(signal_args.input_path))
    circuit = build_transform_circuit(spec)
    if signal_args.inverse:
        circuit = adjoint(circuit)
    out = apply_circuit(circuit, signal, progress=True)
    write_json(signal_args.out, signal_to_dict(out))
    logger.info(f"{'inverse ' if signal_args.inverse else ''}{spec.describe()} -> {signal_args.out}")
    return 0


def cmd_gatecount(args: List[str]) -> int:
    (gatecount_args,) = _parse((GatecountArguments,), args, "gatecount")
    if gatecount_args.use_wandb:
        wandb.init(
            entity=gatecount_args.wandb_entity,
            project=gatecount_args.wandb_project,
            job_type="gatecount",
            config={"kind": gatecount_args.kind, "beta": gatecount_args.beta},
        )
    rows = gatecount_table(
        gatecount_args.kind,
        range(gatecount_args.n_min, gatecount_args.n_max + 1),
        b=gatecount_args.b,
        beta=gatecount_args.beta,
        use_wandb=gatecount_args.use_wandb,
    )
    print(format_gatecount_table(rows))
    if gatecount_args.use_wandb:
        wandb.finish()
    return 0


def _dump_matrix(spec: TransformSpec, which: str):
    if which == "basis":
        return basis_matrix(spec).matrix
    if which == "realloc":
        return realloc_matrix(spec)
    if spec.kind != "gabor-blended":
        raise InvalidParams(f"V_G only exists for gabor-blended, got {spec.kind}")
    params = GaborParams(spec.n, spec.b, spec.profile)
    return assemble_vg_matrix(params.b, params.n, params.beta)


def write_heatmap(path, matrix):
    magnitude = np.abs(np.asarray(matrix))
    rows, cols = np.indices(magnitude.shape)
    lines = ["row,col,magnitude"]
    for r, c, value in zip(rows.ravel(), cols.ravel(), magnitude.ravel()):
        lines.append(f"{r},{c},{format_float(value)}")
    Path(path).write_text("\n".join(lines) + "\n")


def cmd_basis_dump(args: List[str]) -> int:
    transform_args, dump_args = _parse((TransformArguments, DumpArguments), args, "basis-dump")
    spec = transform_args.to_spec()
    if spec.n > DUMP_LIMIT:
        raise InvalidParams(f"basis-dump supports n <= {DUMP_LIMIT}, got n={spec.n}", n=spec.n)
    matrix = _dump_matrix(spec, dump_args.matrix)
    write_json(
        dump_args.out,
        {**spec.to_dict(), "which": dump_args.matrix, "matrix": complex_to_pairs(matrix)},
    )
    write_heatmap(dump_args.heatmap, matrix)
    logger.info(f"wrote {dump_args.out} and {dump_args.heatmap}")
    return 0


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "transform": cmd_transform,
    "gatecount": cmd_gatecount,
    "basis-dump": cmd_basis_dump,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] not in COMMANDS:
        print(f"usage: wavepacket-circuits {{{','.join(COMMANDS)}}} [args | config.json]")
        return 2

    logging.basicConfig(
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        datefmt="%m/%d/%Y %H:%M:%S",
        level=logging.INFO,
    )
    transformers.utils.logging.set_verbosity_info()

    command, args = argv[0], argv[1:]
    try:
        return COMMANDS[command](args)
    except WavePacketError as e:
        logger.error(f"{command} failed: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
