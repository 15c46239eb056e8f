""" Deterministic JSON for circuits, signals and dense matrices """
import json
import math
from pathlib import Path
from typing import Any, Union

import numpy as np

from ..exceptions import InvalidParams
from .gates import Circuit, Controlled, Custom, Gate, Named1Q, Swap, custom, swap


def format_float(x: float) -> str:
    # 17 significant digits, identical text for identical doubles
    x = float(x)
    if not math.isfinite(x):
        raise InvalidParams(f"cannot serialize non-finite value {x}")
    return format(x, ".16e")


def dumps(obj: Any) -> str:
    """Compact JSON with fixed key order and fixed float formatting."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def complex_to_pairs(values) -> list:
    values = np.asarray(values, dtype=np.complex128)
    if values.ndim == 1:
        return [[float(v.real), float(v.imag)] for v in values]
    return [complex_to_pairs(row) for row in values]


def pairs_to_complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=np.float64)
    if arr.shape[-1] != 2:
        raise InvalidParams("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def gate_to_dict(gate: Gate) -> dict:
    if isinstance(gate, Named1Q):
        out = {"kind": gate.name, "targets": [gate.target]}
        if gate.name == "rz":
            out["theta"] = gate.theta
        return out
    if isinstance(gate, Swap):
        return {"kind": "swap", "targets": [gate.a, gate.b]}
    if isinstance(gate, Custom):
        return {
            "kind": "custom",
            "targets": list(gate.targets),
            "matrix": complex_to_pairs(gate.unitary),
        }
    return {
        "kind": "controlled",
        "targets": list(gate.targets),
        "controls": [{"qubit": q, "on": on} for q, on in gate.controls],
        "inner": gate_to_dict(gate.inner),
    }


def gate_from_dict(d: dict) -> Gate:
    kind = d["kind"]
    if kind in ("h", "x", "y", "z"):
        return Named1Q(kind, int(d["targets"][0]))
    if kind == "rz":
        return Named1Q("rz", int(d["targets"][0]), float(d["theta"]))
    if kind == "swap":
        return swap(*[int(t) for t in d["targets"]])
    if kind == "custom":
        return custom(pairs_to_complex(d["matrix"]), d["targets"])
    if kind == "controlled":
        controls = tuple((int(c["qubit"]), bool(c["on"])) for c in d["controls"])
        return Controlled(controls, gate_from_dict(d["inner"]))
    raise InvalidParams(f"unknown gate kind {kind!r}")


def circuit_to_dict(c: Circuit) -> dict:
    return {
        "n": c.num_data_qubits,
        "ancilla": c.num_ancilla,
        "gates": [gate_to_dict(g) for g in c.gates],
    }


def circuit_from_dict(d: dict) -> Circuit:
    return Circuit(
        int(d["n"]), int(d["ancilla"]), [gate_from_dict(g) for g in d["gates"]]
    )


def circuit_to_json(c: Circuit) -> str:
    return dumps(circuit_to_dict(c))


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))


def write_json(path: Union[str, Path], obj: Any):
    Path(path).write_text(dumps(obj) + "\n")


def read_json(path: Union[str, Path]) -> Any:
    return json.loads(Path(path).read_text())


def signal_to_dict(signal) -> dict:
    signal = np.asarray(signal, dtype=np.complex128)
    n = int(round(math.log2(signal.shape[0])))
    return {"n": n, "data": complex_to_pairs(signal)}


def signal_from_dict(d: dict) -> np.ndarray:
    data = pairs_to_complex(d["data"])
    n = int(d["n"])
    if data.shape != (2**n,):
        raise InvalidParams(
            f"signal of length {data.shape[0]} does not match n={n}", n=n
        )
    if not np.all(np.isfinite(data)):
        raise InvalidParams("signal has non-finite entries")
    return data
