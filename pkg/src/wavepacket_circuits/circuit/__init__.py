from .gates import (
    Circuit,
    Controlled,
    Custom,
    Gate,
    Named1Q,
    Swap,
    cnot,
    controlled,
    custom,
    h,
    mcx,
    rz,
    swap,
    x,
    y,
    z,
)
from .passes import (
    GateCounts,
    adjoint,
    cancel_adjacent_inverses,
    elementary_cost,
    gate_counts,
    lower_multicontrol,
)
from .serialization import circuit_from_json, circuit_to_json
from .simulator import apply_circuit, circuit_to_unitary
