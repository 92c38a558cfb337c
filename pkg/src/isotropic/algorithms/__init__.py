from .grover import (
    GroverConfig,
    grover_operator,
    grover_run,
    grover_states,
    grover_success_closed_form,
    noiseless_state,
    optimal_steps,
)
from .horodecki import horodecki_index_closed_form, horodecki_state, maximally_entangled
from .records import TrajectoryRecord
from .shor import ShorConfig, shor_decode_correct, shor_encode, shor_run, zero_order_residual

__all__ = [
    "GroverConfig",
    "ShorConfig",
    "TrajectoryRecord",
    "grover_operator",
    "grover_run",
    "grover_states",
    "grover_success_closed_form",
    "horodecki_index_closed_form",
    "horodecki_state",
    "maximally_entangled",
    "noiseless_state",
    "optimal_steps",
    "shor_decode_correct",
    "shor_encode",
    "shor_run",
    "zero_order_residual",
]
