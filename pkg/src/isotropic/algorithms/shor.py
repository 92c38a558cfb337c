"""Shor's nine-qubit code with a measurement-free decoder/corrector.

The data qubit is qubit 0; qubits 1-8 start in |0> and are traced out after
decoding. The decoder, per block (0,1,2), (3,4,5), (6,7,8), undoes the bit
repetition and majority-corrects the block leader with a Toffoli, then does
the same for the phase repetition across the leaders 0, 3, 6 after a
Hadamard on each. The encoder is its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..channels import depolarize_all_local
from ..errors import BadProbability, ValidationError
from ..isoindex import isotropic_index
from ..linalg import partial_trace
from ..qstate import CNOT, H, PAULIS, TOFFOLI, DensityMatrix, PureState, embed_gate
from .records import TrajectoryRecord

N_QUBITS = 9
LEADERS = (0, 3, 6)


def decoder_gates() -> list[tuple[np.ndarray, tuple[int, ...]]]:
    gates = []
    for lead in LEADERS:
        gates += [
            (CNOT, (lead, lead + 1)),
            (CNOT, (lead, lead + 2)),
            (TOFFOLI, (lead + 1, lead + 2, lead)),
        ]
    gates += [(H, (lead,)) for lead in LEADERS]
    gates += [(CNOT, (0, 3)), (CNOT, (0, 6)), (TOFFOLI, (3, 6, 0))]
    return gates


@lru_cache(maxsize=None)
def _decoder() -> np.ndarray:
    u = np.eye(2**N_QUBITS, dtype=complex)
    for gate, targets in decoder_gates():
        u = embed_gate(gate, targets, N_QUBITS) @ u
    u.setflags(write=False)
    return u


def shor_decode_correct() -> np.ndarray:
    return _decoder()


def shor_encode() -> np.ndarray:
    return _decoder().conj().T


def encoded_input(psi: PureState) -> np.ndarray:
    """|psi> (x) |0>^8 as a vector."""
    ancilla = np.zeros(2 ** (N_QUBITS - 1), dtype=complex)
    ancilla[0] = 1.0
    return np.kron(psi.amplitudes, ancilla)


@dataclass(frozen=True)
class ShorConfig:
    initial_state: PureState
    channel_alpha: float = 0.0

    def __post_init__(self):
        if not isinstance(self.initial_state, PureState):
            object.__setattr__(self, "initial_state", PureState(self.initial_state))
        if self.initial_state.n_qubits != 1:
            raise ValidationError("the initial state must be a single qubit")
        if not 0.0 <= self.channel_alpha <= 1.0:
            raise BadProbability(f"alpha = {self.channel_alpha!r} outside [0, 1]")


def output_state(cfg: ShorConfig) -> DensityMatrix:
    """Data-qubit state after encode, local depolarizing channel and decode."""
    v = shor_encode() @ encoded_input(cfg.initial_state)
    rho = DensityMatrix(np.outer(v, v.conj()), check=False)
    rho = depolarize_all_local(rho, cfg.channel_alpha)
    dec = shor_decode_correct()
    out = dec @ rho.matrix @ dec.conj().T
    return DensityMatrix(partial_trace(out, [0]), check=False)


def success_probability(psi: PureState, rho: DensityMatrix) -> float:
    """P_ex = <psi|rho|psi>."""
    a = psi.amplitudes
    return float(np.vdot(a, rho.matrix @ a).real)


def shor_run(cfg: ShorConfig) -> TrajectoryRecord:
    rho = output_state(cfg)
    idx = isotropic_index(rho, cfg.initial_state)
    return TrajectoryRecord.build(0, cfg.channel_alpha, idx, success_probability(cfg.initial_state, rho))


def zero_order_residual(record: TrajectoryRecord) -> float:
    """P_ex - (1 - p/2): error of the approximation that ignores dis-alignment."""
    return record.success - (1.0 - record.weight / 2.0)


def corrected_after_pauli(psi: PureState, pauli: str, qubit: int) -> DensityMatrix:
    """Data-qubit state when a single Pauli error hits ``qubit`` between encoder and decoder."""
    v = shor_encode() @ encoded_input(psi)
    v = embed_gate(PAULIS[pauli], [qubit], N_QUBITS) @ v
    v = shor_decode_correct() @ v
    return DensityMatrix(partial_trace(np.outer(v, v.conj()), [0]), check=False)
