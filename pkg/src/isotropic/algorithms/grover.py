"""Grover search on density matrices, with optional depolarizing noise after each iteration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..channels import depolarize_all_local, depolarize_total
from ..errors import BadProbability, BadQubitIndex, ValidationError
from ..isoindex import isotropic_index
from ..qstate import DensityMatrix, PureState
from .records import TrajectoryRecord

ERROR_MODELS = ("none", "tdch", "ldch")
REF_MODES = ("per-step", "target")


def optimal_steps(n_qubits: int) -> int:
    """floor(pi/4 * sqrt(N))."""
    return int(math.floor(math.pi / 4 * math.sqrt(2**n_qubits)))


def _check_target(n: int, target: int) -> None:
    if not 0 <= target < 2**n:
        raise BadQubitIndex(f"target {target} outside 0..{2**n - 1}")


def uniform_state(n: int) -> PureState:
    dim = 2**n
    return PureState(np.full(dim, 1 / math.sqrt(dim), dtype=complex))


def grover_operator(n: int, target: int) -> np.ndarray:
    """G = D O with oracle O = 2|t><t| - I and diffusion D = 2|s><s| - I."""
    _check_target(n, target)
    dim = 2**n
    oracle = -np.eye(dim, dtype=complex)
    oracle[target, target] = 1.0
    s = uniform_state(n).amplitudes
    diffusion = 2 * np.outer(s, s.conj()) - np.eye(dim)
    return diffusion @ oracle


def grover_angle(n: int) -> float:
    return math.asin(1 / math.sqrt(2**n))


def grover_success_closed_form(k: int, n: int) -> float:
    if k < 0:
        raise ValidationError("step count must be non-negative")
    return math.sin((2 * k + 1) * grover_angle(n)) ** 2


def noiseless_state(k: int, n: int, target: int) -> PureState:
    """sin((2k+1)theta)|t> + cos((2k+1)theta)|t_bar>, up to global phase."""
    _check_target(n, target)
    dim = 2**n
    angle = (2 * k + 1) * grover_angle(n)
    amp = np.full(dim, math.cos(angle) / math.sqrt(dim - 1), dtype=complex)
    amp[target] = math.sin(angle)
    return PureState(amp)


@dataclass(frozen=True)
class GroverConfig:
    n_qubits: int
    target: int = 0
    steps: Optional[int] = None
    error: str = "none"
    param: float = 0.0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValidationError("need at least one qubit")
        _check_target(self.n_qubits, self.target)
        if self.error not in ERROR_MODELS:
            raise ValidationError(f"unknown error model {self.error!r}; expected one of {ERROR_MODELS}")
        if not 0.0 <= self.param <= 1.0:
            raise BadProbability(f"error parameter {self.param!r} outside [0, 1]")
        if self.steps is not None and self.steps < 0:
            raise ValidationError("steps must be non-negative")

    @property
    def n_steps(self) -> int:
        return optimal_steps(self.n_qubits) if self.steps is None else self.steps


def _apply_noise(rho: DensityMatrix, cfg: GroverConfig) -> DensityMatrix:
    if cfg.error == "tdch":
        return depolarize_total(rho, cfg.param)
    if cfg.error == "ldch":
        return depolarize_all_local(rho, cfg.param)
    return rho


def grover_states(cfg: GroverConfig) -> list[DensityMatrix]:
    """Density matrices after 0, 1, ..., n_steps noisy iterations."""
    g = grover_operator(cfg.n_qubits, cfg.target)
    gh = g.conj().T
    s = uniform_state(cfg.n_qubits)
    rho = DensityMatrix(s.projector(), check=False)
    out = [rho]
    for _ in range(cfg.n_steps):
        rho = _apply_noise(DensityMatrix(g @ rho.matrix @ gh, check=False), cfg)
        out.append(rho)
    return out


def grover_run(cfg: GroverConfig, ref_mode: str = "per-step") -> list[TrajectoryRecord]:
    """Trajectory of a (noisy) Grover search, one record per step including k = 0.

    With ``ref_mode="per-step"`` the index at step k is taken against the
    noiseless k-step state; ``"target"`` uses |t> throughout.
    """
    if ref_mode not in REF_MODES:
        raise ValidationError(f"unknown reference mode {ref_mode!r}; expected one of {REF_MODES}")
    n, t = cfg.n_qubits, cfg.target
    records = []
    for k, rho in enumerate(grover_states(cfg)):
        ref = noiseless_state(k, n, t) if ref_mode == "per-step" else PureState.basis(t, n)
        success = rho.matrix[t, t].real
        records.append(TrajectoryRecord.build(k, cfg.param, isotropic_index(rho, ref), success))
    return records
