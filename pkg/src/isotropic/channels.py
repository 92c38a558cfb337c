"""Depolarizing noise and generic Kraus channels.

The per-qubit depolarizing channel replaces the qubit by I/2 with
probability ``alpha``: ``(1 - alpha) rho + alpha Tr_q(rho) (x) I/2``. In the
uniform-Pauli convention the same map has error probability ``3 alpha / 4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import BadProbability, DimensionMismatch, NotTracePreserving
from .qstate import PAULIS, DensityMatrix, embed_gate

KRAUS_TOL = 1e-9


def _check_probability(x: float, name: str) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise BadProbability(f"{name} = {x!r} is not a probability in [0, 1]")
    return x


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple = field(default_factory=tuple)

    def __post_init__(self):
        ops = tuple(linalg.as_square(m, "Kraus operator") for m in self.operators)
        if not ops:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        dims = {m.shape for m in ops}
        if len(dims) != 1:
            raise DimensionMismatch(f"Kraus operators have mixed shapes {sorted(dims)}")
        object.__setattr__(self, "operators", ops)
        total = sum(m.conj().T @ m for m in ops)
        if np.max(np.abs(total - np.eye(ops[0].shape[0]))) > KRAUS_TOL:
            raise NotTracePreserving("sum of M^H M differs from the identity")

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]


def depolarize_total(rho: DensityMatrix, gamma: float) -> DensityMatrix:
    gamma = _check_probability(gamma, "gamma")
    dim = rho.dim
    return DensityMatrix(gamma * np.eye(dim) / dim + (1.0 - gamma) * rho.matrix, check=False)


def depolarize_local(rho: DensityMatrix, alpha: float, qubit: int) -> DensityMatrix:
    alpha = _check_probability(alpha, "alpha")
    n = rho.n_qubits
    (qubit,) = linalg.check_qubits([qubit], n)
    if alpha == 0.0:
        return rho
    left, right = 2**qubit, 2 ** (n - qubit - 1)
    t = rho.matrix.reshape(left, 2, right, left, 2, right)
    reduced = np.trace(t, axis1=1, axis2=4)
    mixed = np.einsum("abcd,xy->axbcyd", reduced, np.eye(2) / 2).reshape(rho.matrix.shape)
    return DensityMatrix((1.0 - alpha) * rho.matrix + alpha * mixed, check=False)


def depolarize_all_local(rho: DensityMatrix, alpha: float, order: Iterable[int] | None = None) -> DensityMatrix:
    """Local depolarizing noise on every qubit, composed in ascending qubit order."""
    alpha = _check_probability(alpha, "alpha")
    for q in range(rho.n_qubits) if order is None else order:
        rho = depolarize_local(rho, alpha, q)
    return rho


def apply_kraus(rho: DensityMatrix, channel: KrausChannel) -> DensityMatrix:
    if channel.dim != rho.dim:
        raise DimensionMismatch(f"channel acts on dimension {channel.dim}, state has {rho.dim}")
    out = sum(m @ rho.matrix @ m.conj().T for m in channel.operators)
    return DensityMatrix(out, check=False)


def is_unital(channel: KrausChannel, tol: float = KRAUS_TOL) -> bool:
    total = sum(m @ m.conj().T for m in channel.operators)
    return bool(np.max(np.abs(total - np.eye(channel.dim))) <= tol)


def bit_flip(q: float) -> KrausChannel:
    q = _check_probability(q, "q")
    return KrausChannel((np.sqrt(1 - q) * PAULIS["I"], np.sqrt(q) * PAULIS["X"]))


def amplitude_damping(q: float) -> KrausChannel:
    q = _check_probability(q, "q")
    return KrausChannel((np.array([[1, 0], [0, np.sqrt(1 - q)]]), np.array([[0, np.sqrt(q)], [0, 0]])))


def pauli_depolarizing(n_qubits: int, gamma: float) -> KrausChannel:
    """Total depolarizing channel written as a uniform mixture of all n-qubit Paulis."""
    gamma = _check_probability(gamma, "gamma")
    labels = list(PAULIS)
    dim = 4**n_qubits
    ops = []
    for k in range(dim):
        word = [labels[(k >> (2 * (n_qubits - 1 - j))) & 3] for j in range(n_qubits)]
        weight = gamma / dim + (1.0 - gamma if k == 0 else 0.0)
        ops.append(np.sqrt(weight) * linalg.kron_all(PAULIS[w] for w in word))
    return KrausChannel(tuple(ops))


def local_pauli_depolarizing(n_qubits: int, qubit: int, alpha: float) -> KrausChannel:
    """Per-qubit channel in the uniform-Pauli form, error probability ``3 alpha / 4``."""
    alpha = _check_probability(alpha, "alpha")
    weights = {"I": 1 - 3 * alpha / 4, "X": alpha / 4, "Y": alpha / 4, "Z": alpha / 4}
    return KrausChannel(
        tuple(np.sqrt(w) * embed_gate(PAULIS[p], [qubit], n_qubits) for p, w in weights.items())
    )


def mixed_unitary(unitaries: Sequence[np.ndarray], weights: Sequence[float]) -> KrausChannel:
    """Random-unitary channel; always unital."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise BadProbability("mixture weights must be non-negative and sum to 1")
    return KrausChannel(tuple(np.sqrt(wi) * u for wi, u in zip(w, unitaries)))
