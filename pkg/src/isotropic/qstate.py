"""Pure states, density matrices and standard gates on n qubits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotHermitian, NotNormalized, NotPSD, NotUnitary, ValidationError

TOL_STATE = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def _controlled_x(n_controls: int) -> np.ndarray:
    dim = 2 ** (n_controls + 1)
    u = np.eye(dim, dtype=complex)
    u[[dim - 2, dim - 1]] = u[[dim - 1, dim - 2]]
    return u


# control qubit(s) first, target last
CNOT = _controlled_x(1)
TOFFOLI = _controlled_x(2)


@dataclass(frozen=True)
class PureState:
    """Unit-norm amplitude vector of length ``2**n``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).ravel()
        object.__setattr__(self, "amplitudes", amp)
        linalg.num_qubits(amp.size)
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > TOL_STATE:
            raise NotNormalized(f"state norm is {norm!r}, expected 1 within {TOL_STATE:g}")

    @property
    def n_qubits(self) -> int:
        return linalg.num_qubits(self.amplitudes.size)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def basis(cls, index: int, n_qubits: int) -> "PureState":
        dim = 2**n_qubits
        if not 0 <= index < dim:
            raise ValidationError(f"basis index {index} outside 0..{dim - 1}")
        amp = np.zeros(dim, dtype=complex)
        amp[index] = 1.0
        return cls(amp)

    @classmethod
    def from_unnormalized(cls, amplitudes) -> "PureState":
        amp = np.asarray(amplitudes, dtype=complex).ravel()
        return cls(amp / np.linalg.norm(amp))

    @classmethod
    def bloch(cls, theta: float, phi: float) -> "PureState":
        """cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
        return cls(np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)]))

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix on ``n`` qubits.

    ``check=False`` skips validation; library code uses it for states it
    has produced itself from valid inputs.
    """

    matrix: np.ndarray
    check: bool = True

    def __post_init__(self):
        m = linalg.as_square(self.matrix, "density matrix")
        object.__setattr__(self, "matrix", m)
        linalg.num_qubits(m.shape[0])
        if self.check:
            validate_density(m)

    @property
    def n_qubits(self) -> int:
        return linalg.num_qubits(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityMatrix":
        dim = 2**n_qubits
        return cls(np.eye(dim, dtype=complex) / dim, check=False)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(np.all(self.matrix == other.matrix))

    __hash__ = None


def validate_density(m: np.ndarray) -> None:
    herr = linalg.hermiticity_error(m)
    if herr > TOL_STATE:
        raise NotHermitian(f"density matrix is not Hermitian (max |m - m^H| = {herr:.3e})")
    tr = np.trace(m)
    if abs(tr - 1.0) > TOL_STATE:
        raise ValidationError(f"density matrix trace is {tr.real!r}, expected 1")
    lam_min = linalg.eigh(m).eigenvalues[0]
    if lam_min < -TOL_STATE:
        raise NotPSD(f"density matrix has negative eigenvalue {lam_min:.3e}")


def pure_to_density(state: PureState) -> DensityMatrix:
    if not isinstance(state, PureState):
        state = PureState(state)
    return DensityMatrix(state.projector(), check=False)


def orthogonal_isotropic(ref: PureState) -> DensityMatrix:
    """Uniform mixture over the orthogonal complement of ``ref``."""
    dim = ref.dim
    if dim == 1:
        raise DimensionMismatch("a one-dimensional space has no orthogonal complement")
    return DensityMatrix((np.eye(dim) - ref.projector()) / (dim - 1), check=False)


def apply_unitary(rho: DensityMatrix, u) -> DensityMatrix:
    u = linalg.as_square(u, "unitary")
    if u.shape != rho.matrix.shape:
        raise DimensionMismatch(f"unitary shape {u.shape} does not match state {rho.matrix.shape}")
    if not linalg.is_unitary(u):
        raise NotUnitary("operator is not unitary within 1e-10")
    return DensityMatrix(u @ rho.matrix @ u.conj().T, check=False)


def embed_gate(gate, targets: Sequence[int], n: int) -> np.ndarray:
    """Full ``2**n`` operator acting as ``gate`` on ``targets``, identity elsewhere.

    ``targets[0]`` is the most significant qubit of ``gate``'s own basis.
    """
    gate = linalg.as_square(gate, "gate")
    targets = linalg.check_qubits(targets, n)
    k = len(targets)
    if gate.shape[0] != 2**k:
        raise DimensionMismatch(f"gate of dimension {gate.shape[0]} cannot act on {k} qubit(s)")
    rest = [q for q in range(n) if q not in targets]
    full = np.kron(gate, np.eye(2 ** len(rest), dtype=complex))
    order = targets + rest
    pos = [order.index(q) for q in range(n)]
    t = full.reshape([2] * (2 * n)).transpose(pos + [n + p for p in pos])
    return t.reshape(2**n, 2**n)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    dim = 2**n_qubits
    return PureState.from_unnormalized(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_density(n_qubits: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random mixed state ``G G^H / Tr`` from a complex Ginibre matrix of the given rank."""
    dim = 2**n_qubits
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, check=False)
