"""Isotropic decomposition, the Isotropic Index and the Isotropic Triangle.

Any n-qubit state splits as ``rho = p I/2^n + (1 - p) rho_hat`` where
``p = 2^n lambda_min`` and ``rho_hat`` has a null eigenvalue. Against a pure
reference ``|phi>`` the index is the pair ``(A, p)`` with alignment

    A = Fid(rho_hat, |phi><phi|) - Fid(rho_hat, (I - |phi><phi|)/(2^n - 1)).

``Fid`` is the root fidelity ``Tr sqrt(sqrt(a) b sqrt(a))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import linalg
from .errors import DimensionMismatch, ValidationError
from .qstate import DensityMatrix, PureState, orthogonal_isotropic

# residual is undefined once 1 - p drops to this level
APEX_TOL = 1e-12
PROJECTOR_TOL = 1e-12

StateLike = Union[DensityMatrix, PureState, np.ndarray]


@dataclass(frozen=True)
class Decomposition:
    weight_p: float
    residual: Optional[DensityMatrix]
    lambda_min: float
    n_qubits: int

    def reassemble(self) -> np.ndarray:
        dim = 2**self.n_qubits
        out = self.weight_p * np.eye(dim) / dim
        if self.residual is not None:
            out = out + (1.0 - self.weight_p) * self.residual.matrix
        return out


@dataclass(frozen=True)
class IsoIndex:
    alignment: float
    weight: float

    def __post_init__(self):
        if not -1.0 - 1e-9 <= self.alignment <= 1.0 + 1e-9:
            raise ValidationError(f"alignment {self.alignment!r} outside [-1, 1]")
        if not -1e-9 <= self.weight <= 1.0 + 1e-9:
            raise ValidationError(f"weight {self.weight!r} outside [0, 1]")

    def as_tuple(self) -> tuple[float, float]:
        return (self.alignment, self.weight)


@dataclass(frozen=True)
class TriangleCoord:
    x: float
    y: float

    def inside(self, tol: float = 1e-12) -> bool:
        return 0.0 <= self.y <= 1.0 and abs(self.x) <= 1.0 - self.y + tol


def _as_density(state: StateLike) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return DensityMatrix(state.projector(), check=False)
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return DensityMatrix(PureState(arr).projector(), check=False)
    return DensityMatrix(arr)


def _as_pure(state) -> PureState:
    return state if isinstance(state, PureState) else PureState(state)


def _roundoff(dim: int, scale: float = 1.0) -> float:
    return 16 * dim * np.finfo(float).eps * scale


def _sqrt_clean(x: float, dim: int) -> float:
    """sqrt that maps round-off-sized inputs to exactly zero.

    sqrt(1e-17) is ~3e-9, so an unclipped null direction would leak into
    every fidelity at the 1e-9 level.
    """
    return float(np.sqrt(x)) if x > _roundoff(dim) else 0.0


def _sqrt_trace(m: np.ndarray) -> float:
    """``Tr sqrt(m)`` for a PSD matrix of trace at most one.

    The cutoff is absolute: a product like ``Q rho Q`` can be pure noise,
    so its own norm is no guide to the round-off level.
    """
    lam = linalg.eigvalsh(m)
    lam = np.where(lam > _roundoff(m.shape[0]), lam, 0.0)
    return float(np.sum(np.sqrt(lam)))


def _scaled_projector(m: np.ndarray) -> Optional[tuple[np.ndarray, int]]:
    """Return ``(Q, r)`` if ``m == Q / r`` for a rank-``r`` projector ``Q``."""
    tr = np.trace(m).real
    if abs(tr - 1.0) > 1e-10:
        return None
    purity = np.trace(m @ m).real
    r = int(round(1.0 / purity)) if purity > 0 else 0
    if r < 1 or abs(1.0 / purity - r) > 1e-8:
        return None
    if np.max(np.abs(m @ m - m / r)) > PROJECTOR_TOL:
        return None
    return r * m, r


def _fidelity_with_projector(q: np.ndarray, r: int, b: np.ndarray) -> float:
    if r == 1:
        return _sqrt_clean(np.trace(q @ b).real, q.shape[0])
    return _sqrt_trace(q @ b @ q) / np.sqrt(r)


def fidelity(a: StateLike, b: StateLike) -> float:
    """Root fidelity ``Tr sqrt(sqrt(a) b sqrt(a))`` between two states.

    Pure inputs (``PureState`` or 1-D arrays) use ``sqrt(<phi|b|phi>)``;
    scaled projectors ``Q/r`` use ``Tr sqrt(Q b Q) / sqrt(r)``. The result is
    clipped to ``[0, 1]``.
    """
    if isinstance(a, PureState) or (isinstance(a, np.ndarray) and a.ndim == 1):
        a, b = b, a
    if isinstance(b, PureState) or (isinstance(b, np.ndarray) and b.ndim == 1):
        phi = _as_pure(b)
        if isinstance(a, PureState) or (isinstance(a, np.ndarray) and np.ndim(a) == 1):
            psi = _as_pure(a)
            _check_dims(psi.dim, phi.dim)
            return float(min(abs(np.vdot(phi.amplitudes, psi.amplitudes)), 1.0))
        am = _as_density(a).matrix
        _check_dims(am.shape[0], phi.dim)
        val = np.vdot(phi.amplitudes, am @ phi.amplitudes).real
        return min(_sqrt_clean(val, phi.dim), 1.0)

    am, bm = _as_density(a).matrix, _as_density(b).matrix
    _check_dims(am.shape[0], bm.shape[0])
    for x, y in ((am, bm), (bm, am)):
        proj = _scaled_projector(x)
        if proj is not None:
            return float(np.clip(_fidelity_with_projector(*proj, y), 0.0, 1.0))
    return uhlmann_fidelity(am, bm)


def uhlmann_fidelity(a: StateLike, b: StateLike) -> float:
    """General route: sum of square roots of the spectrum of ``sqrt(a) b sqrt(a)``."""
    am, bm = _as_density(a).matrix, _as_density(b).matrix
    _check_dims(am.shape[0], bm.shape[0])
    root = linalg.mat_sqrt_psd(am)
    inner = root @ bm @ root
    inner = 0.5 * (inner + inner.conj().T)
    return float(np.clip(_sqrt_trace(inner), 0.0, 1.0))


def _check_dims(d1: int, d2: int) -> None:
    if d1 != d2:
        raise DimensionMismatch(f"dimensions differ: {d1} vs {d2}")


def decompose(rho: StateLike) -> Decomposition:
    """Split ``rho`` into its maximally mixed part and a residual state."""
    rho = _as_density(rho)
    dim = rho.dim
    lam = float(linalg.eigvalsh(rho.matrix)[0])
    lam = min(max(lam, 0.0), 1.0 / dim)
    p = dim * lam
    if p >= 1.0 - APEX_TOL:
        return Decomposition(weight_p=1.0, residual=None, lambda_min=lam, n_qubits=rho.n_qubits)
    res = (rho.matrix - lam * np.eye(dim)) / (1.0 - p)
    res = 0.5 * (res + res.conj().T)
    return Decomposition(
        weight_p=p, residual=DensityMatrix(res, check=False), lambda_min=lam, n_qubits=rho.n_qubits
    )


def isotropic_index(rho: StateLike, ref) -> IsoIndex:
    """Isotropic Index ``(A, p)`` of ``rho`` against the pure reference ``ref``.

    At the apex (``p == 1``) the alignment is 1 by convention.
    """
    rho = _as_density(rho)
    ref = _as_pure(ref)
    _check_dims(rho.dim, ref.dim)
    dec = decompose(rho)
    if dec.residual is None:
        return IsoIndex(1.0, 1.0)
    res = dec.residual.matrix
    phi = ref.amplitudes
    fid_ref = _sqrt_clean(np.vdot(phi, res @ phi).real, ref.dim)
    q = np.eye(ref.dim) - ref.projector()
    fid_orth = _fidelity_with_projector(q, ref.dim - 1, res)
    a = float(np.clip(min(fid_ref, 1.0) - min(fid_orth, 1.0), -1.0, 1.0))
    return IsoIndex(a, float(dec.weight_p))


def triangle_coords(idx: IsoIndex) -> TriangleCoord:
    return TriangleCoord((1.0 - idx.weight) * idx.alignment, idx.weight)


def pure_state_alignment(a0: float, n: int) -> float:
    """Closed-form alignment of a pure state with overlap ``a0 = |<phi|psi>|``."""
    if not 0.0 <= a0 <= 1.0:
        raise ValidationError(f"a0 = {a0!r} outside [0, 1]")
    return a0 - np.sqrt((1.0 - a0 * a0) / (2**n - 1))


def is_isotropic_error_state(rho: StateLike, ref, tol: float = 1e-10) -> bool:
    """True when ``rho`` is diagonal as ``diag(l0, l1, ..., l1)`` in a basis starting at ``ref``."""
    if tol <= 0:
        raise ValidationError("tol must be positive")
    rho = _as_density(rho)
    ref = _as_pure(ref)
    _check_dims(rho.dim, ref.dim)
    m, phi = rho.matrix, ref.amplitudes
    l0 = np.vdot(phi, m @ phi).real
    if np.linalg.norm(m @ phi - l0 * phi) > tol:
        return False
    q = np.eye(ref.dim) - ref.projector()
    qmq = q @ m @ q
    l1 = np.trace(qmq).real / (ref.dim - 1)
    return bool(np.linalg.norm(qmq - l1 * q) <= tol)


__all__ = [
    "Decomposition",
    "IsoIndex",
    "TriangleCoord",
    "decompose",
    "fidelity",
    "is_isotropic_error_state",
    "isotropic_index",
    "orthogonal_isotropic",
    "pure_state_alignment",
    "triangle_coords",
    "uhlmann_fidelity",
]
