"""Dense complex matrix kernels.

Hermitian eigendecomposition is done with a cyclic Jacobi method. Rotations
are scheduled round-robin so that every round touches ``n // 2`` disjoint
index pairs at once; those rotations commute, which lets each round be
applied as a handful of vectorized row/column updates.

Qubit ordering: qubit 0 is the most significant bit of a basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BadQubitIndex, DimensionMismatch, NoConvergence, NotHermitian, NotPSD

TOL_HERM = 1e-10
TOL_PSD = 1e-10
MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-12


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in ascending order and the unitary whose columns match them."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_square(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    return a


def num_qubits(dim: int) -> int:
    """Number of qubits for a power-of-two dimension."""
    n = int(dim).bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two")
    return n


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m, tol: float = TOL_HERM) -> bool:
    return hermiticity_error(as_square(m)) <= tol


def is_unitary(u, tol: float = TOL_HERM) -> bool:
    u = as_square(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))) <= tol


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings of ``range(n)`` such that every pair occurs once per cycle.

    Each round is returned as two index arrays ``(p, q)`` with ``p < q``.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a >= n or b >= n:
                continue
            ps.append(min(a, b))
            qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def eigh(m, *, max_sweeps: int = MAX_SWEEPS) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        m: Square complex matrix, Hermitian to within ``TOL_HERM`` entrywise.
        max_sweeps: Budget of full sweeps over all index pairs.

    Returns:
        EigenSystem with ascending eigenvalues; ties keep their diagonal order.

    Raises:
        NotHermitian: if ``max|m - m^H| > TOL_HERM``.
        NoConvergence: if the off-diagonal norm is still above
            ``OFF_DIAGONAL_RTOL * ||m||_F`` after ``max_sweeps`` sweeps.
    """
    m = as_square(m)
    err = hermiticity_error(m)
    if err > TOL_HERM:
        raise NotHermitian(f"max |m - m^H| = {err:.3e} exceeds {TOL_HERM:g}")
    n = m.shape[0]
    a = 0.5 * (m + m.conj().T)
    v = np.eye(n, dtype=complex)
    threshold = OFF_DIAGONAL_RTOL * float(np.linalg.norm(a))
    rounds = _round_robin(n)

    for _ in range(max_sweeps + 1):
        if _off_norm(a) <= threshold:
            break
        for p, q in rounds:
            apq = a[p, q]
            b = np.abs(apq)
            active = b > 0.0
            if not active.any():
                continue
            p, q, apq, b = p[active], q[active], apq[active], b[active]
            app = a[p, p].real
            aqq = a[q, q].real
            tau = (aqq - app) / (2.0 * b)
            t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # e^{-i arg(a_pq)} makes the 2x2 block real symmetric
            w = np.conj(apq) / b

            cols_p, cols_q = a[:, p], a[:, q]
            a[:, p] = cols_p * c - cols_q * (s * w)
            a[:, q] = cols_p * s + cols_q * (c * w)
            rows_p, rows_q = a[p, :], a[q, :]
            a[p, :] = c[:, None] * rows_p - (s * np.conj(w))[:, None] * rows_q
            a[q, :] = s[:, None] * rows_p + (c * np.conj(w))[:, None] * rows_q
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p] = vp * c - vq * (s * w)
            v[:, q] = vp * s + vq * (c * w)
    else:
        raise NoConvergence(
            f"Jacobi iteration did not converge in {max_sweeps} sweeps "
            f"(off-diagonal norm {_off_norm(a):.3e}, threshold {threshold:.3e})"
        )

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values[order], v[:, order])


def eigvalsh(m) -> np.ndarray:
    return eigh(m).eigenvalues


def mat_sqrt_psd(m) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-TOL_PSD, 0)`` are treated as zero; anything more
    negative raises ``NotPSD``.
    """
    es = eigh(m)
    lam = es.eigenvalues
    if lam.size and lam[0] < -TOL_PSD:
        raise NotPSD(f"smallest eigenvalue {lam[0]:.3e} is below -{TOL_PSD:g}")
    root = np.sqrt(np.clip(lam, 0.0, None))
    v = es.eigenvectors
    return (v * root) @ v.conj().T


def kron(a, b) -> np.ndarray:
    return np.kron(np.atleast_2d(np.asarray(a, dtype=complex)), np.atleast_2d(np.asarray(b, dtype=complex)))


def kron_all(factors: Iterable) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = kron(out, f)
    return out


def check_qubits(qubits: Iterable[int], n: int) -> list[int]:
    qs = [int(q) for q in qubits]
    for q in qs:
        if not 0 <= q < n:
            raise BadQubitIndex(f"qubit index {q} outside 0..{n - 1}")
    if len(set(qs)) != len(qs):
        raise BadQubitIndex(f"repeated qubit index in {qs}")
    return qs


def trace_out(m: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Trace out a single qubit of an ``n``-qubit operator."""
    left, right = 2**qubit, 2 ** (n - qubit - 1)
    t = m.reshape(left, 2, right, left, 2, right)
    return np.trace(t, axis1=1, axis2=4).reshape(left * right, left * right)


def partial_trace(m, keep: Iterable[int]) -> np.ndarray:
    """Reduce an ``n``-qubit operator to the qubits in ``keep``.

    The kept qubits appear in ascending index order in the result.
    """
    m = as_square(m)
    n = num_qubits(m.shape[0])
    kept = set(check_qubits(keep, n))
    out = m
    # highest index first so the remaining qubit numbering stays valid
    for q in reversed(range(n)):
        if q not in kept:
            out = trace_out(out, q, n)
            n -= 1
    return out
