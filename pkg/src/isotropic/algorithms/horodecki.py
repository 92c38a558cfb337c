"""Isotropic bipartite states (1 - a) I/d^2 + a |phi><phi| with |phi> maximally entangled."""

from __future__ import annotations

import numpy as np

from ..errors import AlphaOutOfRange
from ..isoindex import APEX_TOL, IsoIndex
from ..qstate import DensityMatrix, PureState


def lower_alpha(n_side: int) -> float:
    d = 2**n_side
    return -1.0 / (d * d - 1)


def _check_alpha(n_side: int, alpha: float) -> None:
    if n_side < 1:
        raise AlphaOutOfRange("each side needs at least one qubit")
    lo = lower_alpha(n_side)
    if not lo - 1e-12 <= alpha <= 1.0 + 1e-12:
        raise AlphaOutOfRange(f"alpha = {alpha!r} outside [{lo!r}, 1]")


def maximally_entangled(n_side: int) -> PureState:
    """(1/sqrt(d)) sum_j |j>|j> on 2 * n_side qubits."""
    d = 2**n_side
    amp = np.zeros(d * d, dtype=complex)
    amp[np.arange(d) * (d + 1)] = 1 / np.sqrt(d)
    return PureState(amp)


def horodecki_state(n_side: int, alpha: float) -> DensityMatrix:
    _check_alpha(n_side, alpha)
    dd = 4**n_side
    phi = maximally_entangled(n_side)
    return DensityMatrix((1 - alpha) * np.eye(dd) / dd + alpha * phi.projector(), check=False)


def horodecki_index_closed_form(n_side: int, alpha: float) -> IsoIndex:
    _check_alpha(n_side, alpha)
    if alpha >= 0:
        a, p = 1.0, 1.0 - alpha
    else:
        a, p = -1.0, 1.0 + (4**n_side - 1) * alpha
    if p >= 1.0 - APEX_TOL:
        # the apex carries the default alignment
        a, p = 1.0, 1.0
    return IsoIndex(a, min(max(p, 0.0), 1.0))
