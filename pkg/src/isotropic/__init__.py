"""Isotropic Index of n-qubit mixed states and noisy-circuit case studies."""

from .isoindex import (
    Decomposition,
    IsoIndex,
    TriangleCoord,
    decompose,
    fidelity,
    is_isotropic_error_state,
    isotropic_index,
    pure_state_alignment,
    triangle_coords,
)
from .qstate import DensityMatrix, PureState, orthogonal_isotropic, pure_to_density

__version__ = "0.1.0"
