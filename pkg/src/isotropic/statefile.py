"""JSON state files.

A state file holds ``n_qubits``, ``kind`` (``"pure"`` or ``"density"``) and
the real and imaginary parts as ``re`` / ``im``. Pure states store flat
vectors; density matrices store a list of rows. Floats are written with
Python's shortest round-trip repr, so a write/read cycle is exact.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .errors import ValidationError
from .qstate import DensityMatrix, PureState

KINDS = ("pure", "density")


def state_to_dict(state: Union[PureState, DensityMatrix]) -> dict:
    if isinstance(state, PureState):
        data, kind = state.amplitudes, "pure"
    elif isinstance(state, DensityMatrix):
        data, kind = state.matrix, "density"
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    return {
        "n_qubits": state.n_qubits,
        "kind": kind,
        "re": data.real.tolist(),
        "im": data.imag.tolist(),
    }


def state_from_dict(doc: dict) -> Union[PureState, DensityMatrix]:
    for key in ("n_qubits", "kind", "re"):
        if key not in doc:
            raise ValidationError(f"state file is missing field {key!r}")
    kind = doc["kind"]
    if kind not in KINDS:
        raise ValidationError(f"kind must be one of {KINDS}, got {kind!r}")
    n = doc["n_qubits"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"n_qubits must be a positive integer, got {n!r}")
    try:
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"re/im must be numeric arrays: {exc}") from None
    if re.shape != im.shape:
        raise ValidationError(f"re has shape {re.shape} but im has shape {im.shape}")
    dim = 2**n
    data = re + 1j * im
    if kind == "pure":
        if data.size != dim:
            raise ValidationError(f"n_qubits={n} needs {dim} amplitudes, got {data.size}")
        return PureState(data.ravel())
    if data.size != dim * dim:
        raise ValidationError(f"n_qubits={n} needs a {dim}x{dim} matrix, got {data.size} entries")
    return DensityMatrix(data.reshape(dim, dim))


def dumps_state(state) -> str:
    return json.dumps(state_to_dict(state), indent=1) + "\n"


def write_state(path: Union[str, Path], state) -> None:
    Path(path).write_text(dumps_state(state))


def read_state(path: Union[str, Path]) -> Union[PureState, DensityMatrix]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from None
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top level must be an object")
    return state_from_dict(doc)
