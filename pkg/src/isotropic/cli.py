"""Command-line entry point: ``isotropic {index,grover,shor,horodecki}``.

Exit codes: 0 on success, 2 on usage or validation errors, 3 when a
numerical kernel fails to converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Iterable, Sequence

import numpy as np

from .algorithms import (
    GroverConfig,
    ShorConfig,
    TrajectoryRecord,
    grover_run,
    horodecki_index_closed_form,
    horodecki_state,
    maximally_entangled,
    shor_run,
    zero_order_residual,
)
from .algorithms.grover import ERROR_MODELS, REF_MODES
from .errors import NoConvergence, ValidationError
from .isoindex import is_isotropic_error_state, isotropic_index, triangle_coords
from .qstate import DensityMatrix, PureState
from .statefile import read_state

TRAJECTORY_FIELDS = ["step", "param", "A", "p", "x", "y", "success"]

_ANGLE = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(ValidationError):
    pass


def parse_angle(text: str) -> float:
    """Radians from a decimal or a token such as ``pi/4``, ``-pi/2``, ``3pi/4``."""
    m = _ANGLE.match(text.lower())
    if m:
        coef = m.group(1)
        value = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef)
        value = float(coef) if value is None else value
        return value * math.pi / (float(m.group(2)) if m.group(2) else 1.0)
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def parse_sweep(text: str) -> list[float]:
    """``lo:hi:steps`` -> ``steps`` evenly spaced values including both ends."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"sweep {text!r} must look like lo:hi:steps")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"sweep {text!r} must look like lo:hi:steps") from None
    if steps < 1:
        raise UsageError("sweep needs at least one step")
    if steps == 1:
        return [lo]
    return [float(v) for v in np.linspace(lo, hi, steps)]


def parse_values(text: str) -> list[float]:
    """Comma-separated numbers, or a ``lo:hi:steps`` sweep."""
    if ":" in text:
        return parse_sweep(text)
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None


def _num(x: float) -> str:
    return repr(float(x))


def _pretty(x: float) -> str:
    return format(round(float(x), 12) + 0.0, ".12g")


def record_row(rec: TrajectoryRecord) -> dict:
    return {
        "step": rec.step,
        "param": rec.param,
        "A": rec.alignment,
        "p": rec.weight,
        "x": rec.coord.x,
        "y": rec.coord.y,
        "success": rec.success,
    }


def render(rows: Sequence[dict], fields: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{k: r[k] for k in fields} for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([r[k] if isinstance(r[k], (int, str)) else _num(r[k]) for k in fields])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _sorted_unique(values: Iterable[float]) -> list[float]:
    return sorted(set(values))


def cmd_index(args) -> str:
    state = read_state(args.state)
    rho = state if isinstance(state, DensityMatrix) else DensityMatrix(state.projector(), check=False)
    if args.ref is not None:
        ref = read_state(args.ref)
        if not isinstance(ref, PureState):
            raise UsageError("reference state file must have kind 'pure'")
    else:
        ref = PureState.basis(args.ref_basis, rho.n_qubits)
    idx = isotropic_index(rho, ref)
    coord = triangle_coords(idx)
    iso = is_isotropic_error_state(rho, ref, args.tol)
    if args.format == "json":
        doc = {"A": idx.alignment, "p": idx.weight, "x": coord.x, "y": coord.y, "isotropic": iso}
        return json.dumps(doc, indent=1) + "\n"
    if args.format == "csv":
        row = {"A": idx.alignment, "p": idx.weight, "x": coord.x, "y": coord.y, "isotropic": str(iso).lower()}
        return render([row], ["A", "p", "x", "y", "isotropic"], "csv")
    return (
        f"A={_pretty(idx.alignment)} p={_pretty(idx.weight)} "
        f"x={_pretty(coord.x)} y={_pretty(coord.y)} isotropic={str(iso).lower()}\n"
    )


def cmd_grover(args) -> str:
    params = _sorted_unique(parse_values(args.param)) if args.param else [0.0]
    if args.error == "none":
        params = [0.0]
    rows = []
    for param in params:
        cfg = GroverConfig(args.qubits, args.target, args.steps, args.error, param)
        rows += [record_row(r) for r in grover_run(cfg, args.ref_mode)]
    return render(rows, TRAJECTORY_FIELDS, args.format)


def cmd_shor(args) -> str:
    if args.alpha_sweep:
        alphas = parse_sweep(args.alpha_sweep)
    elif args.alpha:
        alphas = parse_values(args.alpha)
    else:
        raise UsageError("give --alpha or --alpha-sweep")
    psi = PureState.bloch(parse_angle(args.theta), parse_angle(args.phi))
    rows = []
    for alpha in _sorted_unique(alphas):
        rec = shor_run(ShorConfig(psi, alpha))
        row = record_row(rec)
        row["residual"] = zero_order_residual(rec)
        rows.append(row)
    return render(rows, TRAJECTORY_FIELDS + ["residual"], args.format)


def cmd_horodecki(args) -> str:
    if args.alpha_sweep:
        alphas = parse_sweep(args.alpha_sweep)
    elif args.alpha:
        alphas = parse_values(args.alpha)
    else:
        raise UsageError("give --alpha or --alpha-sweep")
    phi = maximally_entangled(args.side_qubits)
    rows = []
    for alpha in _sorted_unique(alphas):
        closed = horodecki_index_closed_form(args.side_qubits, alpha)
        rho = horodecki_state(args.side_qubits, alpha)
        idx = isotropic_index(rho, phi)
        success = np.vdot(phi.amplitudes, rho.matrix @ phi.amplitudes).real
        row = record_row(TrajectoryRecord.build(0, alpha, idx, success))
        row["A_closed"], row["p_closed"] = closed.alignment, closed.weight
        rows.append(row)
    return render(rows, TRAJECTORY_FIELDS + ["A_closed", "p_closed"], args.format)


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be non-negative")
    return v


def _positive_int(text: str) -> int:
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isotropic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json"), default="csv"):
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default=default)

    p = sub.add_parser("index", help="Isotropic Index of a state file")
    p.add_argument("state", help="state file (JSON)")
    ref = p.add_mutually_exclusive_group()
    ref.add_argument("--ref", help="reference pure-state file")
    ref.add_argument("--ref-basis", type=_nonneg_int, default=0, help="reference basis index (default 0)")
    p.add_argument("--tol", type=float, default=1e-10, help="tolerance of the isotropic-state test")
    common(p, ("text", "csv", "json"), "text")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("grover", help="Grover search trajectory under noise")
    p.add_argument("--qubits", type=_positive_int, default=4)
    p.add_argument("--target", type=_nonneg_int, default=0)
    p.add_argument("--error", choices=ERROR_MODELS, default="none")
    p.add_argument("--param", help="error probabilities: a,b,c or lo:hi:steps")
    p.add_argument("--steps", type=_nonneg_int, default=None, help="iterations (default floor(pi/4 sqrt(N)))")
    p.add_argument("--ref-mode", choices=REF_MODES, default="per-step")
    common(p)
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("shor", help="nine-qubit code under local depolarizing noise")
    p.add_argument("--alpha", help="channel probabilities: a,b,c")
    p.add_argument("--alpha-sweep", help="lo:hi:steps")
    p.add_argument("--theta", default="0", help="Bloch polar angle (radians or pi/k)")
    p.add_argument("--phi", default="0", help="Bloch azimuth (radians or pi/k)")
    common(p)
    p.set_defaults(func=cmd_shor)

    p = sub.add_parser("horodecki", help="isotropic bipartite states")
    p.add_argument("--side-qubits", type=_positive_int, default=1)
    p.add_argument("--alpha", help="mixing parameters: a,b,c")
    p.add_argument("--alpha-sweep", help="lo:hi:steps")
    common(p)
    p.set_defaults(func=cmd_horodecki)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except NoConvergence as exc:
        print(f"isotropic: numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"isotropic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"isotropic: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
