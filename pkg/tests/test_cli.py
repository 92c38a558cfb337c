import csv
import io
import json
import math

import numpy as np
import pytest

from isotropic import cli
from isotropic.algorithms import grover_success_closed_form
from isotropic.qstate import DensityMatrix, PureState, orthogonal_isotropic, random_density
from isotropic.statefile import dumps_state, read_state, write_state


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestStateFile:
    def test_round_trip_is_exact(self, tmp_path, rng):
        for n in (1, 2, 3):
            rho = random_density(n, rng)
            write_state(tmp_path / "s.json", rho)
            back = read_state(tmp_path / "s.json")
            assert isinstance(back, DensityMatrix)
            assert np.array_equal(back.matrix, rho.matrix)

    def test_pure_round_trip(self, tmp_path):
        psi = PureState.bloch(math.pi / 3, 1.0)
        write_state(tmp_path / "p.json", psi)
        assert np.array_equal(read_state(tmp_path / "p.json").amplitudes, psi.amplitudes)

    def test_layout(self):
        doc = json.loads(dumps_state(DensityMatrix.maximally_mixed(1)))
        assert doc == {"n_qubits": 1, "kind": "density", "re": [[0.5, 0.0], [0.0, 0.5]], "im": [[0.0, 0.0], [0.0, 0.0]]}


class TestIndexCommand:
    def test_maximally_mixed(self, tmp_path, capsys):
        write_state(tmp_path / "s.json", DensityMatrix.maximally_mixed(2))
        code, out, _ = run(capsys, "index", str(tmp_path / "s.json"))
        assert code == 0
        assert out.startswith("A=1 p=1 x=0 y=1")
        assert "isotropic=true" in out

    def test_orthogonal_corner(self, tmp_path, capsys):
        write_state(tmp_path / "s.json", orthogonal_isotropic(PureState.basis(0, 2)))
        code, out, _ = run(capsys, "index", str(tmp_path / "s.json"), "--ref-basis", "0")
        assert code == 0 and out.startswith("A=-1 p=0 ")

    def test_plus_against_zero(self, tmp_path, capsys):
        write_state(tmp_path / "s.json", PureState(np.array([1, 1]) / np.sqrt(2)))
        write_state(tmp_path / "r.json", PureState.basis(0, 1))
        code, out, _ = run(capsys, "index", str(tmp_path / "s.json"), "--ref", str(tmp_path / "r.json"))
        assert code == 0 and out.startswith("A=0 p=0 ")
        assert "isotropic=false" in out

    def test_json_output(self, tmp_path, capsys):
        write_state(tmp_path / "s.json", DensityMatrix.maximally_mixed(1))
        code, out, _ = run(capsys, "index", str(tmp_path / "s.json"), "--format", "json")
        assert json.loads(out) == {"A": 1.0, "p": 1.0, "x": 0.0, "y": 1.0, "isotropic": True}

    @pytest.mark.parametrize(
        "doc, needle",
        [
            ({"n_qubits": 1, "kind": "density", "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}, "trace"),
            ({"n_qubits": 1, "kind": "density", "re": [[0.5, 1], [0, 0.5]], "im": [[0, 0], [0, 0]]}, "Hermitian"),
            ({"n_qubits": 1, "kind": "density", "re": [[1.5, 0], [0, -0.5]], "im": [[0, 0], [0, 0]]}, "negative eigenvalue"),
            ({"n_qubits": 1, "kind": "pure", "re": [1, 1], "im": [0, 0]}, "norm"),
            ({"n_qubits": 2, "kind": "pure", "re": [1, 0], "im": [0, 0]}, "amplitudes"),
            ({"n_qubits": 1, "kind": "mixed", "re": [1, 0]}, "kind"),
        ],
    )
    def test_invalid_files_exit_2(self, tmp_path, capsys, doc, needle):
        (tmp_path / "bad.json").write_text(json.dumps(doc))
        code, out, err = run(capsys, "index", str(tmp_path / "bad.json"))
        assert code == 2 and out == ""
        assert needle in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(capsys, "index", str(tmp_path / "nope.json"))
        assert code == 2 and "nope.json" in err


class TestGroverCommand:
    def test_noiseless_success_column(self, capsys):
        code, out, _ = run(capsys, "grover", "--qubits", "4", "--target", "3", "--steps", "6")
        assert code == 0
        data = rows(out)
        assert list(data[0]) == ["step", "param", "A", "p", "x", "y", "success"]
        for r in data:
            assert float(r["success"]) == pytest.approx(grover_success_closed_form(int(r["step"]), 4), abs=1e-10)

    def test_total_weight_column(self, capsys):
        code, out, _ = run(capsys, "grover", "--error", "tdch", "--param", "0.1", "--steps", "3")
        assert code == 0
        for r in rows(out):
            assert float(r["p"]) == pytest.approx(1 - 0.9 ** int(r["step"]), abs=1e-9)

    def test_local_zero_equals_none(self, capsys):
        _, a, _ = run(capsys, "grover", "--qubits", "3", "--error", "ldch", "--param", "0")
        _, b, _ = run(capsys, "grover", "--qubits", "3")
        assert a == b

    def test_rows_ordered_by_param_then_step(self, capsys):
        _, out, _ = run(capsys, "grover", "--qubits", "2", "--error", "ldch", "--param", "0.3,0.1", "--steps", "2")
        keys = [(float(r["param"]), int(r["step"])) for r in rows(out)]
        assert keys == sorted(keys) and len(keys) == 6

    def test_json_and_out_file(self, tmp_path, capsys):
        target = tmp_path / "g.json"
        code, out, _ = run(capsys, "grover", "--qubits", "2", "--format", "json", "--out", str(target))
        assert code == 0 and out == ""
        doc = json.loads(target.read_text())
        assert doc[1]["success"] == pytest.approx(1, abs=1e-12)

    def test_bad_flags_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["grover", "--error", "bogus"])
        assert exc.value.code == 2
        assert cli.main(["grover", "--error", "tdch", "--param", "1.5"]) == 2
        assert cli.main(["grover", "--qubits", "2", "--target", "9"]) == 2


class TestShorCommand:
    def test_zero_noise(self, capsys):
        code, out, _ = run(capsys, "shor", "--alpha", "0")
        assert code == 0
        (r,) = rows(out)
        assert float(r["success"]) == pytest.approx(1, abs=1e-12)
        assert "residual" in r

    def test_phase_state_sweep_residual_small(self, capsys):
        code, out, _ = run(capsys, "shor", "--theta", "pi/2", "--phi", "pi/4", "--alpha-sweep", "0:0.3:4")
        assert code == 0
        data = rows(out)
        assert [float(r["param"]) for r in data] == pytest.approx([0, 0.1, 0.2, 0.3])
        for r in data:
            assert abs(float(r["residual"])) < 0.02

    def test_plus_beats_y_plus(self, capsys):
        _, a, _ = run(capsys, "shor", "--alpha", "0.1", "--theta", "pi/2", "--phi", "0")
        _, b, _ = run(capsys, "shor", "--alpha", "0.1", "--theta", "pi/2", "--phi", "pi/2")
        assert float(rows(a)[0]["success"]) > float(rows(b)[0]["success"])

    def test_requires_alpha(self, capsys):
        assert cli.main(["shor"]) == 2


class TestHorodeckiCommand:
    def test_values(self, capsys):
        code, out, _ = run(capsys, "horodecki", "--side-qubits", "2", f"--alpha={-1 / 15!r},0.3,1")
        assert code == 0
        got = {round(float(r["param"]), 6): (float(r["A"]), float(r["p"])) for r in rows(out)}
        assert got[1.0] == pytest.approx((1, 0), abs=1e-9)
        assert got[0.3] == pytest.approx((1, 0.7), abs=1e-9)
        assert got[round(-1 / 15, 6)] == pytest.approx((-1, 0), abs=1e-9)
        for r in rows(out):
            assert float(r["A"]) == pytest.approx(float(r["A_closed"]), abs=1e-9)

    def test_out_of_range_exit_2(self, capsys):
        assert cli.main(["horodecki", "--side-qubits", "1", "--alpha=-0.5"]) == 2


@pytest.mark.parametrize(
    "text, value",
    [("pi/2", math.pi / 2), ("pi/4", math.pi / 4), ("-pi/2", -math.pi / 2), ("3pi/4", 3 * math.pi / 4),
     ("pi", math.pi), ("0.25", 0.25), ("2*pi", 2 * math.pi)],
)
def test_parse_angle(text, value):
    assert cli.parse_angle(text) == pytest.approx(value, abs=1e-15)


def test_parse_sweep():
    assert cli.parse_sweep("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]
    with pytest.raises(cli.UsageError):
        cli.parse_sweep("0:1")


def test_emitted_coordinates_revalidate(capsys):
    _, out, _ = run(capsys, "grover", "--qubits", "3", "--error", "ldch", "--param", "0.05,0.2")
    for r in rows(out):
        a, p = float(r["A"]), float(r["p"])
        assert float(r["x"]) == (1 - p) * a
        assert float(r["y"]) == p
