"""Command-line entry points: output formats, exit codes, the run
manifest on stderr, environment overrides, and byte-level determinism."""

import hashlib
import json
import subprocess
import sys

import pytest

from freeclt.cli import main
from freeclt.cumulants import Sequence, sequence_to_payload


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def manifest_of(err: str) -> dict:
    return json.loads(err.strip().splitlines()[-1])


def write_sequence(path, flavor, kind, entries):
    seq = Sequence(flavor, kind, entries)
    path.write_text(json.dumps(sequence_to_payload(seq), indent=2) + "\n")
    return seq


class TestPartitionsCount:
    def test_free_closed_form(self, capsys):
        code, out, _ = run_cli(
            ["partitions", "count", "--n", "3", "--k", "2", "--flavor", "free"], capsys
        )
        assert code == 0
        assert out == "21\n"

    def test_classical_closed_form(self, capsys):
        code, out, _ = run_cli(
            ["partitions", "count", "--n", "3", "--k", "2", "--flavor", "classical"],
            capsys,
        )
        assert code == 0
        assert out == "210\n"

    def test_oracle_agrees(self, capsys):
        for flavor, want in (("free", "21"), ("classical", "210")):
            code, out, _ = run_cli(
                [
                    "partitions", "count", "--n", "3", "--k", "2",
                    "--flavor", flavor, "--oracle",
                ],
                capsys,
            )
            assert code == 0
            assert out == want + "\n"

    def test_env_cap_lowers(self, capsys, monkeypatch):
        monkeypatch.setenv("FREECLT_MAX_GROUND_SIZE", "4")
        code, _, err = run_cli(
            ["partitions", "count", "--n", "3", "--k", "1", "--flavor", "free",
             "--oracle"],
            capsys,
        )
        assert code == 4
        assert "cap exceeded" in err

    def test_env_cap_raises(self, capsys, monkeypatch):
        monkeypatch.setenv("FREECLT_MAX_GROUND_SIZE", "20")
        code, out, _ = run_cli(
            ["partitions", "count", "--n", "3", "--k", "6", "--flavor", "free",
             "--oracle"],
            capsys,
        )
        assert code == 0
        assert out == "5005\n"

    def test_env_cap_must_be_integer(self, capsys, monkeypatch):
        monkeypatch.setenv("FREECLT_MAX_GROUND_SIZE", "lots")
        code, _, err = run_cli(
            ["partitions", "count", "--n", "1", "--k", "1", "--flavor", "free",
             "--oracle"],
            capsys,
        )
        assert code == 3
        assert "FREECLT_MAX_GROUND_SIZE" in err


class TestTransform:
    def test_moments_to_cumulants(self, tmp_path, capsys):
        path = tmp_path / "catalan.json"
        write_sequence(path, "free", "moments", [0, 1, 0, 2, 0, 5])
        code, out, _ = run_cli(
            ["transform", "--flavor", "free", "--direction", "m2c",
             "--input", str(path)],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["kind"] == "cumulants"
        assert payload["entries"] == [
            ["0/1", "0/1"], ["1/1", "0/1"], ["0/1", "0/1"],
            ["0/1", "0/1"], ["0/1", "0/1"], ["0/1", "0/1"],
        ]

    def test_cumulants_to_moments_classical(self, tmp_path, capsys):
        path = tmp_path / "delta2.json"
        write_sequence(path, "classical", "cumulants", [0, 1, 0, 0, 0, 0])
        code, out, _ = run_cli(
            ["transform", "--flavor", "classical", "--direction", "c2m",
             "--input", str(path)],
            capsys,
        )
        assert code == 0
        rationals = [pair[0] for pair in json.loads(out)["entries"]]
        assert rationals == ["0/1", "1/1", "0/1", "3/1", "0/1", "15/1"]

    def test_round_trip_is_byte_identical(self, tmp_path, capsys):
        source = tmp_path / "c.json"
        write_sequence(source, "free", "cumulants", [1, 2, 3, 4])
        code, forward, _ = run_cli(
            ["transform", "--flavor", "free", "--direction", "c2m",
             "--input", str(source)],
            capsys,
        )
        assert code == 0
        middle = tmp_path / "m.json"
        middle.write_text(forward)
        code, back, _ = run_cli(
            ["transform", "--flavor", "free", "--direction", "m2c",
             "--input", str(middle)],
            capsys,
        )
        assert code == 0
        assert back == source.read_text()

    def test_flavor_mismatch_is_schema_error(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        write_sequence(path, "free", "moments", [0, 1])
        code, _, err = run_cli(
            ["transform", "--flavor", "classical", "--direction", "m2c",
             "--input", str(path)],
            capsys,
        )
        assert code == 3
        assert "flavor" in err

    def test_kind_mismatch_is_schema_error(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        write_sequence(path, "free", "moments", [0, 1])
        code, _, err = run_cli(
            ["transform", "--flavor", "free", "--direction", "c2m",
             "--input", str(path)],
            capsys,
        )
        assert code == 3
        assert "kind" in err

    def test_missing_field_names_it(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"flavor": "free", "entries": [["1/1", "0/1"]]}))
        code, _, err = run_cli(
            ["transform", "--flavor", "free", "--direction", "m2c",
             "--input", str(path)],
            capsys,
        )
        assert code == 3
        assert "kind" in err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run_cli(
            ["transform", "--flavor", "free", "--direction", "m2c",
             "--input", str(path)],
            capsys,
        )
        assert code == 3
        assert "schema error" in err


class TestCltCommands:
    def test_iterate_bernoulli_gap(self, tmp_path, capsys):
        path = tmp_path / "bern.json"
        write_sequence(path, "free", "moments", [0, 1, 0, 1, 0, 1, 0, 1])
        code, out, _ = run_cli(
            ["clt", "iterate", "--flavor", "free", "--input", str(path),
             "--steps", "4"],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["steps"] == 4
        assert payload["gap_to_normal"][3] == ["-1/16", "0/1"]
        assert payload["decay_exact"] is True
        assert payload["decay_factors"][3] == ["1/16", "0/1"]

    def test_matrix_csv_row_five(self, capsys):
        code, out, _ = run_cli(
            ["clt", "matrix", "--flavor", "free", "--size", "5", "--csv"], capsys
        )
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == "1"
        assert rows[2] == "3,0,1"
        assert rows[4] == "10,0,5,0,1"

    def test_matrix_json_classical(self, capsys):
        code, out, _ = run_cli(
            ["clt", "matrix", "--flavor", "classical", "--size", "4"], capsys
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["rows"] == [["1"], ["0", "1"], ["3", "0", "2"], ["0", "6", "0", "6"]]

    def test_eigencheck_all_exact(self, capsys):
        for flavor in ("free", "classical"):
            code, out, _ = run_cli(
                ["clt", "eigencheck", "--flavor", flavor, "--size", "8"], capsys
            )
            assert code == 0
            payload = json.loads(out)
            assert payload["all_exact"] is True
            assert payload["columns"][0]["eigenvalue"] == ["0/1", "1/1"]
            assert payload["columns"][1]["eigenvalue"] == ["1/1", "0/1"]


class TestEigenfn:
    def test_free_moments(self, capsys):
        code, out, _ = run_cli(
            ["eigenfn", "--flavor", "free", "--n", "2", "--orders", "6"], capsys
        )
        assert code == 0
        rationals = [pair[0] for pair in json.loads(out)["moments"]]
        assert rationals == ["0/1", "1/1", "0/1", "4/1", "0/1", "15/1"]

    def test_classical_moments(self, capsys):
        code, out, _ = run_cli(
            ["eigenfn", "--flavor", "classical", "--n", "3", "--orders", "7"], capsys
        )
        assert code == 0
        rationals = [pair[0] for pair in json.loads(out)["moments"]]
        assert rationals[2] == "2/1"
        assert rationals[4] == "20/1"
        assert rationals[6] == "210/1"

    def test_density_grids(self, capsys):
        code, out, _ = run_cli(
            ["eigenfn", "--flavor", "free", "--n", "1", "--orders", "3",
             "--density-samples", "9"],
            capsys,
        )
        assert code == 0
        density = json.loads(out)["density"]
        assert len(density) == 9
        # free samples live strictly inside (-2, 2)
        assert all(-2.0 < x < 2.0 for x, _ in density)
        code, out, _ = run_cli(
            ["eigenfn", "--flavor", "classical", "--n", "1", "--orders", "3",
             "--density-samples", "9"],
            capsys,
        )
        density = json.loads(out)["density"]
        assert density[0][0] == -5.0 and density[-1][0] == 5.0


class TestAnalyticCommands:
    def test_freeconv_csv(self, tmp_path, capsys):
        semi = tmp_path / "semi.json"
        semi.write_text(json.dumps({"type": "semicircle", "center": 0.0, "radius": 2.0}))
        code, out, _ = run_cli(
            ["analytic", "freeconv", "--a", str(semi), "--b", str(semi),
             "--grid", "-3:3:101"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,density"
        assert len(lines) == 102
        middle = dict(
            (float(line.split(",")[0]), float(line.split(",")[1])) for line in lines[1:]
        )
        import math

        assert abs(middle[0.0] - math.sqrt(8.0) / (4.0 * math.pi)) < 1e-3

    def test_freeconv_grid_space_form(self, tmp_path, capsys):
        # a grid value starting with "-" must also parse when passed as a
        # separate token
        semi = tmp_path / "semi.json"
        semi.write_text(json.dumps({"type": "semicircle", "radius": 2.0}))
        code, out, _ = run_cli(
            ["analytic", "freeconv", "--a", str(semi), "--b", str(semi),
             "--grid=-3:3:101"],
            capsys,
        )
        assert code == 0
        space_code, space_out, _ = run_cli(
            ["analytic", "freeconv", "--a", str(semi), "--b", str(semi),
             "--grid", "-3:3:101"],
            capsys,
        )
        assert space_code == 0
        assert space_out == out

    def test_bad_grid_is_usage_error(self, capsys, tmp_path):
        semi = tmp_path / "semi.json"
        semi.write_text(json.dumps({"type": "semicircle", "radius": 2.0}))
        code, _, _ = run_cli(
            ["analytic", "freeconv", "--a", str(semi), "--b", str(semi),
             "--grid", "3:-3:50"],
            capsys,
        )
        assert code == 2

    def test_small_grid_fails_cleanly(self, tmp_path, capsys):
        semi = tmp_path / "semi.json"
        semi.write_text(json.dumps({"type": "semicircle", "radius": 2.0}))
        code, _, err = run_cli(
            ["analytic", "freeconv", "--a", str(semi), "--b", str(semi),
             "--grid", "-1:1:60"],
            capsys,
        )
        assert code == 1
        assert "mass" in err

    def test_pdecheck_residual(self, capsys):
        code, out, _ = run_cli(
            ["analytic", "pdecheck", "--psi", "poly:0,0,1", "--z", "1,2"], capsys
        )
        assert code == 0
        assert json.loads(out)["residual"] <= 1e-6

    def test_eigden_values(self, capsys):
        code, out, _ = run_cli(
            ["analytic", "eigden", "--x", "2", "--grid", "-1:1:5"], capsys
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,density"
        values = {float(l.split(",")[0]): float(l.split(",")[1]) for l in lines[1:]}
        assert values[0.0] == pytest.approx(-0.5)

    def test_eigden_edge_is_runtime_error(self, capsys):
        code, _, err = run_cli(
            ["analytic", "eigden", "--x", "2", "--grid", "-2:2:3"], capsys
        )
        assert code == 1
        assert "edge" in err


class TestProcessContract:
    def test_manifest_on_stderr(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        write_sequence(path, "free", "moments", [0, 1])
        argv = ["transform", "--flavor", "free", "--direction", "m2c",
                "--input", str(path)]
        code, _, err = run_cli(argv, capsys)
        assert code == 0
        manifest = manifest_of(err)
        assert manifest["command"] == ["freeclt"] + argv
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        assert manifest["inputs"] == {str(path): digest}
        assert isinstance(manifest["tool_version"], str)
        assert manifest["wall_time_s"] >= 0

    def test_manifest_present_on_failure(self, capsys):
        code, _, err = run_cli(
            ["partitions", "count", "--n", "0", "--k", "1", "--flavor", "free"],
            capsys,
        )
        assert code == 1
        manifest = manifest_of(err)
        assert manifest["command"][1] == "partitions"

    def test_usage_error_exit_code(self, capsys):
        code, _, _ = run_cli(["no-such-command"], capsys)
        assert code == 2

    def test_help_exits_zero(self, capsys):
        code, out, _ = run_cli(["--help"], capsys)
        assert code == 0
        assert "usage" in out

    def test_determinism(self, capsys):
        argv = ["clt", "matrix", "--flavor", "classical", "--size", "8", "--csv"]
        _, first, _ = run_cli(argv, capsys)
        _, second, _ = run_cli(argv, capsys)
        assert first == second

    def test_selftest_via_module_entry(self):
        proc = subprocess.run(
            [sys.executable, "-m", "freeclt", "selftest"],
            capture_output=True,
            text=True,
            timeout=300,
        )
        assert proc.returncode == 0
        lines = proc.stdout.strip().splitlines()
        assert lines[-1] == "all checks passed"
        assert all(line.startswith("ok ") for line in lines[:-1])
        assert len(lines) == 7
