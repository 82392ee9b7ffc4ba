import io
import json
import math

import pandas
import pytest

from hitchinpants import cli
from hitchinpants.geometry import bd_coordinates, flag_algebra
from hitchinpants.geometry.bd_coordinates import InvariantValue
from hitchinpants.geometry.flag_algebra import DegenerateFlagsError
from hitchinpants.geometry.scalar_field import Scalar

GRID = "lA:0.5:2:3,lB:0.5:2:3,lC:0.5:2:3"


def invoke(runner, *args):
	return runner.invoke(cli.cli, [str(arg) for arg in args])


def test_coords_json(runner):
	result = invoke(runner, "coords", "--n", 2, "--abc", "2,1,1/2")
	assert result.exit_code == 0
	document = json.loads(result.stdout)
	assert document["n"] == 2
	assert document["mode"] == "exact"
	assert document["params"] == {"alpha": "2", "beta": "1", "gamma": "1/2"}
	for leaf in ("h_AB", "h_BC", "h_CA"):
		entry = document["coordinates"]["sigma"][leaf][0]
		assert entry["exp"] == "2"
		assert entry["log"] == pytest.approx(0.693147, abs=1e-6)
	assert document["coordinates"]["tau"] == {"T0": {}, "T1": {}}
	assert document["boundary_lengths"]["A"][0]["exp"] == "4"
	assert all(document["checks"]["polytope"].values())
	assert all(document["checks"]["domain"].values())


def test_coords_generic_method(runner):
	result = invoke(runner, "coords", "--n", 3, "--abc", "2,1,1/2", "--method", "generic")
	assert result.exit_code == 0
	document = json.loads(result.stdout)
	assert document["method"] == "generic"
	assert document["coordinates"]["tau"]["T1"]["1,1,1"]["exp"] == "1"


def test_coords_from_lengths(runner):
	result = invoke(runner, "coords", "--n", 3, "--lengths", "1,1,1")
	assert result.exit_code == 0
	document = json.loads(result.stdout)
	assert document["mode"] == "float"
	for triangle in ("T0", "T1"):
		assert document["coordinates"]["tau"][triangle]["1,1,1"]["log"] == pytest.approx(0.0, abs=1e-9)
	for leaf in ("h_AB", "h_BC", "h_CA"):
		for entry in document["coordinates"]["sigma"][leaf]:
			assert entry["log"] == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("args", [
	("--n", 1, "--abc", "2,1,1/2"),
	("--n", 3, "--lengths", "1,1,1", "--mode", "exact"),
	("--n", 3, "--abc", "2,1,1/2", "--lengths", "1,1,1"),
	("--n", 3),
	("--n", 3, "--abc", "1/2,1,1/2"),
	("--n", 3, "--abc", "2,1"),
	("--n", 3, "--abc", "2,x,1/2"),
	("--n", 3, "--lengths", "1,-1,1"),
])
def test_coords_usage_errors(runner, args):
	result = invoke(runner, "coords", *args)
	assert result.exit_code == cli.EXIT_USAGE
	assert "Error" in result.stderr
	assert result.stdout == ""


def test_coords_degenerate_exit_code(runner, monkeypatch):
	def broken_factor(params, p, q, r):
		return Scalar(-1 if (p, q, r) == (2, 1, 0) else 1, params.backend)

	monkeypatch.setattr(bd_coordinates, "x_T1", broken_factor)
	result = invoke(runner, "coords", "--n", 3, "--abc", "2,1,1/2")
	assert result.exit_code == cli.EXIT_DEGENERATE
	assert "positivity violation" in result.stderr


def test_coords_csv(runner):
	result = invoke(runner, "coords", "--n", 3, "--abc", "2,1,1/2", "--format", "csv")
	assert result.exit_code == 0
	frame = pandas.read_csv(io.StringIO(result.stdout))
	assert list(frame.columns) == ["lA", "lB", "lC", "alpha", "beta", "gamma"] + bd_coordinates.coordinate_columns(3)
	assert len(frame) == 1
	assert frame["sigma_hAB_p1"][0] == pytest.approx(math.log(2))
	assert frame["gamma"][0] == 0.5


def test_coords_xml(runner):
	result = invoke(runner, "coords", "--n", 2, "--abc", "2,1,1/2", "--format", "xml")
	assert result.exit_code == 0
	assert "<n>2</n>" in result.stdout
	assert "<method>closed_form</method>" in result.stdout


def test_coords_out_file_is_reproducible(runner, tmp_path):
	first = tmp_path / "first.json"
	second = tmp_path / "nested" / "second.json"
	assert invoke(runner, "coords", "--n", 4, "--abc", "3/2,1,2/3", "--out", first).exit_code == 0
	assert invoke(runner, "coords", "--n", 4, "--abc", "3/2,1,2/3", "--out", second).exit_code == 0
	assert first.read_bytes() == second.read_bytes()
	document = json.loads(first.read_text(encoding="utf-8"))
	assert len(bd_coordinates.coordinate_columns(4)) == 15
	assert sum(len(v) for v in document["coordinates"]["sigma"].values()) == 9
	assert sum(len(v) for v in document["coordinates"]["tau"].values()) == 6


def test_verify(runner, tmp_path):
	out = tmp_path / "report.json"
	result = invoke(runner, "verify", "--samples", 1, "--seed", 3, "--max-n", 3, "--out", out)
	assert result.exit_code == cli.EXIT_OK
	report = json.loads(out.read_text(encoding="utf-8"))
	assert report["passed"] is True
	assert report["counterexample"] is None
	assert report["categories"]["oracle"]["passed"] > 0
	assert "oracle" in result.stderr


def test_verify_is_deterministic(runner):
	first = invoke(runner, "verify", "--samples", 2, "--seed", 5, "--max-n", 2)
	second = invoke(runner, "verify", "--samples", 2, "--seed", 5, "--max-n", 2)
	assert first.exit_code == second.exit_code == 0
	assert json.loads(first.stdout) == json.loads(second.stdout)


def test_verify_failure(runner, monkeypatch):
	def wrong_sigma(n, params, p):
		return InvariantValue(1 / (params.beta * params.gamma) + 1)

	monkeypatch.setitem(bd_coordinates.CLOSED_FORM_SHEARING, "h_AB", wrong_sigma)
	result = invoke(runner, "verify", "--samples", 1, "--seed", 0, "--max-n", 2)
	assert result.exit_code == cli.EXIT_VERIFICATION_FAILED
	assert json.loads(result.stdout)["counterexample"]["category"] == "oracle"
	assert "Counterexample" in result.stderr


def test_verify_rejects_rank(runner):
	result = invoke(runner, "verify", "--samples", 1, "--max-n", 1)
	assert result.exit_code == cli.EXIT_USAGE


def test_sweep(runner):
	result = invoke(runner, "sweep", "--n", 3, "--grid", GRID)
	assert result.exit_code == 0
	frame = pandas.read_csv(io.StringIO(result.stdout))
	assert frame.shape == (27, 6 + 8)
	assert list(frame.columns[6:]) == bd_coordinates.coordinate_columns(3)
	assert (frame[["tau_T0_p1q1r1", "tau_T1_p1q1r1"]].abs() < 1e-9).all().all()


def test_sweep_symmetric_points(runner):
	result = invoke(runner, "sweep", "--n", 2, "--grid", GRID)
	assert result.exit_code == 0
	frame = pandas.read_csv(io.StringIO(result.stdout))
	symmetric = frame[(frame["lA"] == frame["lB"]) & (frame["lB"] == frame["lC"])]
	assert len(symmetric) == 3
	for _, row in symmetric.iterrows():
		for column in ("sigma_hAB_p1", "sigma_hBC_p1", "sigma_hCA_p1"):
			assert row[column] == pytest.approx(row["lA"] / 2, abs=1e-10)


def test_sweep_rank_four_columns(runner, tmp_path):
	out = tmp_path / "sweep.csv"
	result = invoke(runner, "sweep", "--n", 4, "--grid", "lA:1:1:1,lB:1:2:2,lC:1:1:1", "--out", out)
	assert result.exit_code == 0
	frame = pandas.read_csv(out)
	assert frame.shape == (2, 6 + 15)


@pytest.mark.parametrize("grid", ["lA:0.5:2:3", "lA:0.5:2:3,lB:0.5:2:3,lX:1:2:2", "lA:0:2:3,lB:1:2:2,lC:1:2:2", "lA:1:2,lB:1:2:2,lC:1:2:2"])
def test_sweep_bad_grid(runner, grid):
	result = invoke(runner, "sweep", "--n", 2, "--grid", grid)
	assert result.exit_code == cli.EXIT_USAGE


def test_sweep_unwritable_path(runner, tmp_path):
	blocker = tmp_path / "blocker"
	blocker.write_text("not a directory")
	result = invoke(runner, "sweep", "--n", 2, "--grid", "lA:1:1:1,lB:1:1:1,lC:1:1:1", "--out", blocker / "sweep.csv")
	assert result.exit_code == cli.EXIT_USAGE
	assert "cannot write" in result.stderr


def test_coords_from_lengths_at_rank_ten(runner):
	result = invoke(runner, "coords", "--n", 10, "--lengths", "1,1,1")
	assert result.exit_code == cli.EXIT_OK
	document = json.loads(result.stdout)
	sigma = document["coordinates"]["sigma"]
	tau = document["coordinates"]["tau"]
	assert sum(len(v) for v in sigma.values()) + sum(len(v) for v in tau.values()) == 99
	for entry in sigma["h_CA"]:
		assert entry["log"] == pytest.approx(0.5, abs=1e-6)


def test_sweep_at_rank_ten(runner):
	result = invoke(runner, "sweep", "--n", 10, "--grid", "lA:1:1:1,lB:0.5:1:2,lC:1:1:1")
	assert result.exit_code == cli.EXIT_OK
	frame = pandas.read_csv(io.StringIO(result.stdout))
	assert frame.shape == (2, 6 + 99)


def test_sweep_with_workers_matches_serial(runner):
	serial = invoke(runner, "sweep", "--n", 3, "--grid", GRID, "--jobs", 1)
	pooled = invoke(runner, "sweep", "--n", 3, "--grid", GRID, "--jobs", 2)
	assert serial.exit_code == pooled.exit_code == cli.EXIT_OK
	assert pooled.stdout == serial.stdout


def test_verify_with_workers_matches_serial(runner):
	serial = invoke(runner, "verify", "--samples", 3, "--seed", 5, "--max-n", 3, "--jobs", 1)
	pooled = invoke(runner, "verify", "--samples", 3, "--seed", 5, "--max-n", 3, "--jobs", 2)
	assert serial.exit_code == pooled.exit_code == cli.EXIT_OK
	assert json.loads(pooled.stdout) == json.loads(serial.stdout)


def test_verify_reports_flag_errors_as_failures(runner, monkeypatch):
	def no_flags(*args, **kwargs):
		raise DegenerateFlagsError("degenerate flags")

	monkeypatch.setattr(flag_algebra, "random_generic_flags", no_flags)
	result = invoke(runner, "verify", "--samples", 1, "--seed", 0, "--max-n", 3)
	assert result.exit_code == cli.EXIT_VERIFICATION_FAILED
	assert json.loads(result.stdout)["counterexample"]["category"] == "triple_ratio_symmetry"
	assert "Counterexample" in result.stderr
