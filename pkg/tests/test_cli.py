import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

import oracles
from spectral_riesz import __version__
from spectral_riesz.cli import cli


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args, env=None):
        return runner.invoke(cli, list(args), env=env)

    return go


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_version(run):
    res = run("--version")
    assert res.exit_code == 0 and __version__ in res.output


def test_spectrum_preset(run):
    res = run("spectrum", "--domain", "unit-square", "--cutoff", "25")
    assert res.exit_code == 0
    vals = [float(r["eigenvalue"]) for r in _rows(res.stdout)]
    assert vals == pytest.approx([0, math.pi**2, math.pi**2, 2 * math.pi**2])


def test_spectrum_empty_cutoff(run):
    res = run("spectrum", "--domain", "unit-square", "--cutoff", "0")
    assert res.exit_code == 0 and _rows(res.stdout) == []


def test_spectrum_bad_json_exit_2(run):
    assert run("spectrum", "--domain", '{"type":"box"', "--cutoff", "10").exit_code == 2


def test_spectrum_resource_exit_3(run):
    assert run("spectrum", "--domain", "unit-cube", "--cutoff", "1e9").exit_code == 3


def test_spectrum_disk_json(run):
    res = run("spectrum", "--domain", '{"type":"disk","radius":1}', "--bc", "dirichlet", "--count", "2", "--h", "0.03125", "--format", "json")
    assert res.exit_code == 0, res.output
    doc = json.loads(res.stdout)
    assert len(doc["rows"]) == 2
    assert doc["rows"][0]["eigenvalue"] == pytest.approx(oracles.bessel_j0_first_zero() ** 2, rel=3e-3)


def test_bounds_twoterm(run):
    res = run("bounds", "--bound", "twoterm", "--domain", "unit-square", "--z", "100")
    assert res.exit_code == 0
    row = _rows(res.stdout)[0]
    assert float(row["bound_total"]) == pytest.approx(sum(oracles.TWOTERM_TERMS_100))
    assert float(row["oracle"]) == pytest.approx(oracles.R1_UNIT_SQUARE_NEUMANN_100)


def test_bounds_unknown(run):
    assert run("bounds", "--bound", "nope", "--domain", "unit-square", "--z", "1").exit_code == 2


def test_sweep_rows(run):
    res = run("sweep", "--bound", "laptev", "--domain", "unit-square", "--z-from", "1", "--z-to", "100", "--steps", "5", "--log")
    assert res.exit_code == 0
    rows = _rows(res.stdout)
    assert len(rows) == 5 and all(float(r["margin"]) >= 0 for r in rows)


def test_sweep_bad_range(run):
    res = run("sweep", "--bound", "laptev", "--domain", "unit-square", "--z-from", "10", "--z-to", "1")
    assert res.exit_code == 2


def test_riesz1d_json(run):
    res = run("riesz1d", "--R", "2.5", "--format", "json")
    assert res.exit_code == 0
    row = json.loads(res.stdout)["rows"][0]
    assert row["exact"] == pytest.approx(oracles.lattice_sum_1d(2.5)) and row["holds"]


def test_verify_rectangle_spot(run):
    res = run("verify", "--suite", "rectangle", "--l1", "1", "--l2", "1", "--z", "100")
    assert res.exit_code == 0
    oracle = [float(r["oracle"]) for r in _rows(res.stdout)]
    assert oracle == pytest.approx([oracles.RECT_CENTER_UNIT_SQUARE_100] * 2, abs=1e-9)


def test_verify_kroeger(run):
    res = run("verify", "--suite", "kroeger", "--domain", "unit-square", "--kmax", "500")
    assert res.exit_code == 0
    assert "0 failed" in res.stderr


def test_verify_polya_reports_failure(run):
    # the product counting bound fails below the second eigenvalue, so the suite exits 1
    res = run("verify", "--suite", "polya")
    assert res.exit_code == 1
    failing = {r["check"] for r in _rows(res.stdout) if r["passed"] == "false"}
    assert failing and all(c.startswith("polya-product") for c in failing)


def test_ineq_report(run, tmp_path):
    out = tmp_path / "ineq.json"
    res = run("ineq", "--form", "all", "--samples", "2000", "--output", str(out))
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert len(doc["reports"]) == 4
    assert all(r["violations"] == [] and r["samples"] == 2000 for r in doc["reports"])


def test_output_file(run, tmp_path):
    out = tmp_path / "spec.csv"
    assert run("spectrum", "--domain", "unit-square", "--cutoff", "25", "-o", str(out)).exit_code == 0
    assert out.read_text().startswith("eigenvalue")


def test_config_defaults(run, tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text("spectrum.cutoff = 25\n")
    res = run("--config", str(cfg), "spectrum", "--domain", "unit-square")
    assert res.exit_code == 0 and len(_rows(res.stdout)) == 4
