import json

import numpy as np
import pytest
from click.testing import CliRunner

from ptbubble.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _read_data_lines(path):
    with open(path) as fh:
        return [line for line in fh.read().splitlines() if line and not line.startswith("#")]


def test_spectrum_csv(runner, tmp_path):
    out = tmp_path / "spec.csv"
    res = runner.invoke(
        main,
        ["spectrum", "--gamma", "0.2", "--eta-min", "-1", "--eta-max", "1",
         "--steps", "201", "-o", str(out)],
    )
    assert res.exit_code == 0, res.output
    lines = _read_data_lines(out)
    assert lines[0] == "eta,re_e1,im_e1,re_e2,im_e2"
    assert len(lines) == 202
    data = np.loadtxt(str(out), delimiter=",", skiprows=0, comments="#", usecols=range(5), dtype=str)
    body = np.array(data[1:], dtype=float)
    inside = np.abs(body[:, 0]) < 0.19
    outside = np.abs(body[:, 0]) > 0.21
    assert np.max(np.abs(body[outside, 2])) < 1e-10  # real spectra outside
    assert np.min(np.abs(body[inside, 2])) > 0.0  # conjugate pair inside


def test_cyclic_determinism_and_final_equality(runner, tmp_path):
    args = ["cyclic", "--gamma", "0.2", "--tf", "15",
            "--theta", "1.0471975511965976", "--phi", "0.5235987755982988",
            "--samples", "601"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    r1 = runner.invoke(main, args + ["-o", str(out1)])
    r2 = runner.invoke(main, args + ["-o", str(out2)])
    assert r1.exit_code == 0, r1.output
    assert r2.exit_code == 0
    assert out1.read_bytes() == out2.read_bytes()
    last = _read_data_lines(out1)[-1].split(",")
    header = _read_data_lines(out1)[0].split(",")
    c1sq = float(last[header.index("abs_c1_sq")])
    c2sq = float(last[header.index("abs_c2_sq")])
    assert abs(c1sq - c2sq) / max(c1sq, c2sq) < 0.1


def test_no_meta_flag(runner, tmp_path):
    out = tmp_path / "s.csv"
    res = runner.invoke(main, ["spectrum", "--gamma", "0.1", "--steps", "11",
                               "-o", str(out), "--no-meta"])
    assert res.exit_code == 0
    with open(out) as fh:
        assert not any(line.startswith("#") for line in fh)


def test_plot_files_created(runner, tmp_path):
    out = tmp_path / "c.csv"
    png = tmp_path / "c.png"
    res = runner.invoke(main, ["cyclic", "--gamma", "0.2", "--tf", "15",
                               "--samples", "301", "-o", str(out), "--plot", str(png)])
    assert res.exit_code == 0, res.output
    assert png.exists() and png.stat().st_size > 0


def test_config_file_defaults_and_precedence(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"gamma": 0.2, "steps": 11}))
    out = tmp_path / "s.csv"
    res = runner.invoke(main, ["spectrum", "--config", str(cfg), "-o", str(out)])
    assert res.exit_code == 0, res.output
    assert len(_read_data_lines(out)) == 12
    # explicit flag wins over the config value
    out2 = tmp_path / "s2.csv"
    res = runner.invoke(main, ["spectrum", "--config", str(cfg), "--steps", "5", "-o", str(out2)])
    assert res.exit_code == 0
    assert len(_read_data_lines(out2)) == 6
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"gamma": 0.2, "nonsense": 1}))
    res = runner.invoke(main, ["spectrum", "--config", str(bad), "-o", str(out)])
    assert res.exit_code == 2
    assert "unknown config keys" in res.output


def test_ratio_json(runner, tmp_path):
    out = tmp_path / "r.json"
    res = runner.invoke(main, ["ratio", "--gamma", "0.2", "--delta-y", "0.15", "-o", str(out)])
    assert res.exit_code == 0, res.output
    payload = json.loads(out.read_text())
    assert payload["amplitude_ratio"] == pytest.approx(0.3779644730092272)
    assert payload["probability_ratio"] == pytest.approx(1.0 / 7.0)
    assert payload["regime"] == "ratio-converges-rp"
    res = runner.invoke(main, ["ratio", "--gamma", "0.2", "--delta-x", "0.15"])
    assert res.exit_code == 0
    assert json.loads(res.output)["regime"] == "no-equal-distribution"
    res = runner.invoke(main, ["ratio", "--gamma", "0.1", "--delta-y", "0.15"])
    assert res.exit_code == 0
    assert json.loads(res.output)["regime"] == "no-ep"


def test_perturb_json(runner, tmp_path):
    res = runner.invoke(main, ["perturb", "--eta", "1", "--vp", "sigma-x", "--lam", "0.05"])
    assert res.exit_code == 0, res.output
    payload = json.loads(res.output)
    assert payload["e0"] == [-1.0, 1.0]
    assert payload["e1"] == [[0.0, 0.0], [0.0, 0.0]]
    assert payload["gap0"] == 2.0


def test_scan_theta(runner, tmp_path):
    out = tmp_path / "scan.csv"
    res = runner.invoke(main, ["scan-theta", "--gamma", "0.2", "--tf", "15",
                               "--steps", "3", "--samples", "301", "-o", str(out)])
    assert res.exit_code == 0, res.output
    lines = _read_data_lines(out)
    assert lines[0] == "theta,abs_dc_end,ratio_tf,abs_c1_tf,abs_c2_tf"
    assert len(lines) == 4


def test_evolve_requires_alpha(runner, tmp_path):
    res = runner.invoke(main, ["evolve", "--t-max", "5", "-o", str(tmp_path / "x.csv")])
    assert res.exit_code == 2


def test_evolve_runs(runner, tmp_path):
    out = tmp_path / "e.csv"
    res = runner.invoke(main, ["evolve", "--gamma", "0.2", "--delta-y", "0.1",
                               "--alpha", "0.1", "--t-max", "5", "--samples", "101",
                               "--a-re", "1", "-o", str(out)])
    assert res.exit_code == 0, res.output
    assert len(_read_data_lines(out)) == 102


def test_verify_command(runner):
    res = runner.invoke(main, ["verify"])
    assert res.exit_code == 0, res.output
    assert "FAIL" not in res.output
