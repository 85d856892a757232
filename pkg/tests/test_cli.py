"""The ``forge`` command: outputs, determinism and exit codes."""

import json

import pytest

from forge.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, RunConfig, main

PGL = ["--p", "3", "--e", "1", "--d", "2", "--f", "1*t^2+1"]
PSL = ["--p", "3", "--e", "1", "--d", "2", "--f", "1*t^2+1*t^1+2"]


def test_factor_text(capsys):
    assert main(["factor", "--p", "3", "--e", "1", "--d", "2"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out == ["x_2=1 x_1=3", "(1 - T)(1 + T)"]


def test_factor_json(capsys):
    assert main(["factor", "--p", "5", "--d", "3", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["product_ok"] and data["reduced_norms_ok"]
    assert len(data["factors"]) == 3 and data["x"][0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["factor", "--p", "3", "--d", "1"],
        ["factor", "--p", "4", "--d", "2"],
        ["build", "--p", "3", "--d", "2", "--f", "1*t^2+2"],
        ["build", "--p", "3", "--d", "2", "--f", "t^3+1"],
        ["verify", "--p", "3", "--d", "2", "--f", "garbage"],
        ["factor", "--p", "3", "--d", "2", "--threads", "0"],
        ["nonsense"],
    ],
)
def test_invalid_input_exit_code(argv, capsys):
    assert main(argv) == EXIT_INPUT


def test_gens(capsys):
    assert main(["gens", "--p", "3", "--d", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 26
    types = [int(line.split()[1]) for line in lines]
    assert types.count(1) == 13 and types.count(2) == 13


@pytest.mark.parametrize("fmt", ["json", "dot", "edges"])
def test_build_is_byte_identical(tmp_path, fmt):
    a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
    assert main(["build", *PSL, "--format", fmt, "--out", str(a)]) == EXIT_OK
    assert main(["build", *PSL, "--format", fmt, "--out", str(b), "--threads", "1"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_build_cap(tmp_path, capsys):
    assert main(["build", *PGL, "--cap", "100", "--out", str(tmp_path / "g.json")]) == EXIT_CAP


def test_build_ball_d3(tmp_path, capsys):
    out = tmp_path / "ball.json"
    assert main(["build", "--p", "3", "--d", "3", "--f", "auto:1", "--ball", "2", "--out", str(out)]) == EXIT_OK
    assert "spectra skipped" in capsys.readouterr().err
    data = json.loads(out.read_text())
    assert data["params"]["radius"] == 2
    assert main(["spectra", "--graph", str(out)]) == EXIT_INPUT


def test_spectra_roundtrip(tmp_path):
    g, rep, csv = tmp_path / "g.json", tmp_path / "r.json", tmp_path / "e.csv"
    assert main(["build", *PGL, "--out", str(g)]) == EXIT_OK
    assert main(["spectra", "--graph", str(g), "--out", str(rep), "--csv", str(csv)]) == EXIT_OK
    data = json.loads(rep.read_text())
    assert data["passed"] and data["colors"][0]["margin"] > 0
    assert len(csv.read_text().splitlines()) == 721
    assert main(["spectra", "--graph", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_spectra_cutoff_is_resource_cap(tmp_path):
    g = tmp_path / "g.json"
    assert main(["build", *PSL, "--out", str(g)]) == EXIT_OK
    assert main(["spectra", "--graph", str(g), "--dense-cutoff", "10"]) == EXIT_CAP


@pytest.mark.parametrize("argv,kind,order", [(PGL, "PGL", 720), (PSL, "PSL", 360)])
def test_verify_d2(argv, kind, order, capsys, tmp_path):
    summary = tmp_path / "s.json"
    assert main(["verify", *argv, "--out", str(summary)]) == EXIT_OK
    out = capsys.readouterr().out
    assert f"{kind} order {order}" in out
    assert f"closure size: {order} vertices" in out
    assert "FAIL" not in out
    data = json.loads(summary.read_text())
    assert data["passed"] and data["skipped"] == []


def test_verify_d3_degrades(capsys):
    assert main(["verify", "--p", "3", "--d", "3", "--f", "auto:1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS link flag incidence" in out
    assert "SKIP spectra (partial graph)" in out
    assert "FAIL" not in out


def test_verify_dense_cutoff_skips_spectra(capsys):
    assert main(["verify", *PSL, "--dense-cutoff", "10"]) == EXIT_OK
    assert "SKIP spectra" in capsys.readouterr().out


def test_verify_reports_failures(monkeypatch, capsys):
    import forge.cli as cli

    monkeypatch.setattr(cli, "psi_soundness", lambda m, samples, seed: (1, 0, samples))
    assert main(["verify", *PSL]) == EXIT_FAIL
    assert "FAIL psi homomorphism" in capsys.readouterr().out


def test_run_config_defaults():
    cfg = RunConfig(p=3, e=1, d=2, f="auto:1")
    assert cfg.ctx().q == 3
    assert str(cfg.modulus().f) == "1*t^2+1"
    assert cfg.dense_cutoff == 5000 and cfg.seed == 0
