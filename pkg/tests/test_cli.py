import json
import os

import pytest

from hofreud.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBetaCommand:
    def test_json_records(self, capsys):
        code, out, _ = run_cli(
            capsys, "beta", "--m", "2", "--t", "0", "--lambda", "-0.5",
            "--count", "20", "--method", "hankel", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["meta"]["m"] == 2
        assert payload["meta"]["method"] == "hankel"
        assert payload["meta"]["precision_bits"] >= 256
        assert len(payload["data"]) == 20
        first = payload["data"][0]
        assert set(first) == {"n", "beta", "precision_bits"}
        assert first["beta"].startswith("0.337989120033642")

    def test_painleve_method(self, capsys):
        code, out, _ = run_cli(
            capsys, "beta", "--m", "2", "--t", "0", "--lambda", "-0.5",
            "--count", "8", "--method", "painleve",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["meta"]["method"] == "painleve"
        assert len(payload["data"]) == 8

    def test_deterministic_output(self, capsys):
        args = ("beta", "--m", "3", "--t", "0.5", "--lambda", "0.25", "--count", "6",
                "--format", "csv")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


class TestMomentsCommand:
    def test_csv_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "moments", "--m", "2", "--t", "1", "--lambda", "0.5",
            "--count", "4", "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        meta = [l for l in lines if l.startswith("#")]
        body = [l for l in lines if not l.startswith("#")]
        assert any(l.startswith("# precision_bits=") for l in meta)
        assert body[0] == "k,mu"
        assert len(body) == 6  # header + mu_0..mu_8
        assert body[1].startswith("0,")


class TestZerosCommand:
    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "zeros", "--m", "3", "--t", "1", "--lambda", "0.5", "--n", "5",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["meta"]["n"] == 5
        zs = [row["zero"] for row in payload["data"]]
        assert len(zs) == 5
        assert zs[2] == "0.0"


class TestDensityCommand:
    def test_csv_header_carries_constants(self, capsys):
        code, out, _ = run_cli(
            capsys, "density", "--m", "3", "--ell", "1", "--samples", "10",
            "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert any(l.startswith("# a=0.50540723922844") for l in lines)
        assert any(l.startswith("# c=1.01081447845688") for l in lines)
        body = [l for l in lines if not l.startswith("#")]
        assert body[0] == "x,density"
        assert len(body) == 11


class TestDecomposeCommand:
    def test_families_emitted(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--m", "2", "--t", "0", "--lambda", "-0.5",
            "--count", "2",
        )
        assert code == 0
        payload = json.loads(out)
        families = {row["family"] for row in payload["data"]}
        assert families == {"B", "R"}
        b1 = [r for r in payload["data"] if r["family"] == "B" and r["n"] == 1]
        assert b1[0]["coefficient"].startswith("-0.337989")


class TestVerifyCommand:
    def test_empty_selection_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--m", "2")
        assert code == 2
        assert "suite" in err

    def test_single_suite(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--suite", "moments-ode", "--m", "2", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["data"][0]["suite"] == "moments-ode"
        assert payload["data"][0]["passed"] is True

    def test_unknown_suite_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--suite", "nonsense", "--m", "2")
        assert code == 2


class TestErrorPaths:
    def test_invalid_lambda_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "moments", "--m", "2", "--t", "0", "--lambda", "-3", "--count", "2",
        )
        assert code == 2
        assert "lambda" in err

    def test_invalid_m_exit_2(self, capsys):
        code, _, _ = run_cli(
            capsys, "beta", "--m", "1", "--t", "0", "--lambda", "0", "--count", "2",
        )
        assert code == 2

    def test_numerical_failure_exit_3(self, capsys):
        # large t at low precision trips the series range guard
        code, _, err = run_cli(
            capsys, "moments", "--m", "2", "--t", "60", "--lambda", "0",
            "--count", "2", "--bits", "64",
        )
        assert code == 3
        diagnostic = json.loads(err)
        assert diagnostic["error"] == "RangeError"

    def test_missing_subcommand_exit_2(self, capsys):
        assert main([]) == 2


class TestEnvironmentOverride:
    def test_freud_bits(self, capsys, monkeypatch):
        monkeypatch.setenv("FREUD_BITS", "320")
        code, out, _ = run_cli(
            capsys, "moments", "--m", "2", "--t", "0", "--lambda", "0", "--count", "1",
        )
        assert code == 0
        assert json.loads(out)["meta"]["precision_bits"] == 320

    def test_bits_flag_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("FREUD_BITS", "320")
        code, out, _ = run_cli(
            capsys, "moments", "--m", "2", "--t", "0", "--lambda", "0",
            "--count", "1", "--bits", "128",
        )
        assert code == 0
        assert json.loads(out)["meta"]["precision_bits"] == 128


class TestPlotsAndFiles:
    def test_out_file_and_plot(self, capsys, tmp_path):
        out_file = tmp_path / "density.csv"
        png = tmp_path / "density.png"
        code, _, _ = run_cli(
            capsys, "density", "--m", "2", "--ell", "0.5", "--samples", "16",
            "--format", "csv", "--out", str(out_file), "--plot", str(png),
        )
        assert code == 0
        assert out_file.exists() and out_file.read_text().startswith("# m=2")
        assert png.exists() and png.stat().st_size > 1000

    def test_beta_plot(self, capsys, tmp_path):
        png = tmp_path / "beta.png"
        code, _, _ = run_cli(
            capsys, "beta", "--m", "2", "--t", "0", "--lambda", "-0.5",
            "--count", "12", "--plot", str(png), "--out", str(tmp_path / "b.json"),
        )
        assert code == 0
        assert png.exists()

    def test_zeros_plot(self, capsys, tmp_path):
        png = tmp_path / "zeros.png"
        code, _, _ = run_cli(
            capsys, "zeros", "--m", "3", "--t", "1", "--lambda", "0.5", "--n", "8",
            "--plot", str(png), "--out", str(tmp_path / "z.json"),
        )
        assert code == 0
        assert png.exists()
