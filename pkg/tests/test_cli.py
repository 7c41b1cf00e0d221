"""
Tests for the nilharmonic command line
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import json

import pytest

from nilharmonic.cli import EXIT_INPUT, EXIT_OK, ReportDocument, main, parse_coordinates


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("NILHARMONIC_SEED", "NILHARMONIC_BUDGET", "NILHARMONIC_JOBS", "NILHARMONIC_VERBOSE"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("NILHARMONIC_JOBS", "1")


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_parse_coordinates():
    assert parse_coordinates("1, -1/2,0") == (1, -0.5, 0)
    with pytest.raises(ValueError, match="coordinate 2"):
        parse_coordinates("1,x,3")


def test_info_on_torus(capsys):
    code, data, _ = run_json(capsys, "info", "(0,0,0,0,0,0)")
    assert code == EXIT_OK
    assert data["schema_version"] == 1
    assert data["command"] == "info"
    assert data["results"]["betti_numbers"] == [1, 6, 15, 20, 15, 6, 1]
    assert data["results"]["symplectic"] is True
    assert data["results"]["step_length"] == 1


def test_info_text_mode(capsys):
    assert main(["info", "(0,0,12,13,14+23,34+52)"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("🚀 info")
    assert "Symplectic: no" in out
    assert "✅ all checks passed" in out


def test_info_on_odd_dimension(capsys):
    code, data, _ = run_json(capsys, "info", "(0,0,12)")
    assert code == EXIT_OK
    results = data["results"]
    assert results["betti_numbers"] == [1, 2, 2, 1]
    assert results["symplectic"] is False
    assert results["symplectic_reason"] == "odd dimension"
    assert results["witness"] is None
    assert results["moduli_dimension"] is None
    assert results["z2_basis"] == []
    assert results["pfaffian"] is None


def test_info_text_on_odd_dimension(capsys):
    assert main(["info", "(0,0,12)"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Symplectic: no (odd dimension)" in out
    assert "Pfaffian" not in out


def test_h_at_the_witness(capsys):
    code, data, _ = run_json(capsys, "h", "(0,0,0,0,0,12)")
    assert code == EXIT_OK
    assert data["passed"] is True
    h = data["results"]["profile"]["h"]
    assert h[:3] == [1, 5, 11]
    assert h[5] == 4
    assert data["results"]["yamada"]["equality"] is True


def test_starcheck(capsys):
    code, data, _ = run_json(capsys, "starcheck", "(0,0,0,12,13,23)")
    assert code == EXIT_OK
    assert all(data["results"]["checks"].values())
    assert data["results"]["h"] == data["results"]["chain_level_h"]


def test_json_round_trip(capsys):
    _, _, out = run_json(capsys, "info", "(0,0,0,12,13,23)")
    assert ReportDocument.from_json(out).to_json() == out.rstrip("\n")


class TestInputErrors:
    def test_bad_structure(self, capsys):
        assert main(["info", "(0,0,0,12,34)"]) == EXIT_INPUT
        err = capsys.readouterr().err
        assert "❌ Error:" in err
        assert "34" in err

    def test_degenerate_omega(self, capsys):
        zeros = ",".join(["0"] * 15)
        assert main(["h", "(0,0,0,0,0,0)", "--omega", zeros]) == EXIT_INPUT
        assert "degenerate" in capsys.readouterr().err

    def test_wrong_coordinate_count(self, capsys):
        assert main(["h", "(0,0,0,0,0,0)", "--omega", "1,2"]) == EXIT_INPUT
        assert "15 coordinates" in capsys.readouterr().err

    def test_non_symplectic_structure(self, capsys):
        assert main(["starcheck", "(0,0,12,13,14+23,34+52)"]) == EXIT_INPUT

    def test_h_in_odd_dimension(self, capsys):
        assert main(["h", "(0,0,12)"]) == EXIT_INPUT
        assert "admits no symplectic form" in capsys.readouterr().err

    def test_bad_budget(self, capsys):
        assert main(["valuesets", "(0,0,0,0,0,12)", "--budget", "1,2"]) == EXIT_INPUT

    def test_bad_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("NILHARMONIC_SEED", "minus one")
        assert main(["info", "(0,0,0,0,0,0)"]) == EXIT_INPUT
        assert "NILHARMONIC_SEED" in capsys.readouterr().err


def test_flexible_without_variation(capsys):
    code, data, _ = run_json(capsys, "flexible", "(0,0,0,0,0,0)", "--budget", "1,1,10")
    assert code == EXIT_OK
    assert data["results"]["found"] is False


def test_genericity_without_samples(capsys):
    code, data, _ = run_json(capsys, "valuesets", "(0,0,0,0,0,12)", "--budget", "1,1,0", "--genericity")
    assert code == EXIT_OK
    assert data["results"]["genericity"]["status"] == "insufficient budget"
    assert data["results"]["genericity"]["passed"] is False


def test_timing_adds_elapsed(capsys):
    _, data, _ = run_json(capsys, "info", "(0,0,0,0,0,0)", "--timing")
    assert data["results"]["elapsed_seconds"] >= 0


@pytest.mark.slow
def test_catalog_with_zero_budget(capsys):
    code, data, _ = run_json(capsys, "catalog", "--budget", "zero")
    assert code == EXIT_OK
    assert data["results"]["summary"] == "8/34 rows verified"
    assert data["results"]["counts"]["fail"] == 0
