"""Command-line interface: subcommands, fixtures, exit codes."""

import json

import numpy as np
import pytest

from qre.cli import EXIT_INPUT, EXIT_PASS, EXIT_VIOLATION, main
from qre.linalg import random_density, save_matrix


@pytest.fixture
def fixtures(tmp_path):
    paths = {}
    save_matrix(tmp_path / "rho_diag.json", np.diag([0.5, 0.5]).astype(complex))
    save_matrix(tmp_path / "sigma_diag.json", np.diag([0.75, 0.25]).astype(complex))
    save_matrix(tmp_path / "rho4.json", random_density(4, seed=1).mat)
    save_matrix(tmp_path / "sigma4.json", random_density(4, seed=2).mat)
    save_matrix(tmp_path / "rho8.json", random_density(8, seed=3).mat)
    save_matrix(tmp_path / "sab.json", random_density(4, seed=4).mat)
    paths["dir"] = tmp_path
    return tmp_path


class TestVerify:
    def test_pinsker_diagonal_fixture(self, fixtures, capsys):
        code = main(["verify", "pinsker", "--f", "f_p:0.5",
                     "--rho", str(fixtures / "rho_diag.json"),
                     "--sigma", str(fixtures / "sigma_diag.json"), "--json"])
        assert code == EXIT_PASS
        payload = json.loads(capsys.readouterr().out)
        # lhs = 1/2 * ||rho - sigma||_1^2 = 0.125; rhs = 4 (1 - sum sqrt(lam mu))
        assert payload["lhs"] == pytest.approx(0.125, abs=1e-12)
        expected_rhs = 4.0 * (1.0 - (np.sqrt([0.75 * 0.5, 0.25 * 0.5])).sum())
        assert payload["rhs"] == pytest.approx(expected_rhs, abs=1e-12)

    def test_monotonicity(self, fixtures):
        code = main(["verify", "monotonicity",
                     "--rho", str(fixtures / "rho4.json"),
                     "--sigma", str(fixtures / "sigma4.json"), "--dims", "2,2"])
        assert code == EXIT_PASS

    def test_thm42(self, fixtures):
        code = main(["verify", "thm42", "--beta", "0.25",
                     "--rho", str(fixtures / "rho4.json"),
                     "--sigma", str(fixtures / "sigma4.json"), "--dims", "2,2"])
        assert code == EXIT_PASS

    def test_ssa(self, fixtures):
        code = main(["verify", "ssa", "--rho", str(fixtures / "rho8.json"),
                     "--dims", "2x2x2"])
        assert code == EXIT_PASS

    def test_operator_ssa(self, fixtures):
        code = main(["verify", "operator_ssa_thm62",
                     "--rho", str(fixtures / "rho8.json"),
                     "--sigma", str(fixtures / "sab.json"), "--dims", "2x2x2"])
        assert code == EXIT_PASS

    def test_malformed_matrix_is_input_error(self, fixtures):
        bad = fixtures / "bad.json"
        bad.write_text("{not json")
        code = main(["verify", "pinsker", "--rho", str(bad),
                     "--sigma", str(fixtures / "sigma_diag.json")])
        assert code == EXIT_INPUT

    def test_missing_sigma_is_input_error(self, fixtures):
        code = main(["verify", "monotonicity",
                     "--rho", str(fixtures / "rho4.json"), "--dims", "2,2"])
        assert code == EXIT_INPUT

    def test_divergent_exit_code(self, fixtures, tmp_path):
        save_matrix(tmp_path / "pure.json", np.diag([1.0, 0.0]).astype(complex))
        code = main(["verify", "monotonicity",
                     "--rho", str(fixtures / "rho4.json"),
                     "--sigma", str(tmp_path / "pure4.json")])
        assert code == EXIT_INPUT  # file does not exist
        save_matrix(tmp_path / "pure4.json",
                    np.kron(np.diag([1.0, 0.0]), np.diag([1.0, 0.0])).astype(complex))
        code = main(["verify", "monotonicity",
                     "--rho", str(fixtures / "rho4.json"),
                     "--sigma", str(tmp_path / "pure4.json"), "--dims", "2,2"])
        assert code == 3


class TestBoundsConstants:
    def test_log_constants(self, capsys):
        code = main(["bounds", "constants", "--f", "neg_log", "--beta", "0.5"])
        assert code == EXIT_PASS
        out = dict(line.split("=") for line in capsys.readouterr().out.split())
        assert float(out["alpha"]) == 0.25
        assert float(out["C"]) == 1.0
        assert float(out["c"]) == 0.0
        assert float(out["N"]) > 0

    def test_power_constants(self, capsys):
        code = main(["bounds", "constants", "--f", "f_p:0.5", "--beta", "0.5"])
        assert code == EXIT_PASS
        out = dict(line.split("=") for line in capsys.readouterr().out.split())
        assert float(out["alpha"]) == pytest.approx(0.2)
        assert float(out["c"]) == pytest.approx(0.25)


class TestReprCheck:
    @pytest.mark.parametrize("fid", ["neg_log", "f_p:0.5", "neg_power:0.3"])
    def test_fidelity(self, fid, capsys):
        assert main(["repr", "check", "--f", fid]) == EXIT_PASS

    def test_irregular_rejected(self):
        assert main(["repr", "check", "--f", "f_p:1.5"]) == EXIT_INPUT


class TestCampaignCommand:
    def test_campaign_runs_and_is_deterministic(self, tmp_path, capsys):
        cfg = tmp_path / "c.cfg"
        out = tmp_path / "reports.jsonl"
        cfg.write_text(
            "inequalities = monotonicity, pinsker\n"
            "functions = neg_log\n"
            "dims = 2x2\n"
            "trials = 4\n"
            "seed = 9\n"
            f"output = {out}\n")
        assert main(["campaign", "--config", str(cfg)]) == EXIT_PASS
        first = out.read_bytes()
        assert main(["campaign", "--config", str(cfg)]) == EXIT_PASS
        assert out.read_bytes() == first
        assert b"monotonicity" in first

    def test_missing_config_is_input_error(self, tmp_path):
        assert main(["campaign", "--config", str(tmp_path / "nope.cfg")]) == EXIT_INPUT
