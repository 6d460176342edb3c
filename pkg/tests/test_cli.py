"""Command-line interface: outputs, determinism, exit codes."""

import json

import numpy as np
import pytest

from qsd.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [line for line in text.strip().splitlines() if line]
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestHelstromCommand:
    def test_reference_angle(self, capsys):
        code, out, _ = run_cli(capsys, "helstrom", "--theta", "0.5235987755982988")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["theta", "bound", "achieved", "brute_force"]
        bound = float(rows[0][1])
        assert bound == pytest.approx(0.0669873, abs=1e-6)

    def test_orthogonal_angle(self, capsys):
        code, out, _ = run_cli(capsys, "helstrom", "--theta", "0.7853981633974483")
        assert code == 0
        _, rows = parse_csv(out)
        assert float(rows[0][1]) == pytest.approx(0.0, abs=1e-12)

    def test_degrees_flag(self, capsys):
        _, out_rad, _ = run_cli(capsys, "helstrom", "--theta", "0.5235987755982988")
        _, out_deg, _ = run_cli(capsys, "helstrom", "--theta", "30", "--degrees")
        assert out_rad == out_deg

    def test_grid_consistency(self, capsys):
        code, out, _ = run_cli(capsys, "helstrom", "--grid", "25",
                               "--resolution", "1e-3")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 25
        for row in rows:
            theta, bound, achieved, brute = map(float, row)
            assert achieved - bound <= 1e-9
            assert abs(brute - bound) <= 1e-4

    def test_out_of_range_angle(self, capsys):
        code, _, err = run_cli(capsys, "helstrom", "--theta", "1.5")
        assert code == 1
        assert "theta" in err

    def test_missing_arguments(self, capsys):
        code, _, _ = run_cli(capsys, "helstrom")
        assert code == 1


class TestUdpCommand:
    def test_two_state_json(self, capsys):
        code, out, _ = run_cli(capsys, "udp", "--theta", "0.5235987755982988")
        assert code == 0
        doc = json.loads(out)
        assert doc["inconclusive_prob"] == pytest.approx(0.5, abs=1e-9)
        assert doc["interferometer"]["transmission"] == pytest.approx(
            np.sqrt(2 / 3), abs=1e-9)
        stats = doc["interferometer"]["statistics"]
        assert stats["+"]["D-"] == pytest.approx(0.0, abs=1e-12)

    def test_uniform_coefficients(self, capsys):
        c = 1 / np.sqrt(3)
        code, out, _ = run_cli(capsys, "udp", "--coeffs", f"{c},{c},{c}")
        assert code == 0
        doc = json.loads(out)
        assert doc["inconclusive_prob"] == pytest.approx(0.0, abs=1e-9)

    def test_reference_coefficients(self, capsys):
        code, out, _ = run_cli(capsys, "udp", "--coeffs", "0.7071,0.5,0.5")
        assert code == 0
        doc = json.loads(out)
        assert doc["inconclusive_prob"] == pytest.approx(0.25, abs=1e-4)

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "udp", "--theta", "0.5", "--format", "csv")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["input", "D+", "D-", "D?"]
        assert len(rows) == 2

    def test_infeasible_success_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "udp", "--theta", "0.5235987755982988",
                               "--success", "0.9")
        assert code == 2
        assert "infeasible" in err

    def test_linearly_dependent_coefficients(self, capsys):
        code, _, _ = run_cli(capsys, "udp", "--coeffs", "0,1")
        assert code == 1

    def test_theta_and_coeffs_conflict(self, capsys):
        code, _, _ = run_cli(capsys, "udp", "--theta", "0.3", "--coeffs", "1,0")
        assert code == 1


class TestBoundsCommand:
    def test_clone_reference(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--m", "1", "--n", "2",
                               "--overlap", "0.5")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["clone_prob"]) == pytest.approx(2 / 3, abs=1e-12)
        assert float(row["ucm_shrink"]) == pytest.approx(2 / 3, abs=1e-12)
        assert float(row["ucm_fidelity"]) == pytest.approx(5 / 6, abs=1e-12)
        assert abs(float(row["fidelity_identity_residual"])) <= 1e-12
        assert abs(float(row["shrink_ratio_residual"])) <= 1e-12

    def test_equal_copy_counts(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--m", "3", "--n", "3")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["clone_prob"]) == 1.0

    def test_estimation_mode(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--estimation", "--m", "1")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["mean_fidelity"]) == pytest.approx(2 / 3, abs=1e-12)
        assert float(row["shrink"]) == pytest.approx(1 / 3, abs=1e-12)

    def test_invalid_range(self, capsys):
        code, _, _ = run_cli(capsys, "bounds", "--m", "3", "--n", "2",
                             "--overlap", "0.5")
        assert code == 1


class TestSimulateCommand:
    def test_deterministic_for_fixed_seed(self, capsys):
        args = ("simulate", "--scenario", "trine", "--seed", "7",
                "--trials", "20000")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2
        _, out3, _ = run_cli(capsys, "simulate", "--scenario", "trine",
                             "--seed", "8", "--trials", "20000")
        assert out1 != out3

    def test_trine_scenario(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--scenario", "trine",
                               "--seed", "1", "--trials", "100000")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert row["metric"] == "error_rate"
        assert float(row["analytic"]) == pytest.approx(1 / 3, abs=1e-9)
        assert row["passed"] == "true"

    def test_idp_orthogonal_has_no_inconclusives(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--scenario", "idp",
                               "--theta", "0.7853981633974483",
                               "--seed", "3", "--trials", "50000")
        assert code == 0
        header, rows = parse_csv(out)
        metrics = {row[0]: row for row in rows}
        assert float(metrics["inconclusive_rate"][1]) == 0.0
        assert float(metrics["wrong_rate"][1]) == 0.0

    def test_concentrate_scenario(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--scenario", "concentrate",
                               "--theta", "0.39269908169872414",
                               "--seed", "5", "--trials", "200000")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["analytic"]) == pytest.approx(0.2928932, abs=1e-6)
        assert row["passed"] == "true"

    def test_symmetric_ud_scenario(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--scenario", "symmetric-ud",
                               "--seed", "9", "--trials", "50000")
        assert code == 0
        header, rows = parse_csv(out)
        metrics = {row[0]: row for row in rows}
        assert float(metrics["wrong_rate"][1]) == 0.0

    def test_helstrom_sweep_rows(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--scenario", "helstrom-sweep",
                               "--seed", "11", "--trials", "20000")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["theta", "analytic", "empirical", "stderr", "trials", "seed"]
        assert len(rows) == 9  # 5 to 45 degrees in 5-degree steps

    def test_env_seed_used_as_default(self, capsys, monkeypatch):
        monkeypatch.setenv("QSD_SEED", "777")
        code, out, _ = run_cli(capsys, "simulate", "--scenario", "trine",
                               "--trials", "1000")
        assert code == 0
        _, rows = parse_csv(out)
        assert rows[0][-1] == "777"

    def test_explicit_seed_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("QSD_SEED", "777")
        code, out, _ = run_cli(capsys, "simulate", "--scenario", "trine",
                               "--seed", "5", "--trials", "1000")
        assert code == 0
        _, rows = parse_csv(out)
        assert rows[0][-1] == "5"

    def test_degrees_flag_on_simulate(self, capsys):
        _, out_rad, _ = run_cli(capsys, "simulate", "--scenario", "idp",
                                "--theta", "0.5235987755982988",
                                "--seed", "2", "--trials", "5000")
        _, out_deg, _ = run_cli(capsys, "simulate", "--scenario", "idp",
                                "--theta", "30", "--degrees",
                                "--seed", "2", "--trials", "5000")
        assert out_rad == out_deg

    def test_unknown_scenario_rejected(self, capsys):
        code, _, _ = run_cli(capsys, "simulate", "--scenario", "bogus")
        assert code == 1


class TestPlumbing:
    def test_unknown_flag_exit_code(self, capsys):
        code, _, _ = run_cli(capsys, "helstrom", "--bogus", "1")
        assert code == 1

    def test_missing_subcommand(self, capsys):
        code, _, _ = run_cli(capsys)
        assert code == 1

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "table.csv"
        code, out, _ = run_cli(capsys, "bounds", "--m", "1", "--n", "2",
                               "--overlap", "0.5", "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("m,n,overlap")

    def test_floats_round_trip_through_text(self, capsys):
        _, out, _ = run_cli(capsys, "helstrom", "--theta", "0.333")
        _, rows = parse_csv(out)
        from qsd import TwoStateFamily, helstrom_bound

        bound = helstrom_bound(0.5, TwoStateFamily(0.333).overlap)
        assert float(rows[0][1]) == bound
