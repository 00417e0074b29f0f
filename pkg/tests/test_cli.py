"""Command-line behavior: exit codes, determinism, replay, config handling."""

import math

import pytest

from besselstruve import ClassParams, DixitPalParams, SignConvention, \
    NormalizedSeries, write_series
from besselstruve.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_exponential_fixture(self, capsys):
        code, out, _ = run(capsys, "eval", "--nu", "-0.5", "--z", "1")
        assert code == 0
        assert "2.718281828458" in out  # S(1) ~ e within the tail bound

    def test_half_order_fixture(self, capsys):
        code, out, _ = run(capsys, "eval", "--nu", "0.5", "--z", "1")
        assert code == 0
        assert "1.718281828458" in out
        s1_line = [l for l in out.splitlines() if l.startswith("S'(1)")][0]
        assert float(s1_line.split("=")[1]) == pytest.approx(1.0, abs=1e-12)

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run(capsys, "eval", "--nu", "-1.5", "--z", "0")
        assert code == 2
        assert "nu" in err

    def test_bad_point_exit_code(self, capsys):
        code, _, _ = run(capsys, "eval", "--nu", "1", "--z", "zebra")
        assert code == 2


class TestCheck:
    def test_starlike_fails_at_half(self, capsys):
        code, out, _ = run(capsys, "check", "starlike", "--nu", "0.5",
                           "--alpha", "0")
        assert code == 1
        assert f"lhs       = {math.e:.17g}"[:24] in out
        assert "holds     : false" in out

    def test_t_holds_at_large_order(self, capsys):
        code, out, _ = run(capsys, "check", "t", "--nu", "25",
                           "--lambda", "0.5", "--alpha", "0.5")
        assert code == 0
        assert "holds     : true" in out

    def test_stated_form_matches_proof_at_lambda_zero(self, capsys):
        _, out_a, _ = run(capsys, "check", "t", "--nu", "3", "--alpha", "0.2",
                          "--lambda", "0", "--form", "proof")
        _, out_b, _ = run(capsys, "check", "t", "--nu", "3", "--alpha", "0.2",
                          "--lambda", "0", "--form", "stated")
        pick = lambda text, key: [l for l in text.splitlines()
                                  if l.startswith(key)]
        for key in ("lhs", "rhs", "margin"):
            assert pick(out_a, key) == pick(out_b, key)

    def test_parameter_errors(self, capsys):
        assert run(capsys, "check", "t", "--nu", "1", "--alpha", "1.5")[0] == 2
        assert run(capsys, "check", "jnu", "--nu", "1")[0] == 2
        assert run(capsys, "check", "jnu", "--nu", "1", "--A", "0.5",
                   "--B", "0.5", "--tau-abs", "1")[0] == 2
        assert run(capsys, "check", "t")[0] == 2  # no --nu, no series

    def test_jnu_roundtrip(self, capsys):
        code, out, _ = run(capsys, "check", "jnu", "--nu", "6", "--A", "0.5",
                           "--B", "-0.5", "--tau-abs", "0.8")
        assert code in (0, 1)
        assert "margin" in out


class TestSeriesFileCheck:
    def test_holds_fails_inconclusive(self, tmp_path, capsys):
        # single-term series: sum_T = (2 - alpha) b vs 1 - alpha
        path = tmp_path / "f.txt"
        write_series(path, NormalizedSeries((0.2,), SignConvention.NEGATIVE))
        code, out, _ = run(capsys, "check", "t", "--series-file", str(path))
        assert code == 0 and "outcome   : holds" in out

        write_series(path, NormalizedSeries((0.8,), SignConvention.NEGATIVE))
        code, out, _ = run(capsys, "check", "t", "--series-file", str(path))
        assert code == 1 and "outcome   : fails" in out

        write_series(path, NormalizedSeries((0.4,), tail_bound=0.3,
                                            tail_ratio=0.5))
        code, out, _ = run(capsys, "check", "t", "--series-file", str(path))
        assert code == 3 and "outcome   : inconclusive" in out

    def test_convex_type_uses_l_weights(self, tmp_path, capsys):
        # same coefficient: holds under T weights, fails under L weights
        path = tmp_path / "f.txt"
        write_series(path, NormalizedSeries((0.4,), SignConvention.NEGATIVE))
        assert run(capsys, "check", "t", "--series-file", str(path))[0] == 0
        assert run(capsys, "check", "l", "--series-file", str(path))[0] == 1

    def test_rejects_operator_conditions(self, tmp_path, capsys):
        path = tmp_path / "f.txt"
        write_series(path, NormalizedSeries((0.1,)))
        assert run(capsys, "check", "qnu", "--series-file", str(path))[0] == 2


class TestScan:
    def test_grid_cardinality(self, tmp_path, capsys):
        out_path = tmp_path / "grid.csv"
        code, _, _ = run(capsys, "scan", "t", "--nu", "1:10:10",
                         "--alpha", "0:0.9:10", "--lambda", "0.5",
                         "--output", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert len(lines) == 101
        assert lines[0] == "condition,form,nu,lambda,alpha,lhs,rhs,margin,holds"

    def test_byte_identical_reruns(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ("scan", "starlike", "--nu", "0.5:20:25", "--alpha", "0:0.5:3")
        assert run(capsys, *args, "--output", str(a))[0] == 0
        assert run(capsys, *args, "--output", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_holds_flips_exactly_once(self, tmp_path, capsys):
        out_path = tmp_path / "flip.csv"
        run(capsys, "scan", "starlike", "--nu", "0.5:20:40", "--alpha", "0",
            "--output", str(out_path))
        holds = [line.rsplit(",", 1)[1]
                 for line in out_path.read_text().splitlines()[1:]]
        flips = sum(1 for a, b in zip(holds, holds[1:]) if a != b)
        assert flips == 1
        assert holds[0] == "false" and holds[-1] == "true"

    def test_rows_replay_through_check(self, tmp_path, capsys):
        out_path = tmp_path / "replay.csv"
        run(capsys, "scan", "t", "--nu", "1:6:4", "--alpha", "0:0.8:3",
            "--lambda", "0:0.9:3", "--output", str(out_path))
        rows = [line.split(",")
                for line in out_path.read_text().splitlines()[1:]]
        for cond, form, nu, lam, alpha, lhs, rhs, margin, holds in rows[::5]:
            code, out, _ = run(capsys, "check", cond, "--nu", nu,
                               "--lambda", lam, "--alpha", alpha,
                               "--form", form)
            assert (code == 0) == (holds == "true")
            assert f"lhs       = {lhs}\n" in out
            assert f"rhs       = {rhs}\n" in out
            assert f"margin    = {margin}\n" in out

    def test_starlike_rejects_nonzero_lambda(self, tmp_path, capsys):
        code, _, err = run(capsys, "scan", "starlike", "--nu", "1:2:2",
                           "--lambda", "0.5",
                           "--output", str(tmp_path / "x.csv"))
        assert code == 2

    def test_no_partial_file_on_error(self, tmp_path, capsys):
        out_path = tmp_path / "partial.csv"
        code, _, _ = run(capsys, "scan", "t", "--nu", "bad-range",
                         "--output", str(out_path))
        assert code == 2
        assert not out_path.exists()


class TestCritical:
    def test_golden_fixture(self, capsys):
        code, out, _ = run(capsys, "critical", "starlike", "--alpha", "0",
                           "--bracket", "0.6:20")
        assert code == 0
        line = [l for l in out.splitlines() if l.startswith("nu*")][0]
        nu_star = float(line.split("=")[1])
        assert abs(nu_star - 2.0381807051618718) <= 1e-8

    def test_bad_bracket_names_margins(self, capsys):
        code, _, err = run(capsys, "critical", "starlike", "--alpha", "0",
                           "--bracket", "5:20")
        assert code == 2
        assert "margin(5.0)" in err and "margin(20.0)" in err

    def test_alpha_ordering(self, capsys):
        def nu_star(alpha):
            _, out, _ = run(capsys, "critical", "starlike", "--alpha", alpha,
                            "--bracket", "0.6:30")
            return float([l for l in out.splitlines()
                          if l.startswith("nu*")][0].split("=")[1])
        assert nu_star("0.5") > nu_star("0")


class TestVerify:
    def test_moments_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "moments")
        assert code == 0
        assert "PASS" in out and "FAIL" not in out

    def test_suite_selection_dispatches(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "ode")
        assert code == 0
        check_lines = [l for l in out.splitlines() if l.startswith("PASS")]
        assert check_lines
        assert all("ode residual" in l for l in check_lines)

    def test_unknown_suite_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2


class TestConfig:
    def test_config_supplies_default(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("# defaults\ntol = 1e-10\n")
        _, out, _ = run(capsys, "eval", "--nu", "1", "--z", "0.5",
                        "--config", str(cfg))
        assert "tol = 1e-10" in out

    def test_flag_overrides_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("tol = 1e-10\n")
        _, out, _ = run(capsys, "eval", "--nu", "1", "--z", "0.5",
                        "--config", str(cfg), "--tol", "1e-8")
        assert "tol = 1e-08" in out

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("volume = 11\n")
        code, _, _ = run(capsys, "eval", "--nu", "1", "--z", "0",
                         "--config", str(cfg))
        assert code == 2

    def test_missing_config_rejected(self, capsys):
        code, _, _ = run(capsys, "eval", "--nu", "1", "--z", "0",
                         "--config", "/nonexistent/cfg")
        assert code == 2


class TestParser:
    def test_help_available_for_each_subcommand(self, capsys):
        for sub in ("eval", "check", "scan", "critical", "verify"):
            with pytest.raises(SystemExit) as exc:
                main([sub, "--help"])
            assert exc.value.code == 0
            assert capsys.readouterr().out

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
