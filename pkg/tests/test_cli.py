"""End-to-end checks of the command line surface via main(argv)."""

import json

import pytest

from kopelcas.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestClassify:
    def test_triple_point_prints_the_pinned_equilibrium(self, capsys):
        rc, out, _ = run(capsys, "classify", "--u", "3", "--v", "3")
        assert rc == 0
        assert out == "OnePositiveTriple (2/3, 2/3)\n"

    def test_plain_class_has_no_suffix(self, capsys):
        rc, out, _ = run(capsys, "classify", "--u", "4", "--v", "4")
        assert rc == 0
        assert out == "ThreePositive\n"

    def test_decimal_parameters_parse_exactly(self, capsys):
        # 3.25 must become 13/4; a float detour would miss the window edge
        rc, out, _ = run(capsys, "classify", "--kind", "stable",
                         "--u", "3.25", "--v", "3.25")
        assert rc == 0
        assert out == "TwoStable\n"

    def test_json_variant(self, capsys):
        rc, out, _ = run(capsys, "classify", "--u", "3", "--v", "3", "--json")
        assert rc == 0
        doc = json.loads(out)
        assert doc == {"schema_version": 1, "kind": "count",
                       "u": "3", "v": "3", "class": "OnePositiveTriple"}

    def test_homogeneous_needs_speed(self, capsys):
        rc, _, err = run(capsys, "classify", "--kind", "homogeneous",
                         "--u", "4", "--v", "4")
        assert rc == 2
        assert "--a" in err

    def test_homogeneous_json_includes_speed(self, capsys):
        rc, out, _ = run(capsys, "classify", "--kind", "homogeneous",
                         "--u", "4", "--v", "4", "--a", "1/2", "--json")
        assert rc == 0
        assert json.loads(out)["a"] == "1/2"


class TestEquilibria:
    def test_full_speed_symmetric_case(self, capsys):
        rc, out, _ = run(capsys, "equilibria", "--u", "4", "--v", "4")
        assert rc == 0
        doc = json.loads(out)
        assert doc["schema_version"] == 1
        assert doc["params"] == {"u": "4", "v": "4", "a": "1", "b": "1"}
        assert len(doc["equilibria"]) == 4
        origin = doc["equilibria"][0]
        assert origin["x_interval"] == ["0", "0"]
        assert origin["positive"] is False
        positives = [e for e in doc["equilibria"] if e["positive"]]
        assert len(positives) == 3
        assert all(e["in_unit_square"] for e in doc["equilibria"])
        assert all(e["verdict"] == "unstable" for e in doc["equilibria"])

    def test_speeds_are_accepted(self, capsys):
        rc, out, _ = run(capsys, "equilibria", "--u", "2", "--v", "2",
                         "--a", "1/4", "--b", "3/4")
        assert rc == 0
        assert json.loads(out)["params"] == {"u": "2", "v": "2",
                                             "a": "1/4", "b": "3/4"}

    def test_domain_error_quotes_the_constraint(self, capsys):
        rc, _, err = run(capsys, "equilibria", "--u", "-1", "--v", "4")
        assert rc == 2
        assert "u > 0 and v > 0" in err

    def test_speed_domain_error(self, capsys):
        rc, _, err = run(capsys, "equilibria", "--u", "2", "--v", "2", "--a", "2")
        assert rc == 2
        assert "0 < a <= 1" in err


class TestStability:
    def test_asymmetric_window_point(self, capsys):
        rc, out, _ = run(capsys, "stability", "--u", "13/4", "--v", "13/4")
        assert rc == 0
        doc = json.loads(out)
        verdicts = [r["verdict"] for r in doc["reports"]]
        assert verdicts.count("stable") == 2
        stable = [r for r in doc["reports"] if r["verdict"] == "stable"]
        for rep in stable:
            assert rep["cd_signs"] == [1, 1, 1]
            assert max(rep["eig_moduli"]) < 1
        unstable = [r for r in doc["reports"] if r["verdict"] == "unstable"]
        for rep in unstable:
            assert max(rep["eig_moduli"]) > 1

    def test_float_diagnostics_are_plain_json_numbers(self, capsys):
        rc, out, _ = run(capsys, "stability", "--u", "4", "--v", "4")
        assert rc == 0
        for rep in json.loads(out)["reports"]:
            for key in ("trace", "det"):
                assert isinstance(rep[key], float)
            assert all(isinstance(m, float) for m in rep["eig_moduli"])
            assert all(isinstance(val, float) for val in rep["cd_values"])


class TestVerifyIdentities:
    def test_eleven_pass_lines(self, capsys):
        rc, out, _ = run(capsys, "verify-identities")
        assert rc == 0
        lines = out.strip().split("\n")
        assert len(lines) == 11
        assert all(line.startswith("PASS ") for line in lines)
        assert "PASS cubic-discriminant" in lines
        assert "PASS triangular-substitution" in lines

    def test_json_variant(self, capsys):
        rc, out, _ = run(capsys, "verify-identities", "--json")
        assert rc == 0
        doc = json.loads(out)
        assert doc["schema_version"] == 1
        assert doc["all_passed"] is True
        assert len(doc["identities"]) == 11
        assert all(entry["passed"] for entry in doc["identities"])
        # a passing entry carries no difference payload
        assert all("difference" not in entry for entry in doc["identities"])


class TestScan:
    def test_default_filename_and_summary(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        rc, out, _ = run(capsys, "scan", "--range", "2:4", "--resolution", "3")
        assert rc == 0
        assert (tmp_path / "scan_count_3.csv").exists()
        assert "scan_count_3.csv" in out
        assert "9 cells" in out
        assert "0 disagreements" in out

    def test_out_flag_and_json(self, capsys, tmp_path):
        target = tmp_path / "grid.json"
        rc, out, _ = run(capsys, "scan", "--kind", "stable", "--range", "3:7/2",
                         "--resolution", "3", "--json", "--out", str(target))
        assert rc == 0
        doc = json.loads(target.read_text(encoding="utf-8"))
        assert doc["kind"] == "stable"
        assert len(doc["cells"]) == 9

    def test_homogeneous_kind(self, capsys, tmp_path):
        target = tmp_path / "grid.csv"
        rc, out, _ = run(capsys, "scan", "--kind", "homogeneous",
                         "--range", "3:4", "--resolution", "2",
                         "--a", "1/2", "--out", str(target))
        assert rc == 0
        header = target.read_text(encoding="utf-8").split("\n", 1)[0]
        assert header.split(",")[4] == "a"

    def test_malformed_range(self, capsys):
        rc, _, err = run(capsys, "scan", "--range", "217")
        assert rc == 2
        assert "LO:HI" in err

    def test_homogeneous_without_speed(self, capsys):
        rc, _, err = run(capsys, "scan", "--kind", "homogeneous",
                         "--range", "3:4", "--resolution", "2")
        assert rc == 2
        assert "--a" in err


class TestSimulate:
    def test_deterministic_rows(self, capsys):
        rc, out, _ = run(capsys, "simulate", "--u", "4", "--v", "4",
                         "--x0", "0.5", "--y0", "0.5", "--steps", "2")
        assert rc == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,x,y"
        assert lines[1] == "0,0.5,0.5"
        # one full-speed step from the square's centre lands on (1, 1)
        assert lines[2] == "1,1.0,1.0"
        assert lines[3] == "2,0.0,0.0"

    def test_seed_reproduces_start(self, capsys):
        rc1, out1, _ = run(capsys, "simulate", "--u", "2", "--v", "2",
                           "--seed", "11", "--steps", "3")
        rc2, out2, _ = run(capsys, "simulate", "--u", "2", "--v", "2",
                           "--seed", "11", "--steps", "3")
        assert rc1 == rc2 == 0
        assert out1 == out2
        rc3, out3, _ = run(capsys, "simulate", "--u", "2", "--v", "2",
                           "--seed", "12", "--steps", "3")
        assert out3 != out1

    def test_writes_file(self, capsys, tmp_path):
        target = tmp_path / "traj.csv"
        rc, out, _ = run(capsys, "simulate", "--u", "2", "--v", "2",
                         "--x0", "0.25", "--y0", "0.25", "--steps", "5",
                         "--out", str(target))
        assert rc == 0
        assert out == ""
        body = target.read_text(encoding="utf-8")
        assert body.startswith("t,x,y\n0,0.25,0.25\n")
        assert len(body.strip().split("\n")) == 7

    def test_divergence_noted_on_stderr(self, capsys):
        rc, out, err = run(capsys, "simulate", "--u", "40", "--v", "40",
                           "--x0", "-0.5", "--y0", "-0.5", "--steps", "50")
        assert rc == 0
        assert "diverged" in err

    def test_negative_steps_rejected(self, capsys):
        rc, _, err = run(capsys, "simulate", "--u", "2", "--v", "2",
                         "--x0", "0.1", "--y0", "0.1", "--steps", "-1")
        assert rc == 2
        assert "nonnegative" in err


class TestUsageErrors:
    def test_missing_subcommand(self, capsys):
        assert run(capsys, )[0] == 2

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_bad_rational_literal(self, capsys):
        rc, _, err = run(capsys, "classify", "--u", "zebra", "--v", "4")
        assert rc == 2
        assert "zebra" in err

    def test_missing_required_parameter(self, capsys):
        assert run(capsys, "classify", "--u", "4")[0] == 2
