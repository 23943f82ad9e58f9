import json
import math

import numpy as np
import pytest

from aboutface.cli import main

SQ37 = math.sqrt(3.0 / 7.0)
SQ52 = math.sqrt(0.52)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMonotonesCommand:
    def test_running_example(self, capsys):
        code, out, _ = run(capsys, ["monotones", "0.6", "0.4", "0"])
        assert code == 0
        record = json.loads(out)
        assert record["schema_version"] == "1"
        assert record["command"] == "monotones"
        profile = record["payload"]["profile"]
        expected = {"Ax": 0.4, "Bx": 0.5, "Ay": 0.6, "By": SQ37, "Az": SQ52, "Bz": SQ52}
        for key, value in expected.items():
            assert profile[key] == pytest.approx(value, abs=1e-12)
        assert record["payload"]["constraints"]["ok"] is True

    def test_all_zero_state(self, capsys):
        code, out, _ = run(capsys, ["monotones", "0", "0", "0"])
        assert code == 0
        assert all(v == 0.0 for v in json.loads(out)["payload"]["profile"].values())

    def test_invalid_state_exits_2(self, capsys):
        code, out, err = run(capsys, ["monotones", "1", "0.1", "0"])
        assert code == 2
        assert out == ""
        assert "error" in json.loads(err.strip())

    def test_numbers_reparse_bit_identical(self, capsys):
        _, out, _ = run(capsys, ["monotones", "0.6", "0.4", "0"])
        profile = json.loads(out)["payload"]["profile"]
        from aboutface import make_state, monotone_profile

        exact = monotone_profile(make_state(0.6, 0.4, 0))
        assert profile["By"] == exact.by  # bit-identical after JSON round trip
        assert profile["Az"] == exact.az


class TestConvertCommand:
    def test_convertible(self, capsys):
        code, out, _ = run(capsys, ["convert", "0", "0.8", "0", "--", "0.3", "0.5", "0", "--axis", "x"])
        assert code == 0
        payload = json.loads(out)["payload"]
        assert payload["decision"] == "convertible"

    def test_not_convertible_reason(self, capsys):
        code, out, _ = run(capsys, ["convert", "0.9", "0.1", "0", "--", "0", "0.2", "0", "--axis", "x"])
        assert code == 0
        payload = json.loads(out)["payload"]
        assert payload["decision"] == "not-convertible"
        assert payload["reason"] == "A-violated"

    def test_equivalent_pair_is_convertible(self, capsys):
        code, out, _ = run(capsys, ["convert", "0", "0.5", "0", "--", "0", "0.5", "0"])
        assert json.loads(out)["payload"]["decision"] == "convertible"
        assert code == 0

    def test_oracle_flag_attaches_search(self, capsys):
        code, out, _ = run(
            capsys, ["convert", "0", "0.8", "0", "--", "0.3", "0.5", "0", "--oracle"]
        )
        assert code == 0
        oracle = json.loads(out)["payload"]["oracle"]
        assert oracle["feasible"] is True
        assert oracle["best_distance"] <= 1e-3

    def test_invalid_state_exits_2(self, capsys):
        code, _, _ = run(capsys, ["convert", "2", "0", "0", "--", "0", "0", "0"])
        assert code == 2


class TestOracleCommand:
    def test_reports_channel(self, capsys):
        code, out, _ = run(capsys, ["oracle", "0", "0.8", "0", "0.3", "0.5", "0"])
        assert code == 0
        payload = json.loads(out)["payload"]
        assert payload["feasible"] is True
        weights = [w for _, _, w in payload["channel"]["mixture"]]
        assert sum(weights) == pytest.approx(1.0, abs=1e-12)


class TestRegionCommand:
    def test_cross_section_boundary_labels(self, capsys):
        code, out, _ = run(capsys, ["region", "--cross-section", "Ax=0.5", "--grid", "50"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# aboutface schema_version=1")
        header = lines[1].split(",")
        assert header == ["Ay", "Az", "member", "boundary"]
        labels = {line.split(",")[3] for line in lines[2:]}
        assert {"region", "bottom-left", "bottom-right", "top-left", "top-right"} <= labels

    def test_subset_sample_all_ok(self, capsys):
        code, out, _ = run(
            capsys, ["region", "--subset", "Bx,By,Bz", "--samples", "500", "--seed", "1"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1].split(",") == ["Bx", "By", "Bz", "ok"]
        assert all(line.split(",")[3] == "1" for line in lines[2:])

    def test_closure_section_through_region(self, capsys):
        code, out, _ = run(
            capsys, ["region", "--closure", "0.6,0.4,0", "--axis", "x", "--grid", "30"]
        )
        assert code == 0
        assert "ellipse" in out

    def test_requires_exactly_one_mode(self, capsys):
        code, _, _ = run(capsys, ["region"])
        assert code == 2
        code, _, _ = run(capsys, ["region", "--subset", "Ax", "--closure", "0,0,0"])
        assert code == 2

    def test_unknown_subset_exits_2(self, capsys):
        code, _, _ = run(capsys, ["region", "--subset", "Qx,Ay"])
        assert code == 2

    def test_csv_values_reparse_losslessly(self, capsys):
        _, out, _ = run(capsys, ["region", "--subset", "Ay,Bz", "--samples", "50", "--seed", "9"])
        lines = out.strip().splitlines()[2:]
        values = np.array([[float(p) for p in line.split(",")[:2]] for line in lines])
        from aboutface import SamplerConfig, sample_joint_region

        sample = sample_joint_region(("Ay", "Bz"), 50, SamplerConfig("uniform-ball", seed=9))
        assert np.array_equal(values, sample.values)


class TestClosureCommand:
    def test_emits_rectangle_and_ellipse(self, capsys):
        code, out, _ = run(capsys, ["closure", "0.6", "0.4", "0", "--grid", "21"])
        assert code == 0
        assert "rectangle-top" in out and "ellipse" in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, ["closure", "0.6", "0.4", "0", "--grid", "11", "--format", "json"])
        assert code == 0
        payload = json.loads(out)["payload"]
        assert payload["header"] == ["s_axis", "s_perp", "member", "boundary"]


class TestVerifyCommand:
    def test_unknown_suite_exits_2(self, capsys):
        code, _, _ = run(capsys, ["verify", "--suite", "unknown"])
        assert code == 2

    def test_small_equalities_suite_passes(self, capsys):
        code, out, err = run(capsys, ["verify", "--suite", "equalities", "--n", "2000", "--seed", "1"])
        assert code == 0
        payload = json.loads(out)["payload"]
        assert payload["passed"] is True
        assert "[PASS]" in err

    def test_witness_suite(self, capsys):
        code, out, _ = run(capsys, ["verify", "--suite", "witness"])
        assert code == 0
        assert json.loads(out)["payload"]["passed"] is True

    def test_deterministic_output(self, capsys):
        _, out1, _ = run(capsys, ["verify", "--suite", "pure-tags", "--n", "300", "--seed", "5"])
        _, out2, _ = run(capsys, ["verify", "--suite", "pure-tags", "--n", "300", "--seed", "5"])
        assert out1 == out2

    def test_failing_suite_exits_1(self, capsys, monkeypatch):
        from aboutface import cli
        from aboutface.verify import CheckResult, SuiteReport

        def broken_suite(**kwargs):
            return SuiteReport("broken", (CheckResult("forced failure", False, 1.0),))

        monkeypatch.setitem(cli.SUITES, "broken", broken_suite)
        code, out, err = run(capsys, ["verify", "--suite", "broken"])
        assert code == 1
        assert json.loads(out)["payload"]["passed"] is False
        assert "[FAIL]" in err
