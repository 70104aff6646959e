import cmath
import json
import math

import pytest

from ar1quad import ModelParams, TransformPoint, ergodic_constants, roots, transform
from ar1quad.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_transform_alpha_zero(capsys):
    code, out, _ = run_cli(
        capsys, "transform", "--theta", "0.5", "--m", "0", "--x", "1", "--alpha", "0", "--t", "7"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["value_re"] == 1.0
    assert payload["value_im"] == 0.0
    assert payload["sigma_re"] is None
    assert payload["in_domain"] is True


def test_transform_horizon_zero_value(capsys):
    code, out, _ = run_cli(
        capsys, "transform", "--theta", "0.5", "--m", "1", "--x", "0.3",
        "--alpha", "-0.25", "--t", "0",
    )
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["value_re"] - math.exp(-0.25 * 0.09)) < 1e-15
    assert abs(payload["value_re"] - 0.977751) < 1e-6


def test_transform_out_of_domain_exits_2(capsys):
    code, out, _ = run_cli(
        capsys, "transform", "--theta", "0.5", "--m", "1", "--x", "0.3",
        "--alpha", "0.2", "--alpha-im", "0.0", "--t", "5",
    )
    assert code == 2
    assert json.loads(out) == {"error": "out_of_domain"}


def test_transform_output_round_trips_exactly(capsys):
    code, out, _ = run_cli(
        capsys, "transform", "--theta", "0.6", "--m", "1", "--x", "0.5",
        "--alpha", "-0.3", "--t", "11",
    )
    assert code == 0
    payload = json.loads(out)
    tv = transform(ModelParams(0.6, 1.0), TransformPoint(-0.3), 0.5, 11)
    assert payload["log_value_re"] == tv.log_value.real
    assert payload["value_re"] == tv.value.real
    assert payload["sigma_re"] == tv.sigma_t.real


def test_usage_error_exits_64(capsys):
    with pytest.raises(SystemExit) as info:
        main(["transform", "--theta", "0.5"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 64


def test_invalid_theta_exits_64(capsys):
    code, _, err = run_cli(
        capsys, "transform", "--theta", "1.5", "--x", "0", "--alpha", "-0.5", "--t", "1"
    )
    assert code == 64
    assert "theta" in err


def test_ergodic_reference_value(capsys):
    code, out, _ = run_cli(
        capsys, "ergodic", "--theta", "0.5", "--m", "0", "--x", "0", "--alpha", "-0.5"
    )
    assert code == 0
    payload = json.loads(out)
    lam_plus = roots(ModelParams(0.5), TransformPoint(-0.5)).lambda_plus
    assert abs(payload["Lambda_re"] - (-0.5 * cmath.log(lam_plus)).real) < 1e-15
    assert 0 < payload["rate"] < 1


def test_ergodic_alpha_near_zero(capsys):
    code, out, _ = run_cli(
        capsys, "ergodic", "--theta", "0.5", "--m", "0", "--x", "0", "--alpha", "-1e-9"
    )
    assert code == 0
    assert abs(json.loads(out)["Lambda_re"]) < 1e-6


def test_ergodic_rate_in_unit_interval(capsys):
    for alpha in ("-0.05", "-0.5", "-2"):
        code, out, _ = run_cli(
            capsys, "ergodic", "--theta", "0.8", "--m", "1", "--x", "0.2", "--alpha", alpha
        )
        assert code == 0
        assert 0 < json.loads(out)["rate"] < 1


def test_ergodic_out_of_domain_exits_2(capsys):
    code, out, _ = run_cli(
        capsys, "ergodic", "--theta", "0.5", "--m", "0", "--x", "0", "--alpha", "0.2"
    )
    assert code == 2
    assert json.loads(out) == {"error": "out_of_domain"}


def test_sweep_single_point_matches_transform(capsys):
    code, sweep_out, _ = run_cli(
        capsys, "sweep", "--theta", "0.6", "--m", "1", "--x", "0.5",
        "--alpha", "-0.3", "--t", "11",
    )
    assert code == 0
    row = json.loads(sweep_out)
    code, tr_out, _ = run_cli(
        capsys, "transform", "--theta", "0.6", "--m", "1", "--x", "0.5",
        "--alpha", "-0.3", "--t", "11",
    )
    single = json.loads(tr_out)
    assert row["log_L_re"] == single["log_value_re"]
    assert row["log_L_im"] == single["log_value_im"]
    assert row["error"] is None


def test_sweep_csv_round_trip_and_header(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--theta", "0.6", "--m", "1", "--x", "0.5",
        "--alpha=-0.3,-0.5", "--t", "1,5,9", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == (
        "alpha_re,alpha_im,t,log_L_re,log_L_im,normalized_re,"
        "normalized_im,Lambda_re,rate,error"
    )
    assert len(lines) == 1 + 2 * 3
    params = ModelParams(0.6, 1.0)
    for line in lines[1:]:
        cells = line.split(",")
        alpha = complex(float(cells[0]), float(cells[1]))
        t = int(cells[2])
        tv = transform(params, TransformPoint(alpha), 0.5, t)
        # 17 significant digits reproduce the doubles bit for bit
        assert float(cells[3]) == tv.log_value.real
        assert float(cells[7]) == ergodic_constants(params, TransformPoint(alpha), 0.5).lambda_of_alpha.real


def test_sweep_row_order_is_alpha_major(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--theta", "0.6", "--m", "0", "--x", "0",
        "--alpha=-0.5,-0.3", "--t", "2,1", "--format", "csv", "--threads", "4",
    )
    assert code == 0
    rows = [line.split(",")[:3] for line in out.strip().splitlines()[1:]]
    assert [(float(a), int(t)) for a, _, t in rows] == [
        (-0.5, 2), (-0.5, 1), (-0.3, 2), (-0.3, 1),
    ]


def test_sweep_t_range_syntax(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--theta", "0.6", "--m", "1", "--x", "0.5",
        "--alpha", "-0.3", "--t", "1:80", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 80
    erg = ergodic_constants(ModelParams(0.6, 1.0), TransformPoint(-0.3), 0.5)
    errors = [abs(float(line.split(",")[5]) - erg.f_check.real) for line in lines]
    # one-step ratio is asymptotic: rate^2 terms pollute small t
    for t, (prev, nxt) in enumerate(zip(errors, errors[1:]), start=1):
        if t >= 10 and prev > 1e-12:
            assert nxt <= prev * (erg.rate * 1.25)


def test_sweep_out_of_domain_row_best_effort(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--theta", "0.5", "--m", "0", "--x", "0",
        "--alpha=0.9,-0.5", "--t", "1", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1].endswith("out_of_domain")
    assert lines[2].endswith(",")  # healthy row, empty error cell


def test_sweep_accepts_alpha_zero_rows(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--theta", "0.5", "--m", "1", "--x", "0.3",
        "--alpha", "0", "--t", "4", "--format", "csv",
    )
    assert code == 0
    cells = out.strip().splitlines()[1].split(",")
    assert float(cells[3]) == 0.0  # log L
    assert float(cells[5]) == 1.0  # normalized
    assert float(cells[7]) == 0.0  # Lambda
    assert float(cells[8]) == 0.5  # rate -> |theta| in the alpha -> 0 limit


def test_commands_deterministic_given_flags(capsys):
    argv = ["sweep", "--theta", "0.6", "--m", "1", "--x", "0.5",
            "--alpha=-0.3,-0.7", "--t", "1:40", "--format", "csv"]
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *(argv + ["--threads", "4"]))
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_sweep_strict_exits_2(capsys):
    code, _, _ = run_cli(
        capsys, "sweep", "--theta", "0.5", "--m", "0", "--x", "0",
        "--alpha", "0.9", "--t", "1", "--strict",
    )
    assert code == 2


def test_verify_default_run_passes(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    assert "7/7 checks passed" in out
    assert "[FAIL]" not in out


def test_verify_smoke_run_passes(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--grid-size", "1", "--mc-samples", "20000"
    )
    assert code == 0
    assert "checks passed" in out
    assert "[FAIL]" not in out


def test_verify_impossible_tolerance_fails(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--grid-size", "1", "--tolerance", "1e-15",
        "--mc-samples", "20000",
    )
    assert code == 1
    assert "[FAIL]" in out
