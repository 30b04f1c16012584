import json
import math

from click.testing import CliRunner

from kronstab import __version__
from kronstab.cli import main

PI = math.pi
ACOS_2_3 = 0.8410686705679303


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def payload_of(result) -> dict:
    env = json.loads(result.output)
    assert env["schema_version"] == 1
    assert env["version"] == __version__
    assert env["timing_seconds"] >= 0.0
    return env


def test_version():
    result = invoke("--version")
    assert result.exit_code == 0
    assert __version__ in result.output


def test_norm_json_envelope():
    result = invoke("norm", "--l", "3", "--epsilon", "0.5")
    assert result.exit_code == 0
    env = payload_of(result)
    assert env["command"] == "norm"
    assert env["config"]["l"] == 3
    payload = env["payload"]
    assert payload["kind"] == "ClosedForm"
    row = dict(zip(payload["columns"], payload["rows"][0]))
    assert abs(row["value"] - ACOS_2_3) < 1e-12
    assert abs(row["cap"] - 0.5 * PI) < 1e-15
    assert row["witness_x"] == 1.0


def test_norm_csv():
    result = invoke("norm", "--l", "4", "--format", "csv")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].split(",")[0] == "l"
    row = lines[1].split(",")
    assert row[0] == "4"
    assert abs(float(row[2]) - PI / 3) < 1e-12
    # floats are rendered with 15 significant digits
    assert len(row[2].replace(".", "").lstrip("0")) >= 14


def test_norm_numeric_cross_check():
    result = invoke("norm", "--l", "3", "--numeric")
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    assert payload["numeric_abs_err"] < 1e-9


def test_norm_usage_errors():
    assert invoke("norm", "--l", "0").exit_code == 2
    assert invoke("norm", "--l", "3", "--epsilon", "1.5").exit_code == 2
    assert invoke("norm", "--l", "3", "--epsilon", "0").exit_code == 2


def test_phases_rows_and_scalars():
    result = invoke("phases", "--l", "3", "--x", "1.0", "--phase-gap", "0.5", "--cutoff", "4")
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    assert payload["class"] == "InZ"
    assert len(payload["rows"]) == 2 * 4 + 1
    assert payload["truncation"] == 4
    assert abs(payload["volume"] - ACOS_2_3) < 1e-12
    assert abs((payload["limit_v"] - payload["limit_u"]) - payload["volume"]) < 1e-12
    assert payload["interval_lo"] < payload["interval_hi"]
    # rotation 0 here, so stored and absolute angles agree
    for _, stored, absolute in payload["rows"]:
        assert abs(stored - absolute) < 1e-12


def test_phases_outside():
    result = invoke("phases", "--l", "3", "--phase-gap", "1.5")
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    assert payload["class"] == "Outside"
    assert payload["volume"] == 0.0
    assert "limit_u" not in payload
    assert len(payload["rows"]) <= 2
    assert invoke("phases", "--l", "3", "--phase-gap", "2.5").exit_code == 2


def test_sweep_norm():
    result = invoke(
        "sweep-norm", "--l-min", "3", "--l-max", "6", "--epsilon", "0.3", "--epsilon", "0.5"
    )
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    assert len(payload["rows"]) == 8
    by_key = {(r[0], r[1]): r[2] for r in payload["rows"]}
    assert abs(by_key[(4, 0.5)] - PI / 3) < 1e-12
    assert all(r[4] > 0 for r in payload["rows"])  # cap gap stays positive
    assert invoke("sweep-norm", "--l-min", "5", "--l-max", "3").exit_code == 2


def test_sweep_fd():
    result = invoke("sweep-fd", "--l", "3", "--u-min", "-2", "--u-max", "2", "--samples", "5")
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    assert abs(payload["delta"] - math.log(1.5)) < 1e-15
    assert len(payload["rows"]) == 5
    rows = {u: v for u, v in payload["rows"]}
    assert rows[0.0] == 0.0  # flat bottom of the strip picture
    assert abs(rows[2.0] - math.acos(math.exp(math.log(1.5) - 2.0))) < 1e-12
    assert abs(rows[-2.0] - rows[2.0]) < 1e-15


def test_sum_command():
    result = invoke(
        "sum", "--levels", "3,3", "--epsilon", "0.5", "--samples", "50", "--seed", "3"
    )
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    row = dict(zip(payload["columns"], payload["rows"][0]))
    assert row["levels"] == "3+3"
    assert row["numeric"] <= row["upper"] + 1e-9
    assert row["upper"] < row["cap"]
    assert abs(row["max_single"] - ACOS_2_3) < 1e-12
    assert len(payload["config"]) == 2
    assert payload["m_constant"] > 1.0
    assert invoke("sum", "--levels", "3;3").exit_code == 2
    assert invoke("sum", "--levels", ",").exit_code == 2


def test_roots_null_slope():
    result = invoke("roots", "--l", "3", "--i-min", "0", "--i-max", "2")
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    rows = payload["rows"]
    assert [r[0] for r in rows] == [0, 1, 2]
    assert rows[0][1:3] == [1, 0] and rows[0][3] is None
    assert rows[0][4] == "backward" and rows[1][4] == "forward"
    assert payload["slope_lo"] < 1.0 < payload["slope_hi"]

    csv = invoke("roots", "--l", "3", "--i-min", "0", "--i-max", "2", "--format", "csv")
    lines = csv.output.strip().splitlines()
    assert len(lines) == 4
    assert lines[1] == "0,1,0,,backward"  # empty slope cell for (1, 0)


def test_reduce_command():
    result = invoke("reduce", "--l", "3", "--z", "2+0.1i")
    assert result.exit_code == 0
    row = dict(
        zip(
            payload_of(result)["payload"]["columns"],
            payload_of(result)["payload"]["rows"][0],
        )
    )
    assert row["exponent"] == -1
    assert abs(row["reduced_re"] - 100.0 / 101.0) < 1e-12
    assert abs(row["reduced_im"] - 10.0 / 101.0) < 1e-12
    assert invoke("reduce", "--l", "3", "--z", "nonsense").exit_code == 2
    assert invoke("reduce", "--l", "3", "--z", "1-2i").exit_code == 2
    stuck = invoke("reduce", "--l", "3", "--z", "2.6154+0.0769i", "--max-iter", "1")
    assert stuck.exit_code == 2
    assert "max-iter" in stuck.output


def test_config_file_merge(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"epsilon": 0.3, "phase-gap": 0.25}))
    merged = invoke("norm", "--l", "3", "--config", str(cfg))
    assert merged.exit_code == 0
    env = payload_of(merged)
    assert env["config"]["epsilon"] == 0.3
    # explicit flags beat the config file
    explicit = invoke("norm", "--l", "3", "--epsilon", "0.5", "--config", str(cfg))
    assert payload_of(explicit)["config"]["epsilon"] == 0.5
    # dashed keys map onto option names
    phases = invoke("phases", "--l", "3", "--config", str(cfg))
    assert payload_of(phases)["config"]["phase_gap"] == 0.25
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert invoke("norm", "--l", "3", "--config", str(bad)).exit_code == 2


def test_out_file(tmp_path):
    target = tmp_path / "norm.json"
    result = invoke("norm", "--l", "3", "--out", str(target))
    assert result.exit_code == 0
    assert result.output == ""
    env = json.loads(target.read_text())
    assert env["command"] == "norm"


def test_oracle_compare():
    result = invoke("oracle-compare", "--l", "3", "--bound", "300")
    assert result.exit_code == 0
    payload = payload_of(result)["payload"]
    row = dict(zip(payload["columns"], payload["rows"][0]))
    assert row["abs_err"] < 0.1
    assert row["ladder_max_err"] < 1e-10
    assert row["skipped"] == 0
    assert row["max_gap_cloud"] >= row["max_gap_exact"] - 1e-12
    assert invoke("oracle-compare", "--l", "3", "--phase-gap", "1.2").exit_code == 2
