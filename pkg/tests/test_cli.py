"""Command-line, canonical-report, and SVG-rendering tests.

scipy.special appears only as an oracle for the propagator table values.
"""

import json
import math

import numpy as np
import pytest

from lorentzqrf import cli, plots
from lorentzqrf import report as reporting


# ---------------------------------------------------------------------------
# canonical JSON


def test_canonical_json_sorts_and_formats():
    blob = reporting.canonical_json({"b": 1, "a": math.pi, "c": [True, None]})
    assert blob == '{"a":3.1415926535897931,"b":1,"c":[true,null]}'


def test_canonical_json_round_trips_17_digits():
    values = [math.pi, 1 / 3, 1e-300, 2.0**53 - 1.0, -math.e]
    blob = reporting.canonical_json(values)
    assert json.loads(blob) == values


def test_canonical_json_complex_and_numpy():
    blob = reporting.canonical_json(
        {"z": 1.5 - 2.0j, "arr": np.array([1.0, 2.0]), "n": np.int64(7)}
    )
    assert blob == '{"arr":[1,2],"n":7,"z":[1.5,-2]}'


def test_canonical_json_normalizes_negative_zero():
    assert reporting.canonical_json(-0.0) == "0"


def test_canonical_json_rejects_non_finite():
    with pytest.raises(ValueError):
        reporting.canonical_json({"x": math.inf})
    with pytest.raises(ValueError):
        reporting.canonical_json(math.nan)


def test_strip_timestamp_removes_only_timestamp():
    payload = reporting.build_report({"x": 1.0}, config={"k": 2})
    assert reporting.TIMESTAMP_FIELD in payload
    text = reporting.canonical_json(payload)
    stripped = reporting.strip_timestamp(text)
    assert stripped == '{"config":{"k":2},"x":1}'


def test_csv_lines_quoting_and_types():
    lines = reporting.csv_lines(
        [{"a": 0.5, "b": 'say "hi"', "c": True}, {"a": 2, "b": "x,y", "c": False}],
        ["a", "b", "c"],
    )
    assert lines == ['a,b,c', '0.5,"say ""hi""",true', '2,"x,y",false']


# ---------------------------------------------------------------------------
# SVG rendering


def test_line_chart_is_deterministic_and_wellformed():
    series = [("one", [0.0, 1.0, 2.0], [0.0, 1.0, 0.5])]
    a = plots.line_chart(series, title="demo")
    b = plots.line_chart(series, title="demo")
    assert a == b
    assert a.startswith('<?xml version="1.0"')
    assert a.rstrip().endswith("</svg>")
    assert "demo" in a and "polyline" in a


def test_empty_chart_renders_blank_panel_with_axes():
    a = plots.line_chart([], title="nothing here")
    assert "nothing here" in a
    assert '<rect' in a and '<line' in a  # frame and tick marks survive
    assert "polyline" not in a


def test_heatmap_resolution_cap():
    xs = np.linspace(0, 1, 3000)
    ts = np.linspace(0, 1, 3000)
    with pytest.raises(ValueError, match="resolution"):
        plots.support_heatmap(xs, ts, [("z", np.zeros((3000, 3000)))])


def test_heatmap_renders_layers_and_ridges():
    xs = np.linspace(-1, 1, 8)
    ts = np.linspace(0, 1, 6)
    z = np.exp(-(ts[:, None] ** 2) - xs[None, :] ** 2)
    svg = plots.support_heatmap(
        xs, ts, [("layer", z)], ridges=[("ridge", [-1.0, 1.0], [0.0, 1.0])]
    )
    assert svg.count("<rect") > 10  # density cells
    assert "stroke-dasharray" in svg  # ridge overlay


# ---------------------------------------------------------------------------
# CLI: run


def _read_report(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_run_default_time_dilation(tmp_path, capsys):
    code = cli.main(["run", "--scenario", "time-dilation", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "[PASS]" in out and "report:" in out
    payload = json.loads(_read_report(tmp_path / "report.json"))
    assert payload["scenario"] == "time-dilation"
    assert payload["config"]["w2"] == pytest.approx(math.log(2.0))
    assert reporting.TIMESTAMP_FIELD in payload


def test_run_spec_example_intervals(tmp_path):
    code = cli.main(
        [
            "run",
            "--scenario",
            "time-dilation",
            "--set",
            "dt=1",
            "--set",
            "w2=0.6931",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    payload = json.loads(_read_report(tmp_path / "report.json"))
    measured = sorted(b["measured"] for b in payload["branches"])
    assert measured[0] == pytest.approx(1.0, abs=1e-12)
    assert measured[1] == pytest.approx(1.25, abs=1e-4)


def test_run_unknown_scenario_is_config_error(tmp_path, capsys):
    code = cli.main(["run", "--scenario", "no-such", "--out", str(tmp_path)])
    assert code == 1
    assert "unknown scenario" in capsys.readouterr().err


def test_run_unknown_key_is_config_error(tmp_path, capsys):
    code = cli.main(
        [
            "run",
            "--scenario",
            "time-dilation",
            "--set",
            "bogus=1",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 1
    assert "unknown parameter" in capsys.readouterr().err


def test_run_bad_parameter_is_config_error(tmp_path, capsys):
    code = cli.main(
        [
            "run",
            "--scenario",
            "width-contraction",
            "--set",
            "sigma=-1",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_run_config_file_must_be_object(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    code = cli.main(
        [
            "run",
            "--scenario",
            "time-dilation",
            "--config",
            str(cfg),
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 1
    assert "JSON object" in capsys.readouterr().err


def test_run_missing_config_file(tmp_path, capsys):
    code = cli.main(
        [
            "run",
            "--scenario",
            "time-dilation",
            "--config",
            str(tmp_path / "absent.json"),
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 1


def test_run_config_file_and_override_merge(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"dt": 2.0, "w2": 0.5}')
    code = cli.main(
        [
            "run",
            "--scenario",
            "time-dilation",
            "--config",
            str(cfg),
            "--set",
            "w2=1.0",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    payload = json.loads(_read_report(tmp_path / "report.json"))
    assert payload["config"]["dt"] == 2.0
    assert payload["config"]["w2"] == 1.0  # --set beats the file
    measured = sorted(b["measured"] for b in payload["branches"])
    assert measured[1] == pytest.approx(2.0 * math.cosh(1.0), rel=1e-12)


def test_run_fit_failure_exits_2(tmp_path, capsys):
    code = cli.main(
        [
            "run",
            "--scenario",
            "time-dilation",
            "--set",
            "mode=narrow-gaussian",
            "--set",
            "sigma=0.5",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 2
    assert "fit failure" in capsys.readouterr().err


def test_run_reports_are_byte_identical_modulo_timestamp(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        code = cli.main(
            [
                "run",
                "--scenario",
                "width-contraction",
                "--out",
                str(out),
                "--csv",
                "--plot",
                "svg",
            ]
        )
        assert code == 0
    r1 = reporting.strip_timestamp(_read_report(out1 / "report.json"))
    r2 = reporting.strip_timestamp(_read_report(out2 / "report.json"))
    assert r1 == r2
    assert _read_report(out1 / "table.csv") == _read_report(out2 / "table.csv")
    assert _read_report(out1 / "plot.svg") == _read_report(out2 / "plot.svg")


def test_run_propagator_table_csv_matches_closed_forms(tmp_path):
    from scipy.special import hankel2, k0  # oracle

    code = cli.main(
        [
            "run",
            "--scenario",
            "propagator-table",
            "--out",
            str(tmp_path),
            "--csv",
        ]
    )
    assert code == 0
    lines = (tmp_path / "table.csv").read_text().splitlines()
    assert lines[0] == "dt,dx,re,im"
    rows = {}
    for line in lines[1:]:
        dt, dx, re, im = line.split(",")
        rows[(float(dt), float(dx))] = complex(float(re), float(im))
    want_t = -0.5j * math.pi * complex(hankel2(0, 1.0))
    assert abs(rows[(1.0, 0.0)] - want_t) / abs(want_t) < 1e-6
    want_s = float(k0(1.0))
    assert abs(rows[(0.0, 1.0)] - want_s) / want_s < 1e-6


def test_run_interference_scenario(tmp_path):
    code = cli.main(
        ["run", "--scenario", "nonrel-interference", "--out", str(tmp_path)]
    )
    assert code == 0
    payload = json.loads(_read_report(tmp_path / "report.json"))
    comp = payload["details"]["components"]
    assert comp["p_plus"] + comp["p_minus"] == pytest.approx(
        comp["total"], rel=1e-12
    )
    assert 0.99 < payload["details"]["value"] <= 1.0


def test_run_coordinate_transform_scenario(tmp_path):
    code = cli.main(
        ["run", "--scenario", "coordinate-transform", "--out", str(tmp_path)]
    )
    assert code == 0
    payload = json.loads(_read_report(tmp_path / "report.json"))
    for check in payload["branches"]:
        assert check["measured"] == pytest.approx(math.sqrt(3.0), abs=1e-12)
        assert check["pass"] is True


def test_run_slice_scenario_with_plot(tmp_path):
    code = cli.main(
        [
            "run",
            "--scenario",
            "superposed-slice",
            "--out",
            str(tmp_path),
            "--plot",
            "svg",
        ]
    )
    assert code == 0
    svg = (tmp_path / "plot.svg").read_text()
    assert svg.startswith('<?xml') and "stroke-dasharray" in svg


def test_run_boosts_scalar_omega_coerced(tmp_path):
    code = cli.main(
        [
            "run",
            "--scenario",
            "superposition-of-boosts",
            "--set",
            "omegas=0.5",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    payload = json.loads(_read_report(tmp_path / "report.json"))
    assert len(payload["branches"]) == 2  # peak + velocity checks of one branch


# ---------------------------------------------------------------------------
# CLI: selftest


def test_selftest_runs_are_byte_identical_modulo_timestamp(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        code = cli.main(["selftest", "--out", str(out)])
        assert code == 0
    printed = capsys.readouterr().out
    assert printed.count("[PASS]") == 22  # 11 criteria x 2 invocations
    b1 = _read_report(out1 / "selftest-report.json")
    b2 = _read_report(out2 / "selftest-report.json")
    assert reporting.strip_timestamp(b1) == reporting.strip_timestamp(b2)
    payload = json.loads(b1)
    assert payload["pass"] is True
    assert [c["number"] for c in payload["criteria"]] == list(range(1, 12))
