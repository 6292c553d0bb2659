import csv
import io
import subprocess
import sys

import pytest

from raqr.cli import main
from raqr.errors import EmptyScenario, ScenarioError
from raqr.scenarios import (
    SCENARIOS,
    Scenario,
    apply_overrides,
    emit_plotdata,
    run_scenario,
)

FAST = ("snr-vs-density", "ratio-vs-cell", "sensitivity-vs-population",
        "validate-error", "opt-uy")


def _parse(doc):
    reader = csv.reader(io.StringIO(doc))
    header = next(reader)
    rows = list(reader)
    return header, rows


def test_unknown_scenario_rejected():
    with pytest.raises(ScenarioError, match="unknown scenario"):
        Scenario("snr-vs-everything")


@pytest.mark.parametrize("name", FAST)
def test_scenarios_emit_wellformed_csv(name):
    header, rows = _parse(run_scenario(Scenario(name)))
    assert len(header) >= 2
    assert len(rows) >= 3
    assert all(len(r) == len(header) for r in rows)
    for r in rows[:3]:
        [float(v) for v in r]


def test_snr_density_columns():
    header, rows = _parse(run_scenario(Scenario("snr-vs-density")))
    assert header == ["n0_per_m3", "snr_sql_db", "snr_psl_diod_db",
                      "snr_psl_bcod_db", "snr_total_diod_db",
                      "snr_total_bcod_db", "snr_bs_db", "snr_ue_db"]
    assert float(rows[0][0]) == pytest.approx(1e16)
    assert float(rows[-1][0]) == pytest.approx(9e16)


def test_localpower_axis_range():
    header, rows = _parse(run_scenario(Scenario("snr-vs-localpower")))
    assert float(rows[0][0]) == pytest.approx(30e-6, rel=1e-6)
    assert float(rows[-1][0]) == pytest.approx(300e-3, rel=1e-6)


def test_density_scenario_headline_column_difference():
    header, rows = _parse(run_scenario(Scenario("snr-vs-density")))
    at = {float(r[0]): r for r in rows}[5e16]
    psl_bcod = float(at[header.index("snr_psl_bcod_db")])
    bs = float(at[header.index("snr_bs_db")])
    assert psl_bcod - bs == pytest.approx(27.0, abs=1.5)


def test_population_scenario_low_fraction_inferior():
    header, rows = _parse(run_scenario(Scenario("ratio-vs-population")))
    first = rows[0]
    assert float(first[0]) == pytest.approx(2.5e-7, rel=1e-6)
    assert float(first[header.index("ratio0_sql_bs_db")]) < 0.0


def test_transfer_scenario_linear_then_nonlinear():
    header, rows = _parse(run_scenario(Scenario("validate-transfer")))
    ux = [float(r[0]) for r in rows]
    rms = [float(r[header.index("diod_exact_ac_rms_v")]) for r in rows]
    # large linear dynamic range: proportional response over two decades
    assert rms[20] / rms[0] == pytest.approx(ux[20] / ux[0], rel=1e-3)
    # the exact response departs from that line as the signal nears the LO
    final_gain = (rms[-1] / rms[0]) / (ux[-1] / ux[0])
    assert abs(final_gain - 1.0) > 0.02
    assert all(b > a for a, b in zip(rms, rms[1:]))


def test_rerun_is_byte_identical():
    for name in ("snr-vs-density", "validate-error"):
        a = run_scenario(Scenario(name, seed=7))
        b = run_scenario(Scenario(name, seed=7))
        assert a == b


def test_jobs_do_not_change_output():
    a = run_scenario(Scenario("ratio-vs-cell", jobs=1))
    b = run_scenario(Scenario("ratio-vs-cell", jobs=4))
    assert a == b


def test_overrides_change_output():
    base = run_scenario(Scenario("snr-vs-density"))
    bumped = run_scenario(Scenario("snr-vs-density",
                                   overrides={"d": "5 cm"}))
    assert base != bumped


def test_apply_overrides_replaces_and_appends():
    text = "d = 10 cm\nN0 = 4.89e10 cm^-3\n"
    out = apply_overrides(text, {"d": "5 cm", "Upsilon": "1 %"})
    assert "d = 5 cm" in out
    assert "Upsilon = 1 %" in out
    assert "d = 10 cm" not in out


def test_emit_plotdata(tmp_path):
    doc = run_scenario(Scenario("opt-uy"))
    paths = emit_plotdata(doc, str(tmp_path), "opt-uy")
    assert len(paths) == 2
    assert all("opt-uy__" in p and p.endswith(".dat") for p in paths)
    lines = open(paths[0]).read().splitlines()
    assert len(lines) >= 3
    assert len(lines[0].split()) == 2


def test_emit_plotdata_empty_rejected(tmp_path):
    with pytest.raises(EmptyScenario):
        emit_plotdata("x\n", str(tmp_path), "empty")


def test_cli_run_and_exit_codes(tmp_path):
    out = tmp_path / "density.csv"
    assert main(["run", "--scenario", "snr-vs-density",
                 "--out", str(out)]) == 0
    assert out.read_text().startswith("n0_per_m3,")

    # config error -> 2
    assert main(["run", "--scenario", "snr-vs-density",
                 "--set", "Upsilon=0"]) == 2
    assert main(["run", "--scenario", "snr-vs-density",
                 "--set", "bogus_key=1"]) == 2


def test_cli_scenario_error_exit_code(monkeypatch):
    import raqr.cli as cli_mod

    def boom(*a, **k):
        raise ScenarioError("synthetic failure")

    monkeypatch.setattr(cli_mod, "run_scenario", boom)
    assert main(["run", "--scenario", "snr-vs-density"]) == 3


def test_cli_validate_subprocess():
    res = subprocess.run(
        [sys.executable, "-m", "raqr.cli", "validate"],
        capture_output=True, text=True, timeout=300)
    assert res.returncode == 0
    assert "[pass]" in res.stdout
    assert "ordinary" in res.stdout and "angular" in res.stdout


def test_cli_unknown_scenario_argparse_exit():
    res = subprocess.run(
        [sys.executable, "-m", "raqr.cli", "run", "--scenario", "nope"],
        capture_output=True, text=True, timeout=60)
    assert res.returncode == 2


def test_all_scenario_names_registered():
    assert len(SCENARIOS) == 15
