"""Scenario runner: reproduces the validation, optimization, SNR, ratio and
sensitivity studies as CSV sweeps plus plot-ready .dat files.

All CSV output is RFC-4180, one header row, 9-significant-digit values,
byte-stable across runs for a fixed seed and configuration.  dB columns
are suffixed ``_db``; linear columns carry their unit in the header.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import config as cfg
from .chain import with_overrides
from .constants import FWHM_PER_RADIUS, TWO_PI
from .errors import ConfigError, EmptyScenario, ScenarioError
from .frontend import default_rx_amplitude
from .optics import beat_time_grid
from .optimizer import SweepSpec, alternate, reference_sweep_specs, sweep_1d
from .performance import (
    ClassicalRxConfig,
    classical_snr,
    h_sq_ps_from_amplitude,
    sensitivity,
    snr_psl,
    snr_sql,
    snr_total,
)
from .photodetection import (
    bcod_exact,
    bcod_linearized,
    diod_exact,
    diod_linearized,
    normalized_approx_error,
)

SCENARIOS = (
    "validate-waveform", "validate-error", "validate-transfer",
    "opt-uy", "opt-p0", "opt-detunings",
    "snr-vs-density", "snr-vs-localpower", "snr-vs-frequency",
    "ratio-vs-cell", "ratio-vs-fwhm", "ratio-vs-population",
    "sensitivity-vs-cell", "sensitivity-vs-fwhm", "sensitivity-vs-population",
)


@dataclass(frozen=True)
class Scenario:
    """A named study with optional config-key overrides."""

    name: str
    overrides: dict = field(default_factory=dict)
    output_path: str | None = None
    seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.name not in SCENARIOS:
            raise ScenarioError(f"unknown scenario {self.name!r}; "
                                f"known: {', '.join(SCENARIOS)}")


def _fmt(x) -> str:
    return f"{float(x):.9g}"


def _csv(header: list[str], rows: list[list[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def apply_overrides(text: str, overrides: dict) -> str:
    """Replace or append key=value lines of a config document."""
    lines = text.splitlines()
    seen = set()
    out = []
    for line in lines:
        stripped = line.split("#", 1)[0].strip()
        key = stripped.partition("=")[0].strip() if "=" in stripped else None
        if key in overrides:
            out.append(f"{key} = {overrides[key]}")
            seen.add(key)
        else:
            out.append(line)
    for key, value in overrides.items():
        if key not in seen:
            out.append(f"{key} = {value}")
    return "\n".join(out) + "\n"


def _load(scenario: Scenario, config_text: str | None):
    text = config_text if config_text is not None else cfg.table1_text()
    text = apply_overrides(text, scenario.overrides)
    vapor, laser, chain = cfg.load_config(text)
    chain_ue = replace(chain,
                       antenna_gain_Gant=10 ** (cfg.CLASSICAL_UE["G_ant"] / 10),
                       noise_figure_F=10 ** (cfg.CLASSICAL_UE["NF"] / 10))
    return vapor, laser, chain, chain_ue


def _scheme_detunings(laser, transition="47D5/2-48P3/2", user_set=False):
    """Per-scheme jointly optimized detunings, unless the user pinned them."""
    if user_set:
        trip = (laser.detuning_p, laser.detuning_c, laser.detuning_l)
        return {"DIOD": trip, "BCOD": trip}
    _, _, _, _, dps, dcs, dls = cfg.TABLE2[transition]
    out = {}
    for i, scheme in enumerate(cfg.SCHEMES):
        out[scheme] = (dps[i] * 1e6 * TWO_PI, dcs[i] * 1e6 * TWO_PI,
                       dls[i] * 1e6 * TWO_PI)
    return out


def _with_detunings(laser, trip):
    return with_overrides(laser, detuning_p=trip[0], detuning_c=trip[1],
                          detuning_l=trip[2])


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def run_scenario(scenario: Scenario, config_text: str | None = None) -> str:
    """Execute one scenario and return its CSV document."""
    vapor, laser, chain, chain_ue = _load(scenario, config_text)
    user_det = any(k.startswith("Delta_") for k in scenario.overrides)
    dets = _scheme_detunings(laser, user_set=user_det)
    ux = default_rx_amplitude()
    h_sq_ps = h_sq_ps_from_amplitude(ux)
    eta1 = chain.quantum_efficiency_eta1
    g = chain.lna_gain_G
    name = scenario.name
    try:
        if name == "validate-waveform":
            t = beat_time_grid(laser.offset_frequency_fdelta)
            t = t[t < 0.02e-3]
            _, dl_ = diod_linearized(vapor, laser, ux, t, eta1, g)
            de = diod_exact(vapor, laser, ux, t, eta1, g)
            _, bl = bcod_linearized(vapor, laser, ux, t, eta1, g)
            be = bcod_exact(vapor, laser, ux, t, eta1, g)
            header = ["t_s", "diod_exact_ac_v", "diod_linear_ac_v",
                      "bcod_exact_ac_v", "bcod_linear_ac_v"]
            rows = [[t[i], de.ac_waveform[i], dl_.ac_waveform[i],
                     be.ac_waveform[i], bl.ac_waveform[i]]
                    for i in range(len(t))]

        elif name == "validate-error":
            ratios = np.logspace(-3, 0, 25)
            t = beat_time_grid(laser.offset_frequency_fdelta)
            t = t[t < 0.02e-3]

            def one(r):
                u = r * laser.lo_amplitude_Uy
                _, dl_ = diod_linearized(vapor, laser, u, t, eta1, g)
                de = diod_exact(vapor, laser, u, t, eta1, g)
                _, bl = bcod_linearized(vapor, laser, u, t, eta1, g)
                be = bcod_exact(vapor, laser, u, t, eta1, g)
                return [u, normalized_approx_error(de.ac_waveform, dl_.ac_waveform),
                        normalized_approx_error(be.ac_waveform, bl.ac_waveform)]

            header = ["ux_v_per_m", "diod_error", "bcod_error"]
            rows = _map(one, ratios, scenario.jobs)

        elif name == "validate-transfer":
            ratios = np.logspace(-4, 0, 41)
            t = beat_time_grid(laser.offset_frequency_fdelta)

            def one(r):
                u = r * laser.lo_amplitude_Uy
                _, dl_ = diod_linearized(vapor, laser, u, t, eta1, g)
                de = diod_exact(vapor, laser, u, t, eta1, g)
                _, bl = bcod_linearized(vapor, laser, u, t, eta1, g)
                be = bcod_exact(vapor, laser, u, t, eta1, g)
                rms = lambda w: float(np.sqrt(np.mean((w - w.mean())**2)))
                return [u, rms(de.ac_waveform), rms(dl_.ac_waveform),
                        rms(be.ac_waveform), rms(bl.ac_waveform)]

            header = ["ux_v_per_m", "diod_exact_ac_rms_v", "diod_linear_ac_rms_v",
                      "bcod_exact_ac_rms_v", "bcod_linear_ac_rms_v"]
            rows = _map(one, ratios, scenario.jobs)

        elif name == "opt-uy":
            base = with_overrides(laser, probe_power_P0=29.8e-6,
                                  detuning_p=0.0, detuning_c=0.0,
                                  detuning_l=0.0)
            spec_d = SweepSpec("Uy", -40.0, -14.0, 0.5, "SNR_PSL_DIOD")
            spec_b = SweepSpec("Uy", -40.0, -14.0, 0.5, "SNR_PSL_BCOD")
            rd = sweep_1d(spec_d, vapor, base, chain, h_sq_ps)
            rb = sweep_1d(spec_b, vapor, base, chain, h_sq_ps)
            header = ["uy_dbvm", "snr_psl_diod_db", "snr_psl_bcod_db"]
            rows = [[rd.grid[i], rd.curve_db[i], rb.curve_db[i]]
                    for i in range(len(rd.grid))]

        elif name == "opt-p0":
            base = with_overrides(laser, detuning_p=0.0, detuning_c=0.0,
                                  detuning_l=0.0)
            spec_d = SweepSpec("P0", 0.5e-6, 60e-6, 0.1e-6, "SNR_PSL_DIOD")
            spec_b = SweepSpec("P0", 0.5e-6, 60e-6, 0.1e-6, "SNR_PSL_BCOD")
            rd = sweep_1d(spec_d, vapor, base, chain, h_sq_ps)
            rb = sweep_1d(spec_b, vapor, base, chain, h_sq_ps)
            header = ["p0_w", "snr_psl_diod_db", "snr_psl_bcod_db"]
            rows = [[rd.grid[i], rd.curve_db[i], rb.curve_db[i]]
                    for i in range(len(rd.grid))]

        elif name == "opt-detunings":
            header = ["delta_rad_per_s"]
            curves = []
            for objective in ("SNR_PSL_DIOD", "SNR_PSL_BCOD"):
                trace = alternate(vapor, laser, chain, h_sq_ps,
                                  specs=reference_sweep_specs(objective))
                tag = "diod" if objective.endswith("DIOD") else "bcod"
                for res in trace.steps[2:]:
                    header.append(
                        f"snr_{tag}_{res.parameter.lower()}_db")
                    curves.append(res)
            grid = curves[0].grid
            rows = [[grid[i], *(c.curve_db[i] for c in curves)]
                    for i in range(len(grid))]

        elif name == "snr-vs-density":
            axis = np.linspace(1e16, 9e16, 33)

            def one(n0):
                vap = replace(vapor, atomic_density_N0=float(n0))
                las_d = _with_detunings(laser, dets["DIOD"])
                las_b = _with_detunings(laser, dets["BCOD"])
                return [n0,
                        snr_sql(vap, laser, h_sq_ps),
                        snr_psl(vap, las_d, "DIOD", eta1, h_sq_ps),
                        snr_psl(vap, las_b, "BCOD", eta1, h_sq_ps),
                        snr_total(vap, las_d, replace(chain, scheme="DIOD"), h_sq_ps),
                        snr_total(vap, las_b, replace(chain, scheme="BCOD"), h_sq_ps),
                        classical_snr(ClassicalRxConfig.from_chain(
                            chain, laser.carrier_frequency_fc), h_sq_ps,
                            laser.bandwidth_B),
                        classical_snr(ClassicalRxConfig.from_chain(
                            chain_ue, laser.carrier_frequency_fc), h_sq_ps,
                            laser.bandwidth_B)]

            header = ["n0_per_m3", "snr_sql_db", "snr_psl_diod_db",
                      "snr_psl_bcod_db", "snr_total_diod_db",
                      "snr_total_bcod_db", "snr_bs_db", "snr_ue_db"]
            rows = _map(one, axis, scenario.jobs)

        elif name == "snr-vs-localpower":
            axis = np.logspace(math.log10(30e-6), math.log10(300e-3), 41)

            def one(pl):
                las = with_overrides(laser, local_optical_power_Pl=float(pl))
                las_d = _with_detunings(las, dets["DIOD"])
                las_b = _with_detunings(las, dets["BCOD"])
                return [pl,
                        snr_sql(vapor, las, h_sq_ps),
                        snr_psl(vapor, las_d, "DIOD", eta1, h_sq_ps),
                        snr_psl(vapor, las_b, "BCOD", eta1, h_sq_ps),
                        snr_total(vapor, las_d, replace(chain, scheme="DIOD"), h_sq_ps),
                        snr_total(vapor, las_b, replace(chain, scheme="BCOD"), h_sq_ps),
                        classical_snr(ClassicalRxConfig.from_chain(
                            chain, laser.carrier_frequency_fc), h_sq_ps,
                            laser.bandwidth_B),
                        classical_snr(ClassicalRxConfig.from_chain(
                            chain_ue, laser.carrier_frequency_fc), h_sq_ps,
                            laser.bandwidth_B)]

            header = ["pl_w", "snr_sql_db", "snr_psl_diod_db",
                      "snr_psl_bcod_db", "snr_total_diod_db",
                      "snr_total_bcod_db", "snr_bs_db", "snr_ue_db"]
            rows = _map(one, axis, scenario.jobs)

        elif name == "snr-vs-frequency":
            rows = []
            for transition in cfg.TABLE2:
                vals = None
                for scheme in cfg.SCHEMES:
                    vap, las = cfg.table2_preset(transition, scheme=scheme)
                    vap = replace(vap, atomic_density_N0=vapor.atomic_density_N0)
                    if vals is None:
                        vals = [las.carrier_frequency_fc,
                                snr_sql(vap, las, h_sq_ps)]
                    vals.append(snr_psl(vap, las, scheme, eta1, h_sq_ps))
                    vals.append(snr_total(vap, las,
                                          replace(chain, scheme=scheme),
                                          h_sq_ps))
                vap, las = cfg.table2_preset(transition)
                vals.append(classical_snr(ClassicalRxConfig.from_chain(
                    chain, las.carrier_frequency_fc), h_sq_ps,
                    laser.bandwidth_B))
                vals.append(classical_snr(ClassicalRxConfig.from_chain(
                    chain_ue, las.carrier_frequency_fc), h_sq_ps,
                    laser.bandwidth_B))
                rows.append(vals)
            rows.sort(key=lambda r: r[0])
            header = ["fc_hz", "snr_sql_db", "snr_psl_diod_db",
                      "snr_total_diod_db", "snr_psl_bcod_db",
                      "snr_total_bcod_db", "snr_bs_db", "snr_ue_db"]

        elif name in ("ratio-vs-cell", "ratio-vs-fwhm", "ratio-vs-population",
                      "sensitivity-vs-cell", "sensitivity-vs-fwhm",
                      "sensitivity-vs-population"):
            kind = name.split("-vs-")[1]
            want_ratio = name.startswith("ratio")
            if kind == "cell":
                axis = np.linspace(0.004, 0.10, 33)
                axis_name = "d_m"
            elif kind == "fwhm":
                axis = np.linspace(0.2e-3, 6e-3, 30)
                axis_name = "fp_m"
            else:
                axis = np.logspace(math.log10(2.5e-7), math.log10(1e-2), 30)
                axis_name = "upsilon"

            las_b = _with_detunings(laser, dets["BCOD"])
            chain_b = replace(chain, scheme="BCOD")
            chain_b_ue = replace(chain_ue, scheme="BCOD")

            def one(x):
                vap, las = vapor, las_b
                if kind == "cell":
                    vap = replace(vap, cell_length_d=float(x))
                elif kind == "fwhm":
                    las = with_overrides(las, fwhm_Fp=float(x),
                                         beam_radius_r0=float(x) / FWHM_PER_RADIUS)
                else:
                    vap = replace(vap, population_rate_Y=float(x))
                if want_ratio:
                    bs = classical_snr(ClassicalRxConfig.from_chain(
                        chain, las.carrier_frequency_fc), h_sq_ps,
                        las.bandwidth_B)
                    ue = classical_snr(ClassicalRxConfig.from_chain(
                        chain_ue, las.carrier_frequency_fc), h_sq_ps,
                        las.bandwidth_B)
                    sql = snr_sql(vap, las, h_sq_ps)
                    psl = snr_psl(vap, las, "BCOD", eta1, h_sq_ps)
                    return [x, sql - bs, psl - bs, sql - ue, psl - ue]
                return [x,
                        sensitivity("SQL", vap, las, chain_b),
                        sensitivity("PSL", vap, las, chain_b),
                        sensitivity("TOTAL", vap, las, chain_b),
                        sensitivity("CLASSICAL", vap, las, chain_b),
                        sensitivity("CLASSICAL", vap, las, chain_b_ue)]

            if want_ratio:
                header = [axis_name, "ratio0_sql_bs_db", "ratio0_psl_bcod_bs_db",
                          "ratio0_sql_ue_db", "ratio0_psl_bcod_ue_db"]
            else:
                header = [axis_name, "sens_sql_v_per_m_rthz",
                          "sens_psl_bcod_v_per_m_rthz",
                          "sens_total_bcod_v_per_m_rthz",
                          "sens_bs_v_per_m_rthz", "sens_ue_v_per_m_rthz"]
            rows = _map(one, axis, scenario.jobs)

        else:  # pragma: no cover - guarded by Scenario.__post_init__
            raise ScenarioError(f"unknown scenario {name!r}")
    except (ConfigError, ScenarioError):
        raise
    except Exception as exc:
        raise ScenarioError(f"{name}: {exc}") from exc

    doc = _csv(header, rows)
    if scenario.output_path:
        with open(scenario.output_path, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return doc


def emit_plotdata(csv_text: str, out_dir: str, scenario_name: str) -> list[str]:
    """Write one `<scenario>__<curve>.dat` x/y file per curve column."""
    import os

    reader = csv.reader(io.StringIO(csv_text))
    header = next(reader)
    rows = list(reader)
    if len(header) < 2 or not rows:
        raise EmptyScenario(f"{scenario_name}: no curves to emit")
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for j, curve in enumerate(header[1:], start=1):
        path = os.path.join(out_dir, f"{scenario_name}__{curve}.dat")
        with open(path, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(f"{float(row[0]):.9g} {float(row[j]):.9g}\n")
        paths.append(path)
    return paths
