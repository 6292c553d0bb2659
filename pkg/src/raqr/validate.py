"""Self-checks: closed form against the numerical steady state, analytic
derivative against finite differences, and a side-by-side report of the
headline figures under the two frequency-reading conventions."""

from __future__ import annotations

import time
from dataclasses import replace

import numpy as np

from . import config as cfg
from .chain import rabi_of, with_overrides
from .constants import TWO_PI
from .frontend import default_rx_amplitude
from .performance import (
    ClassicalRxConfig,
    classical_snr,
    h_sq_ps_from_amplitude,
    sensitivity,
    snr_psl,
    snr_sql,
    snr_total,
)
from .quantum import (
    DetuningSet,
    RabiSet,
    lindblad_steady_state,
    rho21,
    susceptibility,
    susceptibility_derivative,
)


def oracle_equivalence(n_points: int = 100, seed: int = 7,
                       tol: float = 1e-8) -> tuple[float, float]:
    """Max relative deviation of the closed-form coherence from the
    steady-state solve over a randomized neighborhood of the standard
    configuration; returns (worst deviation, elapsed seconds)."""
    vapor, laser, _ = cfg.table1_preset()
    base = rabi_of(vapor, laser)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n_points):
        rabi = RabiSet(base.omega_p * rng.uniform(0.5, 2.0),
                       base.omega_c * rng.uniform(0.5, 2.0),
                       float(np.asarray(base.omega_rf)) * rng.uniform(0.5, 2.0))
        det = DetuningSet(*(TWO_PI * 1e6 * rng.uniform(-2, 2, size=3)))
        closed = rho21(rabi, det, vapor.decay_gamma2)
        ss = lindblad_steady_state(rabi, det, vapor)[1, 0]
        worst = max(worst, abs(closed - ss) / abs(ss))
    elapsed = time.perf_counter() - t0
    if worst > tol:
        raise AssertionError(f"oracle deviation {worst:.3e} exceeds {tol:g}")
    return worst, elapsed


def derivative_check(n_points: int = 50, seed: int = 11,
                     tol: float = 1e-6) -> tuple[float, float]:
    """Analytic susceptibility derivative against central differences."""
    vapor, laser, _ = cfg.table1_preset()
    rabi = rabi_of(vapor, laser)
    omega_l = float(np.asarray(rabi.omega_rf))
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n_points):
        det = DetuningSet(*(TWO_PI * 1e6 * rng.uniform(-2, 2, size=3)))
        ol = omega_l * rng.uniform(0.3, 3.0)
        analytic = susceptibility_derivative(ol, det, vapor,
                                             rabi.omega_p, rabi.omega_c)
        h = ol * 1e-6
        hi = susceptibility(RabiSet(rabi.omega_p, rabi.omega_c, ol + h),
                            det, vapor)
        lo = susceptibility(RabiSet(rabi.omega_p, rabi.omega_c, ol - h),
                            det, vapor)
        fd = (hi - lo) / (2.0 * h)
        worst = max(worst, abs(analytic - fd) / abs(fd))
    elapsed = time.perf_counter() - t0
    if worst > tol:
        raise AssertionError(f"derivative deviation {worst:.3e} exceeds {tol:g}")
    return worst, elapsed


def convention_report() -> str:
    """Headline figures under the angular and ordinary readings.

    MHz-printed rates are genuinely ambiguous between the two readings;
    the derived figures differ, so both are reported and the calibrated
    default (angular) is flagged.
    """
    ux = default_rx_amplitude()
    h_sq_ps = h_sq_ps_from_amplitude(ux)
    lines = ["headline figures at N0 = 5e10 cm^-3 (gains over the BS baseline, dB):"]
    row = cfg.TABLE2["47D5/2-48P3/2"]
    for convention in cfg.CONVENTIONS:
        vapor, laser, chain = cfg.table1_preset(convention=convention)
        vapor5 = replace(vapor, atomic_density_N0=5e16)
        scale = TWO_PI if convention == "angular" else 1.0
        dets = {s: (row[4][i] * 1e6 * scale, row[5][i] * 1e6 * scale,
                    row[6][i] * 1e6 * scale)
                for i, s in enumerate(cfg.SCHEMES)}
        las_b = with_overrides(laser, detuning_p=dets["BCOD"][0],
                               detuning_c=dets["BCOD"][1],
                               detuning_l=dets["BCOD"][2])
        bs = classical_snr(ClassicalRxConfig.from_chain(
            chain, laser.carrier_frequency_fc), h_sq_ps, laser.bandwidth_B)
        psl = snr_psl(vapor5, las_b, "BCOD",
                      chain.quantum_efficiency_eta1, h_sq_ps) - bs
        sql = snr_sql(vapor5, laser, h_sq_ps) - bs
        tot = snr_total(vapor5, las_b, replace(chain, scheme="BCOD"),
                        h_sq_ps) - bs
        u_sql = sensitivity("SQL", vapor, laser, chain)
        u_psl = sensitivity("PSL", vapor, las_b, replace(chain, scheme="BCOD"))
        lines.append(
            f"  [{convention:8s}] PSL {psl:6.2f}  SQL {sql:6.2f}  "
            f"BCOD-total {tot:6.2f}  U_SQL {u_sql / 100 * 1e12:6.2f} pV/cm/rtHz  "
            f"U_PSL {u_psl / 100 * 1e12:6.2f} pV/cm/rtHz")
    lines.append("  reference values: PSL 27, SQL 40, BCOD-total 26.7, "
                 "U_SQL 18 pV/cm/rtHz, U_PSL 86 pV/cm/rtHz")
    lines.append("  the angular reading is the calibrated default; the "
                 "ordinary reading shifts the projection-noise figures by "
                 "10 log10(2 pi) ~ 8 dB")
    return "\n".join(lines)


def run_validation(verbose: bool = True) -> list[str]:
    """Run the oracle suite; returns printable result lines."""
    lines = []
    worst, elapsed = oracle_equivalence()
    lines.append(f"closed form vs steady-state solve: max rel dev "
                 f"{worst:.2e} (tol 1e-8) in {elapsed:.2f} s  [pass]")
    worst, elapsed = derivative_check()
    lines.append(f"analytic derivative vs central differences: max rel dev "
                 f"{worst:.2e} (tol 1e-6) in {elapsed:.2f} s  [pass]")
    lines.append(convention_report())
    return lines
