"""Alternating one-dimensional exhaustive sweeps over the LO amplitude,
probe power and the three detunings, maximizing the photon-shot-limited
SNR; plus an exhaustive joint detuning grid search.

Sweep units: the LO amplitude is swept on a dBV/m grid, probe power in
watts, detunings in rad/s.  Ties break toward the smaller parameter value
(compared with a 1e-12 relative tolerance so an exactly symmetric
objective lands deterministically on the lower branch).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .chain import optical_rabi, with_overrides
from .config import AtomicVaporConfig, LaserRfConfig, ReceiverChainConfig
from .constants import (
    ELEMENTARY_CHARGE,
    FREE_SPACE_IMPEDANCE,
    REDUCED_PLANCK,
    SPEED_OF_LIGHT,
    TWO_PI,
    dbvm_to_field,
)
from .errors import BudgetExceeded, ObjectiveUndefined, RaqrError
from .frontend import rabi_from_field
from .optics import beam_field, beam_power
from .performance import snr_total
from .photodetection import responsivity
from .quantum import DetuningSet, RabiSet, susceptibility, susceptibility_derivative

OBJECTIVES = ("SNR_PSL_DIOD", "SNR_PSL_BCOD", "SNR_TOTAL")
PARAMETERS = ("Uy", "P0", "Delta_p", "Delta_c", "Delta_l")


@dataclass(frozen=True)
class SweepSpec:
    """One exhaustive-search axis."""

    parameter: str
    lower: float
    upper: float
    step: float
    objective: str = "SNR_PSL_BCOD"

    def __post_init__(self) -> None:
        if self.parameter not in PARAMETERS:
            raise RaqrError(f"unknown sweep parameter {self.parameter!r}")
        if self.objective not in OBJECTIVES:
            raise RaqrError(f"unknown objective {self.objective!r}")
        if not self.lower < self.upper:
            raise RaqrError("need lower < upper")
        if not self.step > 0:
            raise RaqrError("need step > 0")
        if len(self.grid()) < 3:
            raise RaqrError("grid must have at least 3 points")

    def grid(self) -> np.ndarray:
        return np.arange(self.lower, self.upper + 0.5 * self.step, self.step)


@dataclass(frozen=True)
class SweepResult:
    parameter: str
    grid: np.ndarray
    curve_db: np.ndarray
    argmax: float
    max_value_db: float
    boundary_hit: bool
    flat: bool


@dataclass(frozen=True)
class OptimizationTrace:
    steps: list[SweepResult]
    laser: LaserRfConfig

    @property
    def best_db(self) -> float:
        return self.steps[-1].max_value_db


@dataclass(frozen=True)
class JointSearchResult:
    argmax: tuple[float, float, float]
    max_value_db: float
    improvement_over_best_independent_db: float
    improvement_over_zero_detuning_db: float
    points_evaluated: int


def _psl_curve_db(vapor: AtomicVaporConfig, laser: LaserRfConfig,
                  scheme: str, eta1: float, h_sq_ps: float,
                  omega_l, det: DetuningSet, omega_p, u0) -> np.ndarray:
    """Vectorized photon-shot-limited SNR along one or more array axes."""
    omega_c = optical_rabi(laser.coupling_power_Pc, vapor.dipole_mu23, laser)
    rabi = RabiSet(omega_p, omega_c, omega_l)
    chi = susceptibility(rabi, det, vapor)
    up = u0 * np.exp(-math.pi * vapor.cell_length_d / laser.probe_wavelength
                     * np.imag(chi))
    p1 = beam_power(up, laser.fwhm_Fp)
    chi_p = susceptibility_derivative(omega_l, det, vapor, omega_p, omega_c)
    kfac = (math.pi * vapor.cell_length_d * vapor.dipole_mu34
            / (laser.probe_wavelength * REDUCED_PLANCK))
    if scheme == "DIOD":
        kappa = kfac * np.abs(np.imag(chi_p))
    else:
        kappa = kfac * np.hypot(np.imag(chi_p), np.real(chi_p))
    alpha = responsivity(eta1, SPEED_OF_LIGHT / laser.probe_wavelength)
    snr = (4.0 * alpha * FREE_SPACE_IMPEDANCE / ELEMENTARY_CHARGE
           * p1 * kappa**2 * h_sq_ps / laser.bandwidth_B)
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(snr)


def _evaluate(spec: SweepSpec, vapor: AtomicVaporConfig,
              laser: LaserRfConfig, chain: ReceiverChainConfig,
              h_sq_ps: float) -> tuple[np.ndarray, np.ndarray]:
    grid = spec.grid()
    det = DetuningSet(laser.detuning_p, laser.detuning_c, laser.detuning_l)
    omega_l = rabi_from_field(laser.lo_amplitude_Uy, vapor.dipole_mu34)
    omega_p = optical_rabi(laser.probe_power_P0, vapor.dipole_mu12, laser)
    u0 = float(beam_field(laser.probe_power_P0, laser.fwhm_Fp))

    if spec.objective == "SNR_TOTAL":
        vals = np.empty(len(grid))
        for i, g in enumerate(grid):
            try:
                vals[i] = snr_total(vapor, _apply(laser, spec.parameter, g),
                                    chain, h_sq_ps)
            except Exception as exc:
                raise ObjectiveUndefined(
                    f"{spec.parameter} = {g!r}: {exc}") from exc
        return grid, vals

    scheme = "DIOD" if spec.objective == "SNR_PSL_DIOD" else "BCOD"
    eta1 = chain.quantum_efficiency_eta1
    if spec.parameter == "Uy":
        omega_l = rabi_from_field(dbvm_to_field(grid), vapor.dipole_mu34)
    elif spec.parameter == "P0":
        u0 = beam_field(grid, laser.fwhm_Fp)
        omega_p = (laser.rabi_waist_scale * vapor.dipole_mu12 * u0
                   / REDUCED_PLANCK)
    elif spec.parameter == "Delta_p":
        det = replace(det, delta_p=grid)
    elif spec.parameter == "Delta_c":
        det = replace(det, delta_c=grid)
    elif spec.parameter == "Delta_l":
        det = replace(det, delta_l=grid)
    try:
        vals = _psl_curve_db(vapor, laser, scheme, eta1, h_sq_ps,
                             omega_l, det, omega_p, u0)
    except Exception as exc:
        raise ObjectiveUndefined(f"{spec.parameter} sweep: {exc}") from exc
    bad = ~np.isfinite(vals)
    if np.any(bad):
        raise ObjectiveUndefined(
            f"{spec.parameter} = {grid[bad][0]!r}: objective not finite")
    return grid, vals


def _apply(laser: LaserRfConfig, parameter: str, value: float) -> LaserRfConfig:
    if parameter == "Uy":
        return with_overrides(laser, lo_amplitude_Uy=dbvm_to_field(value))
    if parameter == "P0":
        return with_overrides(laser, probe_power_P0=float(value))
    field = {"Delta_p": "detuning_p", "Delta_c": "detuning_c",
             "Delta_l": "detuning_l"}[parameter]
    return with_overrides(laser, **{field: float(value)})


def select_optimum(parameter: str, grid: np.ndarray,
                   vals: np.ndarray) -> SweepResult:
    """Pick the grid optimum: ties toward the smaller value, warnings for
    flat curves and boundary hits."""
    top = vals.max()
    tol = 1e-12 * max(abs(top), 1.0)
    i = int(np.nonzero(vals >= top - tol)[0][0])
    boundary = i in (0, len(grid) - 1)
    flat = bool(top - vals.min() <= tol)
    if flat:
        warnings.warn(f"{parameter}: objective flat across the grid",
                      stacklevel=2)
    if boundary and not flat:
        warnings.warn(f"{parameter}: optimum on the grid boundary",
                      stacklevel=2)
    return SweepResult(parameter, grid, vals, float(grid[i]),
                       float(vals[i]), boundary, flat)


def sweep_1d(spec: SweepSpec, vapor: AtomicVaporConfig,
             laser: LaserRfConfig, chain: ReceiverChainConfig,
             h_sq_ps: float) -> SweepResult:
    """Exhaustive search along one axis; ties go to the smaller value."""
    grid, vals = _evaluate(spec, vapor, laser, chain, h_sq_ps)
    return select_optimum(spec.parameter, grid, vals)


def reference_sweep_specs(objective: str = "SNR_PSL_BCOD") -> list[SweepSpec]:
    """Default axes: LO amplitude (0.5 dB over -40..-14 dBV/m), probe power
    (0.1 uW over 0.5..60 uW), detunings (0.0025 MHz over +-3 MHz)."""
    det = dict(lower=-TWO_PI * 3e6, upper=TWO_PI * 3e6, step=TWO_PI * 0.0025e6,
               objective=objective)
    return [
        SweepSpec("Uy", -40.0, -14.0, 0.5, objective),
        SweepSpec("P0", 0.5e-6, 60e-6, 0.1e-6, objective),
        SweepSpec("Delta_p", **det),
        SweepSpec("Delta_c", **det),
        SweepSpec("Delta_l", **det),
    ]


def alternate(vapor: AtomicVaporConfig, laser: LaserRfConfig,
              chain: ReceiverChainConfig, h_sq_ps: float,
              specs: list[SweepSpec] | None = None, rounds: int = 1,
              initial_p0: float = 29.8e-6) -> OptimizationTrace:
    """Sequential sweeps, each substituting its optimum into the next.

    Starts from the reference initial point (probe power 29.8 uW, all
    detunings zero) unless the caller supplies its own laser state.
    """
    if specs is None:
        specs = reference_sweep_specs()
    current = with_overrides(laser, probe_power_P0=initial_p0,
                             detuning_p=0.0, detuning_c=0.0, detuning_l=0.0)
    steps: list[SweepResult] = []
    last = -math.inf
    for _ in range(rounds):
        for spec in specs:
            res = sweep_1d(spec, vapor, current, chain, h_sq_ps)
            current = _apply(current, spec.parameter, res.argmax)
            if res.max_value_db < last - 1e-9 and not res.flat:
                warnings.warn(
                    f"{spec.parameter}: objective decreased along the trace",
                    stacklevel=2)
            last = res.max_value_db
            steps.append(res)
    return OptimizationTrace(steps, current)


def joint_detuning_grid(vapor: AtomicVaporConfig, laser: LaserRfConfig,
                        chain: ReceiverChainConfig, h_sq_ps: float,
                        objective: str = "SNR_PSL_BCOD",
                        ranges: tuple | None = None,
                        step: float = TWO_PI * 0.0025e6,
                        budget: int = 10**6) -> JointSearchResult:
    """Exhaustive three-dimensional detuning search.

    Default ranges center on the laser's current detunings (normally the
    alternating-search result) with half-widths (0.15, 0.25, 0.05) MHz.
    Reports the gain over the best single-detuning optimum and over the
    zero-detuning configuration, both at the same LO amplitude and probe
    power.
    """
    if objective == "SNR_TOTAL":
        raise RaqrError("joint search supports the shot-limited objectives")
    scheme = "DIOD" if objective == "SNR_PSL_DIOD" else "BCOD"
    eta1 = chain.quantum_efficiency_eta1
    if ranges is None:
        half = (TWO_PI * 0.15e6, TWO_PI * 0.25e6, TWO_PI * 0.05e6)
        centers = (laser.detuning_p, laser.detuning_c, laser.detuning_l)
        ranges = tuple((c - h, c + h) for c, h in zip(centers, half))
    grids = [np.arange(lo, hi + 0.5 * step, step) for lo, hi in ranges]
    n_pts = len(grids[0]) * len(grids[1]) * len(grids[2])
    if n_pts > budget:
        raise BudgetExceeded(f"{n_pts} grid points exceed the budget {budget}")

    omega_l = rabi_from_field(laser.lo_amplitude_Uy, vapor.dipole_mu34)
    omega_p = optical_rabi(laser.probe_power_P0, vapor.dipole_mu12, laser)
    u0 = float(beam_field(laser.probe_power_P0, laser.fwhm_Fp))

    best = -math.inf
    arg = (0.0, 0.0, 0.0)
    gc = grids[1][:, None]
    gl = grids[2][None, :]
    for dp in grids[0]:
        vals = _psl_curve_db(vapor, laser, scheme, eta1, h_sq_ps, omega_l,
                             DetuningSet(dp, gc, gl), omega_p, u0)
        if vals.max() > best:
            best = float(vals.max())
            i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
            arg = (float(dp), float(grids[1][i]), float(grids[2][j]))

    # independent single-detuning optima over the full reference range
    full = reference_sweep_specs(objective)[2:]
    zero = with_overrides(laser, detuning_p=0.0, detuning_c=0.0,
                          detuning_l=0.0)
    indep = max(sweep_1d(spec, vapor, zero, chain, h_sq_ps).max_value_db
                for spec in full)
    at_zero = float(_psl_curve_db(vapor, laser, scheme, eta1, h_sq_ps,
                                  omega_l, DetuningSet(0.0, 0.0, 0.0),
                                  omega_p, u0))
    return JointSearchResult(arg, best, best - indep, best - at_zero, n_pts)
