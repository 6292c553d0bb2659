"""Photodetection of the output probe beam.

Two readout schemes are modeled end to end: a single photodiode measuring
the probe power directly (DIOD), and a balanced pair mixing the probe with
a strong local optical beam (BCOD).  Each has an exact nonlinear path,
driven sample by sample through the atomic response, and a first-order
linearization around the LO bias point characterized by a slope kappa and
a phase.  Both paths are first class: the validation experiments quantify
the linearization error between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import OperatingPoint, detunings_of, operating_point, probe_frequency, rabi_of
from .config import AtomicVaporConfig, LaserRfConfig
from .constants import (
    ELEMENTARY_CHARGE,
    FREE_SPACE_IMPEDANCE,
    REDUCED_PLANCK,
    TWO_PI,
)
from .errors import RaqrError, ZeroReference
from .frontend import rabi_from_field
from .optics import ProbeBeamState, beam_power, output_amplitude, output_phase
from .quantum import susceptibility


@dataclass(frozen=True)
class LinearizedResponse:
    """First-order readout response at the LO bias point."""

    kappa: float
    varphi: float
    psi_p: float
    gain_rho: float
    phase_Phi: complex
    scheme: str
    probe_out_power: float
    local_power: float
    local_phase: float


@dataclass(frozen=True)
class PhotodetectorOutput:
    """Amplified voltage split into its DC value and AC waveform."""

    dc_volts: float
    ac_waveform: np.ndarray
    sampling_rate: float


def responsivity(eta1: float, fp: float) -> float:
    """Photodetector responsivity eta1 * q / (2 pi hbar fp), in A/W."""
    if fp <= 0:
        raise RaqrError("optical frequency must be > 0")
    return eta1 * ELEMENTARY_CHARGE / (TWO_PI * REDUCED_PLANCK * fp)


def _kappa_scale(vapor: AtomicVaporConfig, laser: LaserRfConfig) -> float:
    return (math.pi * vapor.cell_length_d * vapor.dipole_mu34
            / (laser.probe_wavelength * REDUCED_PLANCK))


def diod_slope(op: OperatingPoint, vapor: AtomicVaporConfig,
               laser: LaserRfConfig) -> tuple[float, float]:
    """(kappa1, varphi1): magnitude and sign of the power-readout slope.

    varphi1 is 0 or pi by sign inspection of Im chi', never a floating
    arccos, so a marginal |argument| > 1 cannot produce NaN.
    """
    im = op.chi_prime_at_lo.imag
    kappa1 = _kappa_scale(vapor, laser) * abs(im)
    varphi1 = 0.0 if im >= 0 else math.pi
    return kappa1, varphi1


def bcod_slope(op: OperatingPoint, vapor: AtomicVaporConfig,
               laser: LaserRfConfig, phi_l: float
               ) -> tuple[float, float, float]:
    """(kappa2, varphi2, psi_p) of the balanced readout.

    psi_p is the full-quadrant angle with cos psi_p = Im chi'/|chi'| and
    sin psi_p = Re chi'/|chi'|; atan2 keeps the sign of Re chi' that a bare
    arccos would drop.
    """
    re = op.chi_prime_at_lo.real
    im = op.chi_prime_at_lo.imag
    mag = math.hypot(im, re)
    kappa2 = _kappa_scale(vapor, laser) * mag
    psi_p = math.atan2(re, im)
    varphi2 = phi_l - op.probe_out_phase + psi_p
    return kappa2, varphi2, psi_p


def phase_factor(theta_y: float, varphi: float) -> complex:
    """Equivalent-channel phase, (e^{-j(ty-phi)} + e^{-j(ty+phi)}) / 2."""
    return 0.5 * np.exp(-1j * (theta_y - varphi)) + 0.5 * np.exp(
        -1j * (theta_y + varphi))


def linearized_response(vapor: AtomicVaporConfig, laser: LaserRfConfig,
                        scheme: str, eta1: float, lna_gain: float,
                        maximize_phase: bool = False) -> LinearizedResponse:
    """Assemble the linearized readout at the operating point.

    With ``maximize_phase`` (balanced scheme only) the local optical phase
    is set so the readout phase vanishes and cos^2 varphi = 1.
    """
    op = operating_point(vapor, laser)
    alpha = responsivity(eta1, probe_frequency(laser))
    p1 = op.probe_out_power
    if scheme == "DIOD":
        kappa, varphi = diod_slope(op, vapor, laser)
        psi_p = 0.0
        rho = 4.0 * FREE_SPACE_IMPEDANCE * alpha**2 * lna_gain * p1**2 * kappa**2
        phi_l = laser.local_optical_phase_phil
    elif scheme == "BCOD":
        phi_l = laser.local_optical_phase_phil
        kappa, varphi, psi_p = bcod_slope(op, vapor, laser, phi_l)
        if maximize_phase:
            phi_l = op.probe_out_phase - psi_p
            varphi = 0.0
        rho = (4.0 * FREE_SPACE_IMPEDANCE * alpha**2 * lna_gain
               * laser.local_optical_power_Pl * p1 * kappa**2)
    else:
        raise RaqrError(f"unknown scheme {scheme!r}")
    return LinearizedResponse(
        kappa=kappa, varphi=varphi, psi_p=psi_p, gain_rho=rho,
        phase_Phi=phase_factor(laser.phase_y, varphi), scheme=scheme,
        probe_out_power=p1, local_power=laser.local_optical_power_Pl,
        local_phase=phi_l)


def _probe_through_cell(vapor: AtomicVaporConfig, laser: LaserRfConfig,
                        omega_rf):
    """Output power and phase of the probe for an array of RF drives."""
    rabi = rabi_of(vapor, laser, omega_rf=omega_rf)
    chi = susceptibility(rabi, detunings_of(laser), vapor)
    probe_in = ProbeBeamState.from_power(laser.probe_power_P0,
                                         laser.probe_wavelength, laser.fwhm_Fp)
    up = output_amplitude(probe_in, chi, vapor.cell_length_d,
                          laser.probe_wavelength)
    phip = output_phase(probe_in, chi, vapor.cell_length_d,
                        laser.probe_wavelength)
    return beam_power(up, laser.fwhm_Fp), phip


def drive_waveform(vapor: AtomicVaporConfig, laser: LaserRfConfig,
                   ux: float, t: np.ndarray):
    """Instantaneous RF Rabi drive omega_l + omega_x cos(2 pi f_delta t + theta)."""
    omega_l = rabi_from_field(laser.lo_amplitude_Uy, vapor.dipole_mu34)
    omega_x = rabi_from_field(ux, vapor.dipole_mu34)
    theta_delta = laser.phase_x - laser.phase_y
    return omega_l + omega_x * np.cos(
        TWO_PI * laser.offset_frequency_fdelta * t + theta_delta)


def diod_exact(vapor: AtomicVaporConfig, laser: LaserRfConfig, ux: float,
               t: np.ndarray, eta1: float, lna_gain: float
               ) -> PhotodetectorOutput:
    """Exact single-photodiode voltage sqrt(G) alpha P1(omega_rf(t)).

    The DC entry is the voltage with the signal tone absent (ux = 0),
    i.e. the bias-point value; unit load resistance.
    """
    alpha = responsivity(eta1, probe_frequency(laser))
    omega_rf = drive_waveform(vapor, laser, ux, t)
    p1, _ = _probe_through_cell(vapor, laser, omega_rf)
    volts = math.sqrt(lna_gain) * alpha * p1
    op = operating_point(vapor, laser)
    dc = math.sqrt(lna_gain) * alpha * op.probe_out_power
    rate = 1.0 / (t[1] - t[0]) if len(t) > 1 else 0.0
    return PhotodetectorOutput(dc, volts - dc, rate)


def bcod_exact(vapor: AtomicVaporConfig, laser: LaserRfConfig, ux: float,
               t: np.ndarray, eta1: float, lna_gain: float,
               phi_l: float | None = None) -> PhotodetectorOutput:
    """Exact balanced voltage 2 sqrt(G) alpha sqrt(Pl P1(t)) cos(phi_l - phi_p(t)).

    The two splitter arms carry (Pl -/+ P)/sqrt(2); subtracting the arm
    photocurrents cancels the common mode and keeps the cross term
    implemented here.
    """
    alpha = responsivity(eta1, probe_frequency(laser))
    if phi_l is None:
        phi_l = laser.local_optical_phase_phil
    omega_rf = drive_waveform(vapor, laser, ux, t)
    p1, phip = _probe_through_cell(vapor, laser, omega_rf)
    volts = (2.0 * math.sqrt(lna_gain) * alpha
             * np.sqrt(laser.local_optical_power_Pl * p1)
             * np.cos(phi_l - phip))
    op = operating_point(vapor, laser)
    dc = (2.0 * math.sqrt(lna_gain) * alpha
          * math.sqrt(laser.local_optical_power_Pl * op.probe_out_power)
          * math.cos(phi_l - op.probe_out_phase))
    rate = 1.0 / (t[1] - t[0]) if len(t) > 1 else 0.0
    return PhotodetectorOutput(dc, volts - dc, rate)


def diod_linearized(vapor: AtomicVaporConfig, laser: LaserRfConfig, ux: float,
                    t: np.ndarray, eta1: float, lna_gain: float
                    ) -> tuple[LinearizedResponse, PhotodetectorOutput]:
    """First-order single-photodiode voltage around the LO bias."""
    resp = linearized_response(vapor, laser, "DIOD", eta1, lna_gain)
    alpha = responsivity(eta1, probe_frequency(laser))
    theta_delta = laser.phase_x - laser.phase_y
    beat = np.cos(TWO_PI * laser.offset_frequency_fdelta * t + theta_delta)
    dc = math.sqrt(lna_gain) * alpha * resp.probe_out_power
    ac = dc * (-2.0 * resp.kappa * math.cos(resp.varphi) * ux) * beat
    rate = 1.0 / (t[1] - t[0]) if len(t) > 1 else 0.0
    return resp, PhotodetectorOutput(dc, ac, rate)


def bcod_linearized(vapor: AtomicVaporConfig, laser: LaserRfConfig, ux: float,
                    t: np.ndarray, eta1: float, lna_gain: float,
                    phi_l: float | None = None
                    ) -> tuple[LinearizedResponse, PhotodetectorOutput]:
    """First-order balanced voltage around the LO bias."""
    if phi_l is not None:
        from .chain import with_overrides
        laser = with_overrides(laser, local_optical_phase_phil=phi_l)
    resp = linearized_response(vapor, laser, "BCOD", eta1, lna_gain)
    alpha = responsivity(eta1, probe_frequency(laser))
    op = operating_point(vapor, laser)
    theta_delta = laser.phase_x - laser.phase_y
    beat = np.cos(TWO_PI * laser.offset_frequency_fdelta * t + theta_delta)
    front = (2.0 * math.sqrt(lna_gain) * alpha
             * math.sqrt(laser.local_optical_power_Pl * resp.probe_out_power))
    dc = front * math.cos(resp.local_phase - op.probe_out_phase)
    ac = front * (-resp.kappa * math.cos(resp.varphi) * ux) * beat
    rate = 1.0 / (t[1] - t[0]) if len(t) > 1 else 0.0
    return resp, PhotodetectorOutput(dc, ac, rate)


def extract_ac_baseband(resp: LinearizedResponse) -> tuple[float, complex]:
    """Equivalent-baseband gain and phase of the readout.

    The sampled contract downstream is V_b(m) = sqrt(rho / Ae) Phi x_b(m).
    """
    return resp.gain_rho, resp.phase_Phi


def normalized_approx_error(exact_ac: np.ndarray, approx_ac: np.ndarray) -> float:
    """L2-norm ratio ||exact - approx|| / ||exact|| of mean-removed waveforms."""
    e = np.asarray(exact_ac, dtype=float)
    a = np.asarray(approx_ac, dtype=float)
    if e.shape != a.shape:
        raise RaqrError("waveforms must have equal length")
    e = e - e.mean()
    a = a - a.mean()
    ref = np.linalg.norm(e)
    if ref == 0.0:
        raise ZeroReference("exact waveform has zero norm")
    return float(np.linalg.norm(e - a) / ref)
