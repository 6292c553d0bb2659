"""Operating-point assembly: from validated configs to the atomic drive and
optical state that the photodetection and performance layers consume."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import AtomicVaporConfig, LaserRfConfig
from .constants import SPEED_OF_LIGHT
from .frontend import rabi_from_field
from .optics import (
    ProbeBeamState,
    beam_field,
    beam_power,
    output_amplitude,
    output_phase,
)
from .quantum import (
    DetuningSet,
    RabiSet,
    susceptibility,
    susceptibility_derivative,
)


@dataclass(frozen=True)
class OperatingPoint:
    """Derived quantities at the LO bias point of the receiver."""

    omega_p: float
    omega_c: float
    omega_l: float
    detunings: DetuningSet
    probe_in: ProbeBeamState
    chi_at_lo: complex
    chi_prime_at_lo: complex
    probe_out_power: float
    probe_out_amplitude: float
    probe_out_phase: float


def optical_rabi(power: float, dipole_mu: float, laser: LaserRfConfig) -> float:
    """Rabi frequency of an optical beam of given power.

    The beam field is the Gaussian peak value with the calibrated effective
    waist (``rabi_waist_scale`` times the FWHM-based field).
    """
    return rabi_from_field(laser.rabi_waist_scale
                           * float(beam_field(power, laser.fwhm_Fp)), dipole_mu)


def detunings_of(laser: LaserRfConfig) -> DetuningSet:
    return DetuningSet(laser.detuning_p, laser.detuning_c, laser.detuning_l)


def rabi_of(vapor: AtomicVaporConfig, laser: LaserRfConfig,
            omega_rf=None) -> RabiSet:
    """Probe/coupling/RF Rabi set; omega_rf defaults to the LO bias."""
    omega_l = rabi_from_field(laser.lo_amplitude_Uy, vapor.dipole_mu34)
    return RabiSet(
        omega_p=optical_rabi(laser.probe_power_P0, vapor.dipole_mu12, laser),
        omega_c=optical_rabi(laser.coupling_power_Pc, vapor.dipole_mu23, laser),
        omega_rf=omega_l if omega_rf is None else omega_rf,
    )


def operating_point(vapor: AtomicVaporConfig, laser: LaserRfConfig) -> OperatingPoint:
    """Evaluate the receiver at its LO bias (omega_rf = omega_l)."""
    rabi = rabi_of(vapor, laser)
    det = detunings_of(laser)
    omega_l = float(np.asarray(rabi.omega_rf))
    probe_in = ProbeBeamState.from_power(laser.probe_power_P0,
                                         laser.probe_wavelength, laser.fwhm_Fp)
    chi = susceptibility(rabi, det, vapor)
    chi_p = susceptibility_derivative(omega_l, det, vapor,
                                      rabi.omega_p, rabi.omega_c)
    up = float(output_amplitude(probe_in, chi, vapor.cell_length_d,
                                laser.probe_wavelength))
    return OperatingPoint(
        omega_p=rabi.omega_p,
        omega_c=rabi.omega_c,
        omega_l=omega_l,
        detunings=det,
        probe_in=probe_in,
        chi_at_lo=complex(chi),
        chi_prime_at_lo=complex(chi_p),
        probe_out_power=float(beam_power(up, laser.fwhm_Fp)),
        probe_out_amplitude=up,
        probe_out_phase=float(output_phase(probe_in, chi, vapor.cell_length_d,
                                           laser.probe_wavelength)),
    )


def with_overrides(laser: LaserRfConfig, **kwargs) -> LaserRfConfig:
    """Functional update of a laser config (sweeps use this heavily)."""
    return replace(laser, **kwargs)


def probe_frequency(laser: LaserRfConfig) -> float:
    return SPEED_OF_LIGHT / laser.probe_wavelength
