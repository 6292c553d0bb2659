"""Probe-beam propagation through the vapor cell: attenuation, dispersive
phase, and the equivalent-baseband representation of the output beam."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT, VACUUM_PERMITTIVITY
from .errors import RaqrError

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ProbeBeamState:
    """A Gaussian beam characterized by power, field amplitude and phase."""

    power: float
    amplitude_U: float
    phase: float
    frequency_fp: float
    fwhm_Fp: float

    def __post_init__(self) -> None:
        expected = beam_power(self.amplitude_U, self.fwhm_Fp)
        if abs(self.power - expected) > 1e-12 * max(expected, 1e-300):
            raise RaqrError(
                f"beam power {self.power!r} inconsistent with amplitude "
                f"(expected {expected!r})")

    @classmethod
    def from_power(cls, power: float, wavelength: float, fwhm_Fp: float,
                   phase: float = 0.0) -> "ProbeBeamState":
        return cls(power, beam_field(power, fwhm_Fp),
                   phase, SPEED_OF_LIGHT / wavelength, fwhm_Fp)


def beam_power(amplitude_U, fwhm_Fp: float):
    """Gaussian-beam power, (pi c eps0 / (8 ln 2)) Fp^2 U^2."""
    return (math.pi * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY
            / (8.0 * _LN2)) * fwhm_Fp**2 * np.asarray(amplitude_U)**2


def beam_field(power, fwhm_Fp: float):
    """Field amplitude of a Gaussian beam of given power and FWHM."""
    return np.sqrt(8.0 * _LN2 * np.asarray(power)
                   / (math.pi * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY
                      * fwhm_Fp**2))


def output_amplitude(input_state: ProbeBeamState, chi,
                     cell_length_d: float, lambda_p: float):
    """Transmitted probe amplitude, U0 * exp(-(pi d / lambda) Im chi)."""
    if input_state.amplitude_U <= 0:
        raise RaqrError("input amplitude must be > 0")
    return input_state.amplitude_U * np.exp(
        -math.pi * cell_length_d / lambda_p * np.imag(chi))


def output_phase(input_state: ProbeBeamState, chi,
                 cell_length_d: float, lambda_p: float):
    """Transmitted probe phase, phi0 + (pi d / lambda) Re chi."""
    return input_state.phase + (math.pi * cell_length_d / lambda_p
                                * np.real(chi))


def output_probe_baseband(input_state: ProbeBeamState, chi,
                          cell_length_d: float, lambda_p: float):
    """Equivalent baseband phasor of the output beam, sqrt(P1) e^{j phi_p}."""
    up = output_amplitude(input_state, chi, cell_length_d, lambda_p)
    p1 = beam_power(up, input_state.fwhm_Fp)
    return np.sqrt(p1) * np.exp(1j * output_phase(input_state, chi,
                                                  cell_length_d, lambda_p))


def beat_time_grid(fdelta: float, periods: float = 3.0,
                   samples_per_period: int = 257) -> np.ndarray:
    """Time grid resolving the beat envelope.

    At least 200 samples per beat period; the default 257 is odd so the
    sampled beat phase never lands exactly on a multiple of pi, where the
    fully destructive LO/signal superposition would drive the coherence
    through its degenerate point.
    """
    if samples_per_period < 200:
        raise RaqrError("need >= 200 samples per beat period")
    n = int(round(periods * samples_per_period))
    return np.arange(n) / (samples_per_period * fdelta)
