"""Incident RF signal, RF local oscillator, their superposition at the
atoms, and conversions between field amplitude, power and Rabi frequency."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import (
    REDUCED_PLANCK,
    SPEED_OF_LIGHT,
    VACUUM_PERMITTIVITY,
    dbvm_to_field,
    field_to_dbvm,
)
from .errors import RaqrError, WeakLoViolation

#: Reference transmit amplitude (dBV/m) of the default free-space link:
#: with the -30 + 10*beta*log10(1/L) dB large-scale model at L = 1500 m,
#: beta = 2, it delivers the -71.8 dBV/m received amplitude used as the
#: default RF signal strength.
DEFAULT_TX_REFERENCE_DBVM = 21.72182518111362


@dataclass(frozen=True)
class RfTone:
    """A plane-wave RF tone at the receiver aperture."""

    power: float
    amplitude_U: float
    frequency: float
    phase: float
    effective_aperture_Ae: float

    def __post_init__(self) -> None:
        expected = tone_power(self.amplitude_U, self.effective_aperture_Ae)
        if abs(self.power - expected) > 1e-12 * max(expected, 1e-300):
            raise RaqrError(
                f"tone power {self.power!r} inconsistent with amplitude "
                f"(expected {expected!r})")

    @classmethod
    def from_amplitude(cls, amplitude_U: float, frequency: float,
                       phase: float = 0.0,
                       effective_aperture_Ae: float = 1.0) -> "RfTone":
        return cls(tone_power(amplitude_U, effective_aperture_Ae),
                   amplitude_U, frequency, phase, effective_aperture_Ae)


@dataclass(frozen=True)
class SuperposedDrive:
    """Separated-envelope form of LO + signal at the atoms."""

    omega_l: float
    omega_x: float
    fdelta: float
    theta_delta: float

    def omega_rf(self, t):
        """Instantaneous RF Rabi frequency along a time grid."""
        return self.omega_l + self.omega_x * np.cos(
            2.0 * np.pi * self.fdelta * np.asarray(t) + self.theta_delta)


def tone_power(amplitude_U: float, aperture: float) -> float:
    """Plane-wave power through an aperture, c*eps0*Ae*U^2/2."""
    return 0.5 * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY * aperture * amplitude_U**2


def rabi_from_field(amplitude_U, dipole_mu: float):
    """Rabi frequency mu*U/hbar (rad/s) of a field on a dipole transition."""
    if np.any(np.asarray(amplitude_U) < 0):
        raise RaqrError("field amplitude must be >= 0")
    return dipole_mu * amplitude_U / REDUCED_PLANCK


def superpose(x: RfTone, y: RfTone, dipole_mu34: float) -> SuperposedDrive:
    """Combine a weak signal tone with a strong LO tone into the
    slowly-varying Rabi drive Omega_l + Omega_x cos(2 pi f_delta t + theta).

    The envelope keeps the first-order term of the exact beat
    sqrt(Ux^2 + Uy^2 + 2 Ux Uy cos(.)); the superposed carrier keeps the LO
    phase.  Requires the signal Rabi frequency at least a factor 10 below
    the LO's; a warning is emitted already above a factor 100.
    """
    fdelta = x.frequency - y.frequency
    theta_delta = x.phase - y.phase
    omega_l = rabi_from_field(y.amplitude_U, dipole_mu34)
    omega_x = rabi_from_field(x.amplitude_U, dipole_mu34)
    if omega_x > omega_l / 10.0:
        raise WeakLoViolation(
            f"signal Rabi {omega_x:.3e} exceeds a tenth of the LO's {omega_l:.3e}")
    if omega_x > omega_l / 100.0:
        warnings.warn("signal within a factor 100 of the LO; linearized "
                      "envelope error grows as Ux^2/(2 Uy)", stacklevel=2)
    return SuperposedDrive(omega_l, omega_x, fdelta, theta_delta)


def exact_beat_envelope(ux: float, uy: float, fdelta: float,
                        theta_delta: float, t) -> np.ndarray:
    """Exact amplitude of the two-tone superposition along a time grid."""
    beat = np.cos(2.0 * np.pi * fdelta * np.asarray(t) + theta_delta)
    return np.sqrt(ux**2 + uy**2 + 2.0 * ux * uy * beat)


def effective_aperture_iso(frequency: float) -> float:
    """Effective aperture lambda^2/(4 pi) of an isotropic antenna."""
    if frequency <= 0:
        raise RaqrError("frequency must be > 0")
    lam = SPEED_OF_LIGHT / frequency
    return lam**2 / (4.0 * math.pi)


def large_scale_fading_db(distance_L: float, pathloss_exponent_beta: float) -> float:
    """Free-space large-scale fading, -30 + 10*beta*log10(1/L) dB."""
    if distance_L <= 0:
        raise RaqrError("distance must be > 0")
    return -30.0 + 10.0 * pathloss_exponent_beta * math.log10(1.0 / distance_L)


def free_space_rx_amplitude(distance_L: float, pathloss_exponent_beta: float,
                            tx_reference_dbvm: float = DEFAULT_TX_REFERENCE_DBVM
                            ) -> tuple[float, float]:
    """Received field amplitude after large-scale fading.

    Returns ``(amplitude V/m, amplitude dBV/m)``.  The default transmit
    reference puts the standard 1500 m, exponent-2 link at -71.8 dBV/m.
    """
    dbvm = tx_reference_dbvm + large_scale_fading_db(distance_L,
                                                     pathloss_exponent_beta)
    return dbvm_to_field(dbvm), dbvm


def default_rx_amplitude() -> float:
    """Received RF amplitude (V/m) of the standard link preset."""
    return free_space_rx_amplitude(1500.0, 2.0)[0]


__all__ = [
    "RfTone", "SuperposedDrive", "tone_power", "rabi_from_field", "superpose",
    "exact_beat_envelope", "effective_aperture_iso", "large_scale_fading_db",
    "free_space_rx_amplitude", "default_rx_amplitude", "field_to_dbvm",
    "DEFAULT_TX_REFERENCE_DBVM",
]
