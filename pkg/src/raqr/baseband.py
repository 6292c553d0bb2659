"""Sampled equivalent-baseband models for communication and sensing.

The receiver imposes a gain sqrt(rho) and a phase factor Phi on the
transmitted baseband samples; fading enters as circularly symmetric
complex Gaussian taps, echoes as a delayed, Doppler-phased replica.  Every
stochastic path takes an explicit seed (or generator) so realizations are
reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT
from .errors import RaqrError


@dataclass(frozen=True)
class ChannelTap:
    """One discrete-time fading tap."""

    index_l: int
    coefficient: complex
    variance: float


@dataclass(frozen=True)
class SensingTarget:
    """A point scatterer on a pulse train."""

    nominal_range_R0: float
    velocity_v: float
    pulse_index_p: int
    pri_T: float
    path_gain_a: float

    def __post_init__(self) -> None:
        if self.nominal_range_R0 <= 0:
            raise RaqrError("range must be > 0")
        if abs(self.velocity_v) * self.pulse_index_p * self.pri_T \
                >= self.nominal_range_R0:
            raise RaqrError("target would cross the receiver within the train")


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, variance: float,
                     size=None) -> np.ndarray | complex:
    """Circularly symmetric complex Gaussian with E|x|^2 = variance."""
    scale = math.sqrt(variance / 2.0)
    out = rng.normal(0.0, scale, size=size) + 1j * rng.normal(0.0, scale,
                                                              size=size)
    return out if size is not None else complex(out)


def rayleigh_taps(variances, seed) -> list[ChannelTap]:
    """Draw one tap per variance entry, reproducibly from the seed."""
    rng = _rng(seed)
    return [ChannelTap(i, complex_gaussian(rng, var), var)
            for i, var in enumerate(variances)]


def received_tone_baseband(effective_aperture_Ae: float, h: complex,
                           s_b: complex) -> complex:
    """Antenna-side baseband sample, sqrt(Ae) * h * s_b."""
    return math.sqrt(effective_aperture_Ae) * h * s_b


def sampled_output(gain_rho: float, phase_Phi: complex,
                   effective_aperture_Ae: float, x_b: complex) -> complex:
    """Receiver output sample sqrt(rho / Ae) * Phi * x_b.

    Combined with :func:`received_tone_baseband`, the aperture cancels and
    the end-to-end map is sqrt(rho) * Phi * h * s_b.
    """
    return math.sqrt(gain_rho / effective_aperture_Ae) * phase_Phi * x_b


def comm_narrowband(s_b: complex, tap: ChannelTap, gain_rho: float,
                    phase_Phi: complex, sigma_w_sq: float, seed) -> complex:
    """One narrowband output sample with additive complex Gaussian noise."""
    w = complex_gaussian(_rng(seed), sigma_w_sq) if sigma_w_sq > 0 else 0.0
    return math.sqrt(gain_rho) * phase_Phi * tap.coefficient * s_b + w


def comm_wideband(s_b_history, taps, gain_rho: float, phase_Phi: complex,
                  sigma_w_sq: float, seed) -> complex:
    """One wideband output sample; s_b_history[l] is s_b(m - l)."""
    s_b_history = list(s_b_history)
    acc = 0.0 + 0.0j
    for tap in taps:
        if tap.index_l < len(s_b_history):
            acc += tap.coefficient * s_b_history[tap.index_l]
    w = complex_gaussian(_rng(seed), sigma_w_sq) if sigma_w_sq > 0 else 0.0
    return math.sqrt(gain_rho) * phase_Phi * acc + w


def sensing_channel(target: SensingTarget, fc: float) -> complex:
    """Echo coefficient a * exp(-j 4 pi fc (R0 - v p T) / c).

    The Doppler-advanced round-trip phase is folded into the channel, not
    into the transmit samples.
    """
    phase = (-4.0 * math.pi * fc / SPEED_OF_LIGHT
             * (target.nominal_range_R0
                - target.velocity_v * target.pulse_index_p * target.pri_T))
    return target.path_gain_a * np.exp(1j * phase)


def sensing_model(s_b: complex, target: SensingTarget, gain_rho: float,
                  phase_Phi: complex, sigma_w_sq: float, fc: float,
                  seed) -> complex:
    """One sensing output sample under the constant-envelope assumption."""
    h_sen = sensing_channel(target, fc)
    w = complex_gaussian(_rng(seed), sigma_w_sq) if sigma_w_sq > 0 else 0.0
    return math.sqrt(gain_rho) * phase_Phi * h_sen * s_b + w
