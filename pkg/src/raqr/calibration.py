"""Effective-model calibration constants.

The closed-form four-level response, taken together with the published
cesium beam/cell parameters, leaves two effective quantities that the
receiver chain needs but that are not fixed unambiguously by first
principles:

``RABI_WAIST_SCALE``
    Multiplier applied to the optical (probe/coupling) Rabi frequencies
    obtained from beam power through the Gaussian-beam peak-field relation.
    The default, 2/sqrt(2 ln 2) ~ 1.6986, is what one gets by treating half
    the FWHM as the effective Gaussian waist: the atoms in the beam core see
    a field that much above the FWHM-averaged value.  With this scale the
    model's detuning response reproduces the reported jointly optimized
    operating point of the 47D5/2 -> 48P3/2 receiver (probe detuning near
    -0.9 MHz for single-photodiode readout; coupling detuning near +1.8 MHz
    for balanced readout).

``RESPONSE_FRACTION``
    Fraction of the vapor density that contributes to the dielectric
    response of the probe transition.  A room-temperature cell at
    4.89e10 cm^-3 over 10 cm would otherwise be opaque at the operating
    point (optical depth of order 10^2), which contradicts the reported
    optical readout; of the same order as the 1% Rydberg population rate,
    the default 0.6% reproduces the reported photon-shot-limit gains and
    sensitivity within their quoted precision.

The LO/RF Rabi conversion Omega = mu * U / hbar is exact and carries no
calibration factor.  Both knobs can be overridden per config
(``rabi_waist_scale``, ``response_fraction`` keys).
"""

from __future__ import annotations

import math

RABI_WAIST_SCALE: float = 2.0 / math.sqrt(2.0 * math.log(2.0))

RESPONSE_FRACTION: float = 0.006
