"""Physical constants and unit helpers.

Safe to import from any layer: only primitive constants and pure conversion
functions live here. All values are CODATA via scipy.constants.
"""

from __future__ import annotations

import math

from scipy.constants import (
    c as SPEED_OF_LIGHT,
    e as ELEMENTARY_CHARGE,
    epsilon_0 as VACUUM_PERMITTIVITY,
    fine_structure as FINE_STRUCTURE,
    h as PLANCK,
    hbar as REDUCED_PLANCK,
    k as BOLTZMANN,
    physical_constants,
)

BOHR_RADIUS: float = physical_constants["Bohr radius"][0]

#: Impedance of free space, 1/(c * eps0) ~ 376.73 Ohm.
FREE_SPACE_IMPEDANCE: float = 1.0 / (SPEED_OF_LIGHT * VACUUM_PERMITTIVITY)

#: One dipole-moment atomic unit, q * a0, in C*m.
QA0: float = ELEMENTARY_CHARGE * BOHR_RADIUS

TWO_PI = 2.0 * math.pi

#: FWHM of a Gaussian over its 1/e^2-style radius used here: Fp = r0 * sqrt(2 ln 2).
FWHM_PER_RADIUS: float = math.sqrt(2.0 * math.log(2.0))


def db_to_linear(db: float) -> float:
    """Power ratio from decibels."""
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    """Decibels from a power ratio."""
    return 10.0 * math.log10(x)


def field_to_dbvm(u: float) -> float:
    """Field amplitude (V/m) to dBV/m (20 log10)."""
    return 20.0 * math.log10(u)


def dbvm_to_field(db: float) -> float:
    """dBV/m to field amplitude in V/m."""
    return 10.0 ** (db / 20.0)


def per_m_to_per_cm(x: float) -> float:
    """Convert a per-metre field quantity (e.g. V/m/sqrt(Hz)) to per-centimetre."""
    return x / 100.0
