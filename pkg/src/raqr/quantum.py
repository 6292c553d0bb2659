"""Four-level ladder response: closed-form coherence, susceptibility, and a
numerical steady-state solver used as an independent cross-check.

The closed form expresses the steady-state coherence of the probed
transition as a rational function of the squared RF Rabi frequency, with
nine polynomial coefficients in the detunings, the optical Rabi
frequencies, and the intermediate-state decay rate.  The coefficients are
transcribed term by term, without algebraic simplification, so they can be
audited against an independent derivation; only the final quartic is
evaluated Horner-style in omega_rf**2.

All rates are angular (rad/s).  Functions broadcast over numpy arrays in
``omega_rf`` and the detunings, which the parameter sweeps rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import AtomicVaporConfig
from .constants import REDUCED_PLANCK, VACUUM_PERMITTIVITY
from .errors import DegenerateDenominator, RaqrError, SingularSuperoperator

DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class RabiSet:
    """Probe, coupling and total RF-coupled Rabi frequencies (rad/s)."""

    omega_p: float
    omega_c: float
    omega_rf: float | np.ndarray

    def __post_init__(self) -> None:
        if not np.all(np.asarray(self.omega_p) > 0):
            raise RaqrError(f"omega_p = {self.omega_p!r} must be > 0")
        if not np.all(np.asarray(self.omega_c) > 0):
            raise RaqrError(f"omega_c = {self.omega_c!r} must be > 0")
        if np.any(np.asarray(self.omega_rf) < 0):
            raise RaqrError("omega_rf must be >= 0")


@dataclass(frozen=True)
class DetuningSet:
    """Probe, coupling and LO detunings (rad/s, any sign)."""

    delta_p: float | np.ndarray = 0.0
    delta_c: float | np.ndarray = 0.0
    delta_l: float | np.ndarray = 0.0

    def __post_init__(self) -> None:
        for name in ("delta_p", "delta_c", "delta_l"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise RaqrError(f"{name} must be finite")


@dataclass(frozen=True)
class DensityCoefficients:
    """The nine numerator/denominator polynomials of the coherence."""

    a1: float | np.ndarray
    a2: float | np.ndarray
    a3: float | np.ndarray
    b1: float | np.ndarray
    b2: float | np.ndarray
    b3: float | np.ndarray
    c1: float | np.ndarray
    c2: float | np.ndarray
    c3: float | np.ndarray


def density_coefficients(det: DetuningSet, omega_p, omega_c, gamma2
                         ) -> DensityCoefficients:
    """Coefficients of the quartic-over-quartic coherence in omega_rf**2."""
    dp, dc, dl = det.delta_p, det.delta_c, det.delta_l
    op, oc, g2 = omega_p, omega_c, gamma2

    a1 = -2 * dp
    a2 = (16 * dc**2 * dp + 32 * dc * dp**2 + 16 * dl * dc * dp
          - 2 * dc * oc**2 + 16 * dp**3 + 16 * dl * dp**2
          - 2 * dp * oc**2 - 2 * dl * oc**2)
    a3 = (-32 * dc**4 * dp - 64 * dc**3 * dl * dp - 128 * dc**3 * dp**2
          + 8 * dc**3 * oc**2 - 32 * dc**2 * dl**2 * dp
          - 192 * dc**2 * dl * dp**2 + 16 * dc**2 * dl * oc**2
          - 192 * dc**2 * dp**3 + 24 * dc**2 * dp * oc**2
          - 64 * dc * dl**2 * dp**2 + 8 * dc * dl**2 * oc**2
          - 192 * dc * dl * dp**3 + 32 * dc * dl * dp * oc**2
          - 128 * dc * dp**4 + 24 * dc * dp**2 * oc**2
          - 32 * dl**2 * dp**3 + 8 * dl**2 * dp * oc**2
          - 64 * dl * dp**4 + 16 * dl * dp**2 * oc**2
          - 32 * dp**5 + 8 * dp**3 * oc**2)
    b1 = g2 + 0.0 * dp
    b2 = 8 * g2 * (-dc**2 - 2 * dc * dp - dl * dc - dp**2 - dl * dp)
    b3 = (16 * g2 * dc**4 + 32 * g2 * dc**3 * dl + 64 * g2 * dc**3 * dp
          + 16 * g2 * dc**2 * dl**2 + 96 * g2 * dc**2 * dl * dp
          + 96 * g2 * dc**2 * dp**2 + 32 * g2 * dc * dl**2 * dp
          + 96 * g2 * dc * dl * dp**2 + 64 * g2 * dc * dp**3
          + 16 * g2 * dl**2 * dp**2 + 32 * g2 * dl * dp**3
          + 16 * g2 * dp**4)
    c1 = 4 * dp**2 + 2 * op**2 + g2**2
    c2 = (-32 * dc**2 * dp**2 - 16 * dc**2 * op**2 - 8 * dc**2 * g2**2
          - 64 * dc * dp**3 - 32 * dl * dc * dp**2 + 8 * dc * dp * oc**2
          - 32 * dc * dp * op**2 - 16 * dc * dp * g2**2
          - 16 * dl * dc * op**2 - 8 * dl * dc * g2**2
          - 32 * dp**4 - 32 * dl * dp**3 + 8 * dp**2 * oc**2
          - 16 * dp**2 * op**2 - 8 * dp**2 * g2**2 + 8 * dl * dp * oc**2
          - 16 * dl * dp * op**2 - 8 * dl * dp * g2**2
          + 2 * oc**2 * op**2 + 2 * op**4)
    c3 = (64 * dc**4 * dp**2 + 32 * dc**4 * op**2 + 16 * dc**4 * g2**2
          + 128 * dc**3 * dl * dp**2 + 64 * dc**3 * dl * op**2
          + 32 * dc**3 * dl * g2**2 + 256 * dc**3 * dp**3
          - 32 * dc**3 * dp * oc**2 + 128 * dc**3 * dp * op**2
          + 64 * dc**3 * dp * g2**2 + 64 * dc**2 * dl**2 * dp**2
          + 32 * dc**2 * dl**2 * op**2 + 16 * dc**2 * dl**2 * g2**2
          + 384 * dc**2 * dl * dp**3 - 64 * dc**2 * dl * dp * oc**2
          + 192 * dc**2 * dl * dp * op**2 + 96 * dc**2 * dl * dp * g2**2
          + 384 * dc**2 * dp**4 - 96 * dc**2 * dp**2 * oc**2
          + 192 * dc**2 * dp**2 * op**2 + 96 * dc**2 * dp**2 * g2**2
          + 4 * dc**2 * oc**4 + 8 * dc**2 * oc**2 * op**2
          + 8 * dc**2 * op**4 + 128 * dc * dl**2 * dp**3
          - 32 * dc * dl**2 * dp * oc**2 + 64 * dc * dl**2 * dp * op**2
          + 32 * dc * dl**2 * dp * g2**2 + 384 * dc * dl * dp**4
          - 128 * dc * dl * dp**2 * oc**2 + 192 * dc * dl * dp**2 * op**2
          + 96 * dc * dl * dp**2 * g2**2 + 8 * dc * dl * oc**4
          + 16 * dc * dl * oc**2 * op**2 + 8 * dc * dl * op**4
          + 256 * dc * dp**5 - 96 * dc * dp**3 * oc**2
          + 128 * dc * dp**3 * op**2 + 64 * dc * dp**3 * g2**2
          + 8 * dc * dp * oc**4 + 16 * dc * dp * oc**2 * op**2
          + 16 * dc * dp * op**4 + 64 * dl**2 * dp**4
          - 32 * dl**2 * dp**2 * oc**2 + 32 * dl**2 * dp**2 * op**2
          + 16 * dl**2 * dp**2 * g2**2 + 4 * dl**2 * oc**4
          + 8 * dl**2 * oc**2 * op**2 + 4 * dl**2 * op**4
          + 128 * dl * dp**5 - 64 * dl * dp**3 * oc**2
          + 64 * dl * dp**3 * op**2 + 32 * dl * dp**3 * g2**2
          + 8 * dl * dp * oc**4 + 16 * dl * dp * oc**2 * op**2
          + 8 * dl * dp * op**4 + 64 * dp**6 - 32 * dp**4 * oc**2
          + 32 * dp**4 * op**2 + 16 * dp**4 * g2**2 + 4 * dp**2 * oc**4
          + 8 * dp**2 * oc**2 * op**2 + 8 * dp**2 * op**4)
    return DensityCoefficients(a1, a2, a3, b1, b2, b3, c1, c2, c3)


def _rational_parts(coeffs: DensityCoefficients, omega_rf):
    o2 = np.asarray(omega_rf) ** 2
    num_re = (coeffs.a1 * o2 + coeffs.a2) * o2 + coeffs.a3
    num_im = (coeffs.b1 * o2 + coeffs.b2) * o2 + coeffs.b3
    den = (coeffs.c1 * o2 + coeffs.c2) * o2 + coeffs.c3
    return num_re, num_im, den


def rho21(rabi: RabiSet, det: DetuningSet, gamma2: float):
    """Steady-state coherence of the probed transition (closed form)."""
    coeffs = density_coefficients(det, rabi.omega_p, rabi.omega_c, gamma2)
    num_re, num_im, den = _rational_parts(coeffs, rabi.omega_rf)
    if np.any(np.abs(den) < DENOMINATOR_FLOOR):
        raise DegenerateDenominator(
            "coherence denominator below 1e-300 (zero drive at zero detunings)")
    out = rabi.omega_p * (num_re - 1j * num_im) / den
    return complex(out) if np.ndim(out) == 0 else out


def susceptibility(rabi: RabiSet, det: DetuningSet, vapor: AtomicVaporConfig):
    """Complex susceptibility of the vapor seen by the probe beam.

    Proportional to the coherence through the participating density
    (``response_fraction * N0``) and the probe dipole moment.
    """
    n_eff = vapor.response_fraction * vapor.atomic_density_N0
    pref = -2.0 * n_eff * vapor.dipole_mu12**2 / (
        VACUUM_PERMITTIVITY * REDUCED_PLANCK * rabi.omega_p)
    return pref * rho21(rabi, det, vapor.decay_gamma2)


def susceptibility_derivative(omega_l, det: DetuningSet,
                              vapor: AtomicVaporConfig,
                              omega_p: float, omega_c: float):
    """Analytic d(chi)/d(omega_rf) at the LO operating point.

    Quotient-rule form with the same nine coefficients; units 1/(rad/s).
    """
    if np.any(np.asarray(omega_l) <= 0):
        raise RaqrError("omega_l must be > 0")
    coeffs = density_coefficients(det, omega_p, omega_c, vapor.decay_gamma2)
    o2 = np.asarray(omega_l) ** 2
    num_re, num_im, den = _rational_parts(coeffs, omega_l)
    if np.any(np.abs(den) < DENOMINATOR_FLOOR):
        raise DegenerateDenominator("susceptibility derivative at 0/0 point")
    n_eff = vapor.response_fraction * vapor.atomic_density_N0
    pref = (4.0 * n_eff * vapor.dipole_mu12**2
            / (VACUUM_PERMITTIVITY * REDUCED_PLANCK)) * np.asarray(omega_l)
    dden = 2 * coeffs.c1 * o2 + coeffs.c2
    re = -pref * ((2 * coeffs.a1 * o2 + coeffs.a2) / den - num_re * dden / den**2)
    im = pref * ((2 * coeffs.b1 * o2 + coeffs.b2) / den - num_im * dden / den**2)
    out = re + 1j * im
    return complex(out) if np.ndim(out) == 0 else out


def build_hamiltonian(rabi: RabiSet, det: DetuningSet) -> np.ndarray:
    """Rotating-frame Hamiltonian of the ladder scheme (units of rad/s)."""
    dp, dc, dl = det.delta_p, det.delta_c, det.delta_l
    return np.array([
        [0.0, rabi.omega_p / 2, 0.0, 0.0],
        [rabi.omega_p / 2, dp, rabi.omega_c / 2, 0.0],
        [0.0, rabi.omega_c / 2, dp + dc, rabi.omega_rf / 2],
        [0.0, 0.0, rabi.omega_rf / 2, dp + dc + dl],
    ], dtype=complex)


def _master_equation_matrix(h: np.ndarray, gamma2: float, gamma3: float,
                            gamma4: float) -> np.ndarray:
    """Row-vectorized generator L with L @ vec(rho) = vec(drho/dt).

    Relaxation is diag(0, g2, g3, g4); the repopulation feeds the decay of
    level 2 and 4 back to the ground state and of level 3 to level 2, so
    the flow is trace preserving.  Linear in rho, including repopulation.
    """
    n = 4
    gam = np.diag([0.0, gamma2, gamma3, gamma4])
    L = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            out = -1j * (h @ e - e @ h) - 0.5 * (gam @ e + e @ gam)
            out[0, 0] += gamma2 * e[1, 1] + gamma4 * e[3, 3]
            out[1, 1] += gamma3 * e[2, 2]
            L[:, n * i + j] = out.reshape(-1)
    return L


def lindblad_steady_state(rabi: RabiSet, det: DetuningSet,
                          vapor: AtomicVaporConfig,
                          include_minor_decays: bool = False) -> np.ndarray:
    """Stationary density matrix by direct solve of the vectorized generator.

    One redundant row of L vec(rho) = 0 is replaced by the unit-trace
    constraint.  With ``include_minor_decays`` the (small) decay rates of
    the two Rydberg levels enter; otherwise they are zeroed, matching the
    assumption under which the closed form holds.
    """
    g3 = vapor.decay_gamma3 if include_minor_decays else 0.0
    g4 = vapor.decay_gamma4 if include_minor_decays else 0.0
    h = build_hamiltonian(rabi, det)
    L = _master_equation_matrix(h, vapor.decay_gamma2, g3, g4)
    a = L.copy()
    a[0, :] = 0.0
    for i in range(4):
        a[0, 4 * i + i] = 1.0
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[-1] < 1e-10 * sv[0]:
        raise SingularSuperoperator(
            "steady state is not unique (decoupled undamped levels)")
    b = np.zeros(16, dtype=complex)
    b[0] = 1.0
    rho = np.linalg.solve(a, b).reshape(4, 4)
    validate_density_matrix(rho)
    return rho


def validate_density_matrix(rho: np.ndarray, tol: float = 1e-10) -> None:
    """Assert Hermiticity, unit trace and positivity within tolerance."""
    if np.linalg.norm(rho - rho.conj().T) > tol:
        raise RaqrError("steady state is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise RaqrError(f"steady-state trace {np.trace(rho)!r} != 1")
    eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if eigs.min() < -tol:
        raise RaqrError(f"steady state has negative population {eigs.min()!r}")
