"""Noise powers, SNR in every regime, the classical single-antenna
baseline, SNR ratios, and sensitivities.

Regime conventions: the quantum-projection floor (SQL) keeps only atomic
projection noise and is scheme independent; the photon-shot limit (PSL)
keeps only shot noise; the total-noise SNR carries projection, shot and
Johnson noise together.  All dB values use 10 log10 for power quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chain import probe_frequency
from .config import (
    AtomicVaporConfig,
    LaserRfConfig,
    ReceiverChainConfig,
    blackbody_dephasing,
    natural_dephasing,
)
from .constants import (
    BOLTZMANN,
    ELEMENTARY_CHARGE,
    FREE_SPACE_IMPEDANCE,
    REDUCED_PLANCK,
    SPEED_OF_LIGHT,
    VACUUM_PERMITTIVITY,
    linear_to_db,
)
from .errors import InfiniteSnr, MissingLifetimeConstants, RaqrError
from .frontend import effective_aperture_iso
from .photodetection import LinearizedResponse, linearized_response, responsivity

_CEPS0 = SPEED_OF_LIGHT * VACUUM_PERMITTIVITY


@dataclass(frozen=True)
class NoiseBreakdown:
    """Baseband noise powers (W) and the complex-noise variance."""

    qpn: float
    psn: float
    itn: float
    sigma_w_sq: float
    scheme: str

    def __post_init__(self) -> None:
        if min(self.qpn, self.psn, self.itn) < 0:
            raise RaqrError("noise powers must be non-negative")
        total = (self.qpn + self.psn + self.itn) / 2.0
        if self.sigma_w_sq != total:
            raise RaqrError("sigma_w_sq must equal (qpn + psn + itn)/2")


@dataclass(frozen=True)
class ClassicalRxConfig:
    """Single-antenna RF baseline parameters."""

    eta0: float
    G_ant: float
    G_LNA: float
    F: float
    T_BG: float
    A_iso: float

    @classmethod
    def from_chain(cls, chain: ReceiverChainConfig, fc: float
                   ) -> "ClassicalRxConfig":
        return cls(chain.antenna_efficiency_eta0, chain.antenna_gain_Gant,
                   chain.classical_lna_gain, chain.noise_figure_F,
                   chain.background_temperature_TBG,
                   effective_aperture_iso(fc))


@dataclass(frozen=True)
class SnrReport:
    """All headline figures for one operating point (dB; V/m/sqrt(Hz))."""

    snr_total: float
    snr_sql: float
    snr_psl: float
    snr_classical: float
    ratio_bcod_diod: float
    ratio0_sql: float
    ratio0_psl: float
    sensitivity_sql: float
    sensitivity_psl: float
    sensitivity_total: float
    sensitivity_classical: float


def h_sq_ps_from_amplitude(ux: float) -> float:
    """|h|^2 Ps of a received tone of amplitude ux: ux^2 / (2 Z0)."""
    return ux**2 / (2.0 * FREE_SPACE_IMPEDANCE)


def dephasing(vapor: AtomicVaporConfig) -> tuple[float, float, float]:
    """(natural, blackbody, total) dephasing rate.

    A directly supplied total rate overrides the lifetime-constant path.
    """
    if vapor.total_dephasing_Gamma2 > 0:
        g_bbr = blackbody_dephasing(vapor.principal_quantum_number_n,
                                    vapor.room_temperature)
        g_nat = (natural_dephasing(vapor.principal_quantum_number_n,
                                   vapor.lifetime_tau0,
                                   vapor.lifetime_exponent_u)
                 if vapor.lifetime_tau0 and vapor.lifetime_exponent_u
                 else vapor.total_dephasing_Gamma2 - g_bbr)
        return g_nat, g_bbr, vapor.total_dephasing_Gamma2
    if not (vapor.lifetime_tau0 and vapor.lifetime_exponent_u):
        raise MissingLifetimeConstants(
            "need either a total dephasing rate or (tau0, u)")
    g_nat = natural_dephasing(vapor.principal_quantum_number_n,
                              vapor.lifetime_tau0, vapor.lifetime_exponent_u)
    g_bbr = blackbody_dephasing(vapor.principal_quantum_number_n,
                                vapor.room_temperature)
    return g_nat, g_bbr, g_nat + g_bbr


def rydberg_cylinder_volume(fwhm_Fp: float, cell_length_d: float) -> float:
    """Volume of the prepared-atom cylinder, pi * Fp^2 * d.

    The effective cylinder radius is the beam FWHM itself; together with
    the coherence time 1/Gamma2 this reproduces the published
    projection-noise figures (see the calibration notes).
    """
    return math.pi * fwhm_Fp**2 * cell_length_d


def atom_count(vapor: AtomicVaporConfig, laser: LaserRfConfig,
               cell_length_d: float | None = None) -> float:
    """Number of participating Rydberg atoms, Upsilon * N0 * V."""
    d = vapor.cell_length_d if cell_length_d is None else cell_length_d
    return (vapor.population_rate_Y * vapor.atomic_density_N0
            * rydberg_cylinder_volume(laser.fwhm_Fp, d))


def sql_field_density(vapor: AtomicVaporConfig, laser: LaserRfConfig) -> float:
    """Projection-noise field floor per root hertz, hbar/(mu34 sqrt(N T2))."""
    n = atom_count(vapor, laser)
    return REDUCED_PLANCK / (vapor.dipole_mu34
                             * math.sqrt(n * vapor.coherence_time_T2))


def qpn_power(gain_rho: float, cos_sq_varphi: float, u_sql_per_rthz: float,
              bandwidth: float) -> float:
    """Projection-noise power after amplification across the bandwidth."""
    return (gain_rho * _CEPS0 * cos_sq_varphi * u_sql_per_rthz**2 * bandwidth)


def psn_power(scheme: str, alpha: float, probe_out_power: float,
              local_power: float, lna_gain: float, bandwidth: float) -> float:
    """Shot-noise power 2 q B Ibar G; the balanced scheme adds both arms."""
    if scheme == "DIOD":
        current = alpha * probe_out_power
    elif scheme == "BCOD":
        current = alpha * (local_power + probe_out_power)
    else:
        raise RaqrError(f"unknown scheme {scheme!r}")
    return 2.0 * ELEMENTARY_CHARGE * bandwidth * current * lna_gain


def itn_power(lna_temperature: float, bandwidth: float, lna_gain: float) -> float:
    """Johnson noise k_B T B G referred after the amplifier."""
    return BOLTZMANN * lna_temperature * bandwidth * lna_gain


def noise_breakdown(vapor: AtomicVaporConfig, laser: LaserRfConfig,
                    chain: ReceiverChainConfig,
                    resp: LinearizedResponse | None = None,
                    maximize_phase: bool = True) -> NoiseBreakdown:
    """All three baseband noise terms at the operating point."""
    if resp is None:
        resp = linearized_response(vapor, laser, chain.scheme,
                                   chain.quantum_efficiency_eta1,
                                   chain.lna_gain_G,
                                   maximize_phase=maximize_phase)
    alpha = responsivity(chain.quantum_efficiency_eta1, probe_frequency(laser))
    qpn = qpn_power(resp.gain_rho, math.cos(resp.varphi)**2,
                    sql_field_density(vapor, laser), laser.bandwidth_B)
    psn = psn_power(resp.scheme, alpha, resp.probe_out_power,
                    laser.local_optical_power_Pl, chain.lna_gain_G,
                    laser.bandwidth_B)
    itn = itn_power(chain.lna_temperature_T, laser.bandwidth_B,
                    chain.lna_gain_G)
    return NoiseBreakdown(qpn, psn, itn, (qpn + psn + itn) / 2.0, resp.scheme)


def snr_total(vapor: AtomicVaporConfig, laser: LaserRfConfig,
              chain: ReceiverChainConfig, h_sq_ps: float,
              maximize_phase: bool = True) -> float:
    """Total-noise SNR (dB) of the sampled narrowband output."""
    resp = linearized_response(vapor, laser, chain.scheme,
                               chain.quantum_efficiency_eta1,
                               chain.lna_gain_G, maximize_phase=maximize_phase)
    noise = noise_breakdown(vapor, laser, chain, resp=resp)
    total = noise.qpn + noise.psn + noise.itn
    if total == 0.0:
        raise InfiniteSnr("all noise contributions vanished")
    cos_sq = math.cos(resp.varphi)**2
    snr = 2.0 * resp.gain_rho * cos_sq * h_sq_ps / total
    return linear_to_db(snr)


def _psl_snr_linear(alpha: float, probe_out_power, kappa, h_sq_ps: float,
                    bandwidth: float):
    return (4.0 * alpha * FREE_SPACE_IMPEDANCE / ELEMENTARY_CHARGE
            * probe_out_power * kappa**2 * h_sq_ps / bandwidth)


def snr_psl(vapor: AtomicVaporConfig, laser: LaserRfConfig, scheme: str,
            eta1: float, h_sq_ps: float) -> float:
    """Photon-shot-limited SNR (dB), strong-local-beam form."""
    resp = linearized_response(vapor, laser, scheme, eta1, 1.0)
    alpha = responsivity(eta1, probe_frequency(laser))
    return linear_to_db(_psl_snr_linear(alpha, resp.probe_out_power,
                                        resp.kappa, h_sq_ps,
                                        laser.bandwidth_B))


def snr_sql(vapor: AtomicVaporConfig, laser: LaserRfConfig,
            h_sq_ps: float) -> float:
    """Projection-noise-limited SNR (dB); identical for both schemes."""
    n = atom_count(vapor, laser)
    snr = (2.0 * FREE_SPACE_IMPEDANCE
           * (vapor.dipole_mu34 / REDUCED_PLANCK)**2
           * n * vapor.coherence_time_T2 * h_sq_ps / laser.bandwidth_B)
    return linear_to_db(snr)


def classical_snr(cfg: ClassicalRxConfig, h_sq_ps: float,
                  bandwidth: float) -> float:
    """SNR (dB) of the single-antenna RF baseline."""
    snr = (cfg.eta0 * cfg.A_iso * cfg.G_ant * h_sq_ps
           / (BOLTZMANN * cfg.T_BG * bandwidth * cfg.F))
    return linear_to_db(snr)


def rf_noise_power_dbm_per_hz(bandwidth: float, noise_figure_db: float,
                              lna_gain_db: float) -> float:
    """Classical receiver noise power: -174 dBm/Hz + 10 log B + NF + G_LNA."""
    return -174.0 + 10.0 * math.log10(bandwidth) + noise_figure_db + lna_gain_db


def snr_ratios(vapor: AtomicVaporConfig, laser: LaserRfConfig,
               chain: ReceiverChainConfig) -> tuple[float, float, float]:
    """(balanced/single-diode ratio, SQL/classical, PSL/classical), all dB.

    The first is the exact total-noise quotient; the channel and transmit
    terms cancel in all three.
    """
    eta1 = chain.quantum_efficiency_eta1
    g = chain.lna_gain_G
    alpha = responsivity(eta1, probe_frequency(laser))
    usql = sql_field_density(vapor, laser)
    rd = linearized_response(vapor, laser, "DIOD", eta1, g)
    rb = linearized_response(vapor, laser, "BCOD", eta1, g,
                             maximize_phase=True)
    p1 = rd.probe_out_power
    pl = laser.local_optical_power_Pl
    kbt = BOLTZMANN * chain.lna_temperature_T
    num = (_CEPS0 * usql**2
           + _CEPS0 * ELEMENTARY_CHARGE / (2.0 * alpha * p1 * rd.kappa**2)
           + kbt / rd.gain_rho)
    den = (_CEPS0 * usql**2
           + _CEPS0 * ELEMENTARY_CHARGE * (1.0 + p1 / pl)
           / (2.0 * alpha * p1 * rb.kappa**2)
           + kbt / rb.gain_rho)
    ratio_bd = linear_to_db(num / den)

    cfg = ClassicalRxConfig.from_chain(chain, laser.carrier_frequency_fc)
    ap = math.pi * laser.fwhm_Fp**2
    nbar = vapor.population_rate_Y * vapor.atomic_density_N0
    gamma2_tot = 1.0 / vapor.coherence_time_T2
    ratio0_sql = (2.0 * FREE_SPACE_IMPEDANCE
                  * (vapor.dipole_mu34 / REDUCED_PLANCK)**2
                  * (nbar / gamma2_tot)
                  * (ap * vapor.cell_length_d / cfg.A_iso)
                  * (BOLTZMANN * cfg.T_BG * cfg.F / (cfg.eta0 * cfg.G_ant)))
    up_sq = rb.probe_out_power / (math.pi * _CEPS0 * laser.fwhm_Fp**2
                                  / (8.0 * math.log(2.0)))
    ap_snr = math.pi * laser.fwhm_Fp**2 / (2.0 * math.log(2.0))
    fp = probe_frequency(laser)
    kappa = rb.kappa if chain.scheme == "BCOD" else rd.kappa
    ratio0_psl = (eta1 * up_sq * kappa**2
                  / (2.0 * math.pi * REDUCED_PLANCK * fp)
                  * (ap_snr / cfg.A_iso)
                  * (BOLTZMANN * cfg.T_BG * cfg.F / (cfg.eta0 * cfg.G_ant)))
    return ratio_bd, linear_to_db(ratio0_sql), linear_to_db(ratio0_psl)


def sensitivity(regime: str, vapor: AtomicVaporConfig, laser: LaserRfConfig,
                chain: ReceiverChainConfig) -> float:
    """Minimum detectable field density (V/m/sqrt(Hz)) for a given regime.

    Defined by unit SNR; the channel term is eliminated through
    |h|^2 Ps = Ux^2 / (2 Z0).
    """
    if regime == "SQL":
        return sql_field_density(vapor, laser)
    if regime == "CLASSICAL":
        cfg = ClassicalRxConfig.from_chain(chain, laser.carrier_frequency_fc)
        return math.sqrt(2.0 * FREE_SPACE_IMPEDANCE * BOLTZMANN * cfg.T_BG
                         * cfg.F / (cfg.eta0 * cfg.A_iso * cfg.G_ant))
    eta1 = chain.quantum_efficiency_eta1
    resp = linearized_response(vapor, laser, chain.scheme, eta1,
                               chain.lna_gain_G, maximize_phase=True)
    alpha = responsivity(eta1, probe_frequency(laser))
    u_psl = math.sqrt(ELEMENTARY_CHARGE) / (
        resp.kappa * math.sqrt(2.0 * alpha * resp.probe_out_power))
    if regime == "PSL":
        return u_psl
    if regime == "TOTAL":
        usql = sql_field_density(vapor, laser)
        itn_term = (BOLTZMANN * chain.lna_temperature_T * chain.lna_gain_G
                    * FREE_SPACE_IMPEDANCE / resp.gain_rho)
        return math.sqrt(usql**2 + u_psl**2 + itn_term)
    raise RaqrError(f"unknown regime {regime!r}")


def snr_report(vapor: AtomicVaporConfig, laser: LaserRfConfig,
               chain: ReceiverChainConfig, h_sq_ps: float) -> SnrReport:
    """Assemble every headline figure at one operating point."""
    cfg = ClassicalRxConfig.from_chain(chain, laser.carrier_frequency_fc)
    ratio_bd, ratio0_sql, ratio0_psl = snr_ratios(vapor, laser, chain)
    return SnrReport(
        snr_total=snr_total(vapor, laser, chain, h_sq_ps),
        snr_sql=snr_sql(vapor, laser, h_sq_ps),
        snr_psl=snr_psl(vapor, laser, chain.scheme,
                        chain.quantum_efficiency_eta1, h_sq_ps),
        snr_classical=classical_snr(cfg, h_sq_ps, laser.bandwidth_B),
        ratio_bcod_diod=ratio_bd,
        ratio0_sql=ratio0_sql,
        ratio0_psl=ratio0_psl,
        sensitivity_sql=sensitivity("SQL", vapor, laser, chain),
        sensitivity_psl=sensitivity("PSL", vapor, laser, chain),
        sensitivity_total=sensitivity("TOTAL", vapor, laser, chain),
        sensitivity_classical=sensitivity("CLASSICAL", vapor, laser, chain),
    )
