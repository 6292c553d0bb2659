"""Configuration ingestion: key=value parsing, unit conversion, presets.

All frequency-like rates (Rabi, detuning, decay, dephasing) are stored as
angular frequencies in rad/s.  Config files give them in ordinary-frequency
units (Hz, kHz, MHz, ...) and they are multiplied by 2*pi on load under the
default ``angular`` convention.  Setting ``convention = ordinary`` in a
config (or passing it to a preset) instead takes printed MHz-style rates at
face value as rad/s, which is how the receiver's quoted coherence time
T2 = 0.2 us pairs with a 5 MHz total dephasing rate.  Carrier frequencies,
offsets and bandwidths (fc, fl, f_delta, B) are true cyclic frequencies and
stay in Hz under either convention.

Dipole moments accept a ``qa0`` suffix (atomic units); gains and noise
figures accept ``dB`` and are stored linear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from . import calibration
from .constants import (
    BOLTZMANN,
    FINE_STRUCTURE,
    FWHM_PER_RADIUS,
    PLANCK,
    QA0,
    TWO_PI,
    db_to_linear,
)
from .errors import ConfigError

SCHEMES = ("DIOD", "BCOD")
CONVENTIONS = ("angular", "ordinary")


@dataclass(frozen=True)
class AtomicVaporConfig:
    """Vapor-cell and transition constants (SI, angular rates)."""

    cell_length_d: float
    atomic_density_N0: float
    population_rate_Y: float
    dipole_mu12: float
    dipole_mu23: float
    dipole_mu34: float
    decay_gamma2: float
    decay_gamma3: float
    decay_gamma4: float
    total_dephasing_Gamma2: float
    coherence_time_T2: float
    principal_quantum_number_n: float
    room_temperature: float
    response_fraction: float = calibration.RESPONSE_FRACTION
    lifetime_tau0: float | None = None
    lifetime_exponent_u: float | None = None


@dataclass(frozen=True)
class LaserRfConfig:
    """Probe/coupling/local-optical beams, LO and RF signal parameters."""

    probe_wavelength: float
    coupling_wavelength: float
    probe_power_P0: float
    coupling_power_Pc: float
    local_optical_power_Pl: float
    local_optical_phase_phil: float
    beam_radius_r0: float
    fwhm_Fp: float
    detuning_p: float
    detuning_c: float
    detuning_l: float
    lo_amplitude_Uy: float
    carrier_frequency_fc: float
    lo_frequency_fl: float
    offset_frequency_fdelta: float
    phase_x: float
    phase_y: float
    bandwidth_B: float
    rabi_waist_scale: float = calibration.RABI_WAIST_SCALE


@dataclass(frozen=True)
class ReceiverChainConfig:
    """Photodetection chain plus the classical single-antenna baseline."""

    scheme: str
    quantum_efficiency_eta1: float
    lna_gain_G: float
    lna_temperature_T: float
    load_resistance: float
    antenna_efficiency_eta0: float
    antenna_gain_Gant: float
    classical_lna_gain: float
    noise_figure_F: float
    background_temperature_TBG: float


# Unit kinds: how a suffixed value maps to the stored SI quantity.
_LENGTH = {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "nm": 1e-9}
_DENSITY = {"m^-3": 1.0, "cm^-3": 1e6}
_TIME = {"s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9}
_POWER = {"W": 1.0, "mW": 1e-3, "uW": 1e-6, "nW": 1e-9}
_FREQ = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9, "THz": 1e12}
_FIELD = {"V/m": 1.0, "mV/m": 1e-3, "uV/m": 1e-6, "nV/m": 1e-9}
_TEMP = {"K": 1.0}
_ANGLE = {"rad": 1.0, "deg": math.pi / 180.0}
_RES = {"Ohm": 1.0}
_DIPOLE = {"Cm": 1.0, "qa0": QA0}

_KINDS = {
    "length": _LENGTH,
    "density": _DENSITY,
    "time": _TIME,
    "power": _POWER,
    "freq": _FREQ,          # true cyclic frequency, stored in Hz
    "rate": _FREQ,          # frequency-like rate, stored in rad/s (see load)
    "field": _FIELD,
    "temperature": _TEMP,
    "angle": _ANGLE,
    "resistance": _RES,
    "dipole": _DIPOLE,
    "plain": {},            # dimensionless; also accepts % and dB
}

# key -> (kind, (dataclass tag, field name))
_KEYS: dict[str, tuple[str, str, str]] = {
    "d": ("length", "vapor", "cell_length_d"),
    "N0": ("density", "vapor", "atomic_density_N0"),
    "Upsilon": ("plain", "vapor", "population_rate_Y"),
    "mu12": ("dipole", "vapor", "dipole_mu12"),
    "mu23": ("dipole", "vapor", "dipole_mu23"),
    "mu34": ("dipole", "vapor", "dipole_mu34"),
    "gamma2": ("rate", "vapor", "decay_gamma2"),
    "gamma3": ("rate", "vapor", "decay_gamma3"),
    "gamma4": ("rate", "vapor", "decay_gamma4"),
    "Gamma2": ("rate", "vapor", "total_dephasing_Gamma2"),
    "T2": ("time", "vapor", "coherence_time_T2"),
    "n": ("plain", "vapor", "principal_quantum_number_n"),
    "tau0": ("time", "vapor", "lifetime_tau0"),
    "u": ("plain", "vapor", "lifetime_exponent_u"),
    "T_room": ("temperature", "vapor", "room_temperature"),
    "response_fraction": ("plain", "vapor", "response_fraction"),
    "lambda_p": ("length", "laser", "probe_wavelength"),
    "lambda_c": ("length", "laser", "coupling_wavelength"),
    "P0": ("power", "laser", "probe_power_P0"),
    "Pc": ("power", "laser", "coupling_power_Pc"),
    "Pl": ("power", "laser", "local_optical_power_Pl"),
    "phi_l": ("angle", "laser", "local_optical_phase_phil"),
    "r0": ("length", "laser", "beam_radius_r0"),
    "Fp": ("length", "laser", "fwhm_Fp"),
    "Delta_p": ("rate", "laser", "detuning_p"),
    "Delta_c": ("rate", "laser", "detuning_c"),
    "Delta_l": ("rate", "laser", "detuning_l"),
    "Uy": ("field", "laser", "lo_amplitude_Uy"),
    "fc": ("freq", "laser", "carrier_frequency_fc"),
    "fl": ("freq", "laser", "lo_frequency_fl"),
    "f_delta": ("freq", "laser", "offset_frequency_fdelta"),
    "theta_x": ("angle", "laser", "phase_x"),
    "theta_y": ("angle", "laser", "phase_y"),
    "B": ("freq", "laser", "bandwidth_B"),
    "rabi_waist_scale": ("plain", "laser", "rabi_waist_scale"),
    "scheme": ("enum", "chain", "scheme"),
    "eta1": ("plain", "chain", "quantum_efficiency_eta1"),
    "G": ("plain", "chain", "lna_gain_G"),
    "T": ("temperature", "chain", "lna_temperature_T"),
    "R": ("resistance", "chain", "load_resistance"),
    "eta0": ("plain", "chain", "antenna_efficiency_eta0"),
    "G_ant": ("plain", "chain", "antenna_gain_Gant"),
    "G_LNA": ("plain", "chain", "classical_lna_gain"),
    "NF": ("plain", "chain", "noise_figure_F"),
    "T_BG": ("temperature", "chain", "background_temperature_TBG"),
    "convention": ("enum", "meta", "convention"),
}

# Rates are printed as frequencies; the 2*pi lands here on load.
_ANGULAR_RATE_KEYS = {"gamma2", "gamma3", "gamma4", "Gamma2",
                      "Delta_p", "Delta_c", "Delta_l"}

_REQUIRED = {
    "vapor": ["d", "N0", "Upsilon", "mu12", "mu23", "mu34", "gamma2",
              "gamma3", "gamma4", "n", "T_room"],
    "laser": ["lambda_p", "lambda_c", "P0", "Pc", "Pl", "Uy", "fc", "B"],
    "chain": ["scheme", "eta1", "G", "T", "R", "eta0", "G_ant", "G_LNA",
              "NF", "T_BG"],
}


def _parse_value(key: str, kind: str, token: str) -> float | str:
    parts = token.split()
    if kind == "enum":
        if len(parts) != 1:
            raise ConfigError(f"{key}: expected a bare word, got {token!r}")
        return parts[0]
    if len(parts) == 1:
        num, unit = parts[0], None
    elif len(parts) == 2:
        num, unit = parts
    else:
        raise ConfigError(f"{key}: cannot parse value {token!r}")
    try:
        value = float(num)
    except ValueError as exc:
        raise ConfigError(f"{key}: bad number {num!r}") from exc
    if kind == "plain":
        if unit is None:
            return value
        if unit == "%":
            return value / 100.0
        if unit == "dB":
            return db_to_linear(value)
        raise ConfigError(f"{key}: unrecognized unit suffix {unit!r}")
    table = _KINDS[kind]
    if unit is None:
        raise ConfigError(f"{key}: missing unit (one of {sorted(table)})")
    if kind == "rate" and unit == "rad/s":
        return value  # already angular; convention does not apply
    if unit not in table:
        raise ConfigError(f"{key}: unrecognized unit suffix {unit!r}")
    return value * table[unit]


def parse_document(text: str) -> dict[str, float | str]:
    """Parse flat key=value text into raw per-key values.

    Rates carry a ``_needs_two_pi`` marker resolved by :func:`load_config`
    once the convention is known.
    """
    raw: dict[str, float | str] = {}
    pending_rate: dict[str, bool] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, rhs = stripped.partition("=")
        key = key.strip()
        rhs = rhs.strip()
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        kind = _KEYS[key][0]
        raw[key] = _parse_value(key, kind, rhs)
        if key in _ANGULAR_RATE_KEYS:
            pending_rate[key] = not rhs.strip().endswith("rad/s")
    raw["__pending_rate__"] = pending_rate  # type: ignore[assignment]
    return raw


def _check(cond: bool, key: str, value: object, what: str) -> None:
    if not cond:
        raise ConfigError(f"{key} = {value!r}: {what}")


def _validate(vapor: AtomicVaporConfig, laser: LaserRfConfig,
              chain: ReceiverChainConfig) -> None:
    for key, val in [("d", vapor.cell_length_d),
                     ("N0", vapor.atomic_density_N0),
                     ("mu12", vapor.dipole_mu12),
                     ("mu23", vapor.dipole_mu23),
                     ("mu34", vapor.dipole_mu34),
                     ("gamma2", vapor.decay_gamma2),
                     ("Gamma2", vapor.total_dephasing_Gamma2),
                     ("T2", vapor.coherence_time_T2)]:
        _check(val > 0, key, val, "must be strictly positive")
    for key, val in [("gamma3", vapor.decay_gamma3),
                     ("gamma4", vapor.decay_gamma4)]:
        _check(val >= 0, key, val, "must be non-negative")
    _check(0 < vapor.population_rate_Y <= 1, "Upsilon",
           vapor.population_rate_Y, "must lie in (0, 1]")
    _check(0 < vapor.response_fraction <= 1, "response_fraction",
           vapor.response_fraction, "must lie in (0, 1]")
    prod = vapor.coherence_time_T2 * vapor.total_dephasing_Gamma2
    _check(abs(prod - 1.0) < 1e-9, "T2", vapor.coherence_time_T2,
           f"T2 * Gamma2 = {prod!r}, expected 1")
    for key, val in [("lambda_p", laser.probe_wavelength),
                     ("lambda_c", laser.coupling_wavelength),
                     ("P0", laser.probe_power_P0),
                     ("Pc", laser.coupling_power_Pc),
                     ("Pl", laser.local_optical_power_Pl),
                     ("r0", laser.beam_radius_r0),
                     ("Uy", laser.lo_amplitude_Uy),
                     ("fc", laser.carrier_frequency_fc),
                     ("B", laser.bandwidth_B)]:
        _check(val > 0, key, val, "must be strictly positive")
    rel = abs(laser.fwhm_Fp - laser.beam_radius_r0 * FWHM_PER_RADIUS)
    _check(rel <= 1e-12 * laser.fwhm_Fp, "Fp", laser.fwhm_Fp,
           "inconsistent with r0 * sqrt(2 ln 2)")
    fd = laser.carrier_frequency_fc - laser.lo_frequency_fl
    _check(abs(laser.offset_frequency_fdelta - fd)
           <= 1e-9 * max(1.0, abs(fd)), "f_delta",
           laser.offset_frequency_fdelta, "must equal fc - fl")
    _check(chain.scheme in SCHEMES, "scheme", chain.scheme,
           f"must be one of {SCHEMES}")
    for key, val in [("eta0", chain.antenna_efficiency_eta0),
                     ("eta1", chain.quantum_efficiency_eta1)]:
        _check(0 < val <= 1, key, val, "must lie in (0, 1]")
    for key, val in [("G", chain.lna_gain_G),
                     ("G_ant", chain.antenna_gain_Gant),
                     ("G_LNA", chain.classical_lna_gain),
                     ("NF", chain.noise_figure_F)]:
        _check(val >= 1, key, val, "must be >= 1 (linear)")
    for key, val in [("T", chain.lna_temperature_T),
                     ("T_BG", chain.background_temperature_TBG),
                     ("T_room", vapor.room_temperature)]:
        _check(val > 0, key, val, "must be positive")
    _check(chain.load_resistance > 0, "R", chain.load_resistance,
           "must be positive")


def load_config(text: str, convention: str | None = None
                ) -> tuple[AtomicVaporConfig, LaserRfConfig, ReceiverChainConfig]:
    """Build validated configs from flat key=value text.

    ``convention`` overrides any ``convention`` key in the document.
    Derived fields (Fp, fl or f_delta, T2 or Gamma2) are filled when omitted.
    """
    raw = parse_document(text)
    pending: dict[str, bool] = raw.pop("__pending_rate__")  # type: ignore[assignment]
    conv = convention or raw.pop("convention", "angular")
    raw.pop("convention", None)
    if conv not in CONVENTIONS:
        raise ConfigError(f"convention = {conv!r}: must be one of {CONVENTIONS}")
    if conv == "angular":
        for key, needs in pending.items():
            if needs:
                raw[key] = raw[key] * TWO_PI  # type: ignore[operator]

    buckets: dict[str, dict[str, float | str]] = {"vapor": {}, "laser": {}, "chain": {}}
    for key, value in raw.items():
        _, tag, field = _KEYS[key]
        buckets[tag][field] = value

    for tag, keys in _REQUIRED.items():
        for key in keys:
            field = _KEYS[key][2]
            if field not in buckets[tag]:
                raise ConfigError(f"missing required key {key!r}")

    vap = buckets["vapor"]
    las = buckets["laser"]
    ch = buckets["chain"]

    # Gamma2 <-> T2
    if "total_dephasing_Gamma2" in vap and "coherence_time_T2" not in vap:
        vap["coherence_time_T2"] = 1.0 / float(vap["total_dephasing_Gamma2"])
    elif "coherence_time_T2" in vap and "total_dephasing_Gamma2" not in vap:
        vap["total_dephasing_Gamma2"] = 1.0 / float(vap["coherence_time_T2"])
    elif "total_dephasing_Gamma2" not in vap:
        raise ConfigError("missing required key 'Gamma2' (or 'T2')")

    # r0 <-> Fp
    if "beam_radius_r0" in las and "fwhm_Fp" not in las:
        las["fwhm_Fp"] = float(las["beam_radius_r0"]) * FWHM_PER_RADIUS
    elif "fwhm_Fp" in las and "beam_radius_r0" not in las:
        las["beam_radius_r0"] = float(las["fwhm_Fp"]) / FWHM_PER_RADIUS
    elif "beam_radius_r0" not in las:
        raise ConfigError("missing required key 'r0' (or 'Fp')")

    # fc / fl / f_delta
    fc = float(las["carrier_frequency_fc"])
    if "lo_frequency_fl" in las and "offset_frequency_fdelta" not in las:
        las["offset_frequency_fdelta"] = fc - float(las["lo_frequency_fl"])
    elif "offset_frequency_fdelta" in las and "lo_frequency_fl" not in las:
        las["lo_frequency_fl"] = fc - float(las["offset_frequency_fdelta"])
    elif "lo_frequency_fl" not in las:
        raise ConfigError("missing required key 'fl' (or 'f_delta')")

    for name, default in [("detuning_p", 0.0), ("detuning_c", 0.0),
                          ("detuning_l", 0.0), ("phase_x", 0.0),
                          ("phase_y", 0.0), ("local_optical_phase_phil", 0.0)]:
        las.setdefault(name, default)

    vapor = AtomicVaporConfig(**vap)     # type: ignore[arg-type]
    laser = LaserRfConfig(**las)         # type: ignore[arg-type]
    chain = ReceiverChainConfig(**ch)    # type: ignore[arg-type]
    _validate(vapor, laser, chain)
    return vapor, laser, chain


def serialize(vapor: AtomicVaporConfig, laser: LaserRfConfig,
              chain: ReceiverChainConfig) -> str:
    """Emit canonical key=value text that reparses to identical values.

    Values are written in internal units (rad/s rates, SI lengths/powers)
    with full float repr, so load(serialize(x)) == x bit for bit.
    """
    lines = []
    by_field = {(tag, field): key for key, (_, tag, field) in _KEYS.items()}
    canon = {"length": "m", "density": "m^-3", "time": "s", "power": "W",
             "freq": "Hz", "rate": "rad/s", "field": "V/m",
             "temperature": "K", "angle": "rad", "resistance": "Ohm",
             "dipole": "Cm"}
    for tag, obj in [("vapor", vapor), ("laser", laser), ("chain", chain)]:
        for f in fields(obj):
            value = getattr(obj, f.name)
            if value is None:
                continue
            key = by_field[(tag, f.name)]
            kind = _KEYS[key][0]
            if kind == "enum":
                lines.append(f"{key} = {value}")
            elif kind == "plain":
                lines.append(f"{key} = {value!r}")
            else:
                lines.append(f"{key} = {value!r} {canon[kind]}")
    return "\n".join(lines) + "\n"


_TABLE1 = """
# vapor cell and transitions
d = 10 cm
N0 = 4.89e10 cm^-3
Upsilon = 1 %
mu12 = 2.2327 qa0
mu23 = 0.0226 qa0
mu34 = 1443.45 qa0
gamma2 = 5.2 MHz
gamma3 = 3.9 kHz
gamma4 = 1.7 kHz
Gamma2 = 5 MHz
n = 47
T_room = 290 K

# laser beams and RF signals
lambda_p = 852 nm
lambda_c = 510 nm
P0 = 20.7 uW
Pc = 17 mW
Pl = 30 mW
r0 = 1.7 mm
Uy = 0.0661 V/m
fc = 6.9458 GHz
f_delta = 150 kHz
B = 100 kHz

# antenna, LNAs, and others
scheme = BCOD
eta1 = 0.8
G = 30 dB
T = 100 K
R = 1 Ohm
eta0 = 0.7
G_ant = 5.5 dB
G_LNA = 60 dB
NF = 6 dB
T_BG = 290 K
"""

#: Classical-baseline presets: (antenna gain dB, noise figure dB).
CLASSICAL_BS = {"G_ant": 5.5, "NF": 6.0}
CLASSICAL_UE = {"G_ant": 0.0, "NF": 9.0}


def table1_text() -> str:
    """The standard cesium 47D5/2 -> 48P3/2 configuration as config text."""
    return _TABLE1


def table1_preset(convention: str = "angular", baseline: str = "BS"
                  ) -> tuple[AtomicVaporConfig, LaserRfConfig, ReceiverChainConfig]:
    """Standard receiver configuration (base-station classical baseline by
    default; ``baseline="UE"`` swaps in the user-equipment antenna/NF)."""
    vapor, laser, chain = load_config(_TABLE1, convention=convention)
    if baseline == "UE":
        chain = replace(chain,
                        antenna_gain_Gant=db_to_linear(CLASSICAL_UE["G_ant"]),
                        noise_figure_F=db_to_linear(CLASSICAL_UE["NF"]))
    elif baseline != "BS":
        raise ConfigError(f"baseline = {baseline!r}: must be 'BS' or 'UE'")
    return vapor, laser, chain


# Cs transitions for other carrier frequencies:
# mu34 (q a0), fc (GHz), Uy (V/m), P0 (uW), then detunings in MHz
# as (DIOD, BCOD) pairs for Delta_p, Delta_c, Delta_l.
TABLE2 = {
    "47D5/2-48P3/2": (1443.4, 6.9458, 0.0661, 20.7,
                      (-0.9033, -0.9133), (-0.0025, 1.8090), (0.0125, -0.0075)),
    "45D5/2-46P3/2": (1316.6, 7.9752, 0.0708, 20.3,
                      (-0.8832, -0.8932), (-0.0025, 1.7690), (0.0125, -0.0025)),
    "43D5/2-44P3/2": (1195.7, 9.2186, 0.0794, 20.6,
                      (-0.8982, -0.9083), (-0.0025, 1.7990), (0.0075, -0.0025)),
    "40D5/2-41P3/2": (1025.1, 11.6187, 0.0912, 20.4,
                      (-0.8832, -0.8932), (-0.0025, 1.7740), (0.0075, -0.0075)),
    "66S1/2-66P3/2": (2055.4, 13.4078, 0.0501, 20.4,
                      (-0.9883, -0.9883), (0.0025, 1.9291), (0.0325, -0.0225)),
    "63S1/2-63P3/2": (1862.7, 15.5513, 0.0537, 20.1,
                      (-0.9583, -0.9633), (0.0025, 1.8791), (0.0225, -0.0125)),
}


def table2_preset(transition: str, scheme: str = "DIOD",
                  convention: str = "angular"
                  ) -> tuple[AtomicVaporConfig, LaserRfConfig]:
    """Per-transition configuration: Table-1 values with the transition's
    dipole moment, carrier, LO amplitude, probe power and jointly optimized
    detunings for the requested photodetection scheme."""
    if transition not in TABLE2:
        raise ConfigError(f"unknown transition {transition!r}; "
                          f"known: {sorted(TABLE2)}")
    if scheme not in SCHEMES:
        raise ConfigError(f"scheme = {scheme!r}: must be one of {SCHEMES}")
    mu34, fc_ghz, uy, p0_uw, dps, dcs, dls = TABLE2[transition]
    i = SCHEMES.index(scheme)
    vapor, laser, _ = table1_preset(convention=convention)
    scale = TWO_PI if convention == "angular" else 1.0
    vapor = replace(vapor, dipole_mu34=mu34 * QA0)
    laser = replace(
        laser,
        carrier_frequency_fc=fc_ghz * 1e9,
        lo_frequency_fl=fc_ghz * 1e9 - laser.offset_frequency_fdelta,
        lo_amplitude_Uy=uy,
        probe_power_P0=p0_uw * 1e-6,
        detuning_p=dps[i] * 1e6 * scale,
        detuning_c=dcs[i] * 1e6 * scale,
        detuning_l=dls[i] * 1e6 * scale,
    )
    return vapor, laser


def natural_dephasing(n: float, tau0: float, u: float) -> float:
    """Dephasing from the finite Rydberg-state lifetime tau0 * n**u."""
    return 1.0 / (tau0 * n**u)


def blackbody_dephasing(n: float, t_room: float) -> float:
    """Room-temperature blackbody contribution, 4 alpha^3 kB T / (3 h n^2)."""
    return 4.0 * FINE_STRUCTURE**3 * BOLTZMANN * t_room / (3.0 * PLANCK * n**2)
