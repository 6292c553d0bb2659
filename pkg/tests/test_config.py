import math

import pytest

from raqr.config import (
    CLASSICAL_UE,
    TABLE2,
    load_config,
    serialize,
    table1_preset,
    table1_text,
    table2_preset,
)
from raqr.constants import QA0, TWO_PI
from raqr.errors import ConfigError

MINIMAL = table1_text()


def test_free_space_impedance_identity():
    from raqr.constants import (
        FREE_SPACE_IMPEDANCE,
        SPEED_OF_LIGHT,
        VACUUM_PERMITTIVITY,
    )

    product = FREE_SPACE_IMPEDANCE * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY
    assert abs(product - 1.0) < 1e-12


def test_table1_values():
    vapor, laser, chain = table1_preset()
    assert vapor.cell_length_d == 0.1
    assert vapor.atomic_density_N0 == pytest.approx(4.89e16)
    assert vapor.population_rate_Y == pytest.approx(0.01)
    assert vapor.dipole_mu34 == pytest.approx(1443.45 * QA0)
    assert vapor.decay_gamma2 == pytest.approx(TWO_PI * 5.2e6)
    assert laser.probe_power_P0 == pytest.approx(20.7e-6)
    assert laser.coupling_power_Pc == pytest.approx(17e-3)
    assert laser.local_optical_power_Pl == pytest.approx(30e-3)
    assert laser.lo_amplitude_Uy == pytest.approx(0.0661)
    assert laser.carrier_frequency_fc == pytest.approx(6.9458e9)
    assert laser.offset_frequency_fdelta == pytest.approx(150e3)
    assert laser.bandwidth_B == pytest.approx(100e3)
    assert chain.antenna_efficiency_eta0 == pytest.approx(0.7)
    assert chain.quantum_efficiency_eta1 == pytest.approx(0.8)
    assert chain.lna_gain_G == pytest.approx(1000.0)
    assert chain.classical_lna_gain == pytest.approx(1e6)
    assert chain.antenna_gain_Gant == pytest.approx(10 ** 0.55)
    assert chain.noise_figure_F == pytest.approx(10 ** 0.6)
    assert chain.lna_temperature_T == 100.0
    assert vapor.room_temperature == 290.0


def test_fwhm_derived_from_radius():
    _, laser, _ = table1_preset()
    assert laser.fwhm_Fp == pytest.approx(1.7e-3 * math.sqrt(2 * math.log(2)),
                                          rel=1e-12)


def test_lo_frequency_derived():
    _, laser, _ = table1_preset()
    assert laser.lo_frequency_fl == pytest.approx(6.9458e9 - 150e3)


def test_t2_follows_convention():
    vapor_ang, _, _ = table1_preset(convention="angular")
    assert vapor_ang.total_dephasing_Gamma2 == pytest.approx(TWO_PI * 5e6)
    assert vapor_ang.coherence_time_T2 == pytest.approx(1 / (TWO_PI * 5e6))
    vapor_ord, _, _ = table1_preset(convention="ordinary")
    assert vapor_ord.total_dephasing_Gamma2 == pytest.approx(5e6)
    assert vapor_ord.coherence_time_T2 == pytest.approx(0.2e-6)


def test_serialize_round_trip_bit_for_bit():
    loaded = load_config(MINIMAL)
    text = serialize(*loaded)
    again = load_config(text)
    assert again == loaded


def test_unit_conversion_invertible():
    value_mhz = 5.2
    stored = value_mhz * 1e6 * TWO_PI
    back = stored / TWO_PI / 1e6
    assert back == pytest.approx(value_mhz, rel=1e-12)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        load_config(MINIMAL + "\nbogus = 1\n")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate"):
        load_config(MINIMAL + "\nd = 10 cm\n")


def test_missing_required_key():
    text = "\n".join(line for line in MINIMAL.splitlines()
                     if not line.startswith("P0"))
    with pytest.raises(ConfigError, match="P0"):
        load_config(text)


def test_invariant_violation_reports_key():
    with pytest.raises(ConfigError, match="Upsilon"):
        load_config(MINIMAL.replace("Upsilon = 1 %", "Upsilon = 0"))


def test_inconsistent_t2_gamma2_rejected():
    with pytest.raises(ConfigError, match="T2"):
        load_config(MINIMAL + "\nT2 = 0.2 us\n")  # angular reading disagrees


def test_ordinary_convention_accepts_table_pairing():
    vapor, _, _ = load_config(MINIMAL + "\nT2 = 0.2 us\n",
                              convention="ordinary")
    assert vapor.coherence_time_T2 == pytest.approx(0.2e-6)


def test_bad_unit_suffix():
    with pytest.raises(ConfigError, match="unit"):
        load_config(MINIMAL.replace("d = 10 cm", "d = 10 furlong"))


def test_percent_and_db_suffixes():
    vapor, _, chain = load_config(MINIMAL)
    assert vapor.population_rate_Y == 0.01
    assert chain.lna_gain_G == pytest.approx(10 ** 3.0)


def test_table2_first_row():
    vapor, laser = table2_preset("47D5/2-48P3/2")
    assert vapor.dipole_mu34 == pytest.approx(1443.4 * QA0)
    assert laser.carrier_frequency_fc == pytest.approx(6.9458e9)
    assert laser.detuning_p == pytest.approx(-TWO_PI * 0.9033e6)


def test_table2_66s_row():
    vapor, laser = table2_preset("66S1/2-66P3/2")
    assert vapor.dipole_mu34 == pytest.approx(2055.4 * QA0)
    assert laser.carrier_frequency_fc == pytest.approx(13.4078e9)
    assert laser.lo_amplitude_Uy == pytest.approx(0.0501)


def test_table2_bcod_detuning():
    _, laser = table2_preset("63S1/2-63P3/2", scheme="BCOD")
    assert laser.detuning_p == pytest.approx(-TWO_PI * 0.9633e6)


def test_table2_unknown_transition():
    with pytest.raises(ConfigError, match="transition"):
        table2_preset("1S-2P")


def test_table2_has_six_rows():
    assert len(TABLE2) == 6


def test_ue_baseline_preset():
    _, _, chain = table1_preset(baseline="UE")
    assert chain.antenna_gain_Gant == pytest.approx(1.0)
    assert chain.noise_figure_F == pytest.approx(10 ** (CLASSICAL_UE["NF"] / 10))
