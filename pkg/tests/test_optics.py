import math

import numpy as np
import pytest

from raqr.chain import operating_point
from raqr.errors import RaqrError
from raqr.optics import (
    ProbeBeamState,
    beam_field,
    beam_power,
    beat_time_grid,
    output_amplitude,
    output_phase,
    output_probe_baseband,
)

LAMBDA_P = 852e-9
D_CELL = 0.1


@pytest.fixture
def probe():
    return ProbeBeamState.from_power(20.7e-6, LAMBDA_P, 2.0e-3, phase=0.25)


def test_power_field_round_trip():
    fp = 2.0e-3
    u = beam_field(20.7e-6, fp)
    assert beam_power(u, fp) == pytest.approx(20.7e-6, rel=1e-12)


def test_state_power_identity(probe):
    assert probe.power == pytest.approx(
        beam_power(probe.amplitude_U, probe.fwhm_Fp), rel=1e-12)


def test_state_inconsistent_power_rejected():
    with pytest.raises(RaqrError):
        ProbeBeamState(power=1.0, amplitude_U=1.0, phase=0.0,
                       frequency_fp=3.5e14, fwhm_Fp=2e-3)


def test_transparent_medium(probe):
    assert output_amplitude(probe, 0.0 + 0.0j, D_CELL, LAMBDA_P) \
        == probe.amplitude_U
    assert output_phase(probe, 0.0 + 0.0j, D_CELL, LAMBDA_P) == probe.phase


def test_unit_optical_depth(probe):
    chi = 1j * LAMBDA_P / (math.pi * D_CELL)
    up = output_amplitude(probe, chi, D_CELL, LAMBDA_P)
    assert up == pytest.approx(probe.amplitude_U / math.e, rel=1e-12)


def test_phase_shift_pi(probe):
    chi = LAMBDA_P / D_CELL + 0.0j
    assert output_phase(probe, chi, D_CELL, LAMBDA_P) \
        == pytest.approx(probe.phase + math.pi, rel=1e-12)


def test_absorption_at_bias_point(vapor, laser):
    op = operating_point(vapor, laser)
    assert op.probe_out_amplitude < beam_field(laser.probe_power_P0,
                                               laser.fwhm_Fp)


def test_absorption_monotone_in_imag_chi(probe):
    chis = 1j * np.linspace(0.0, 5e-5, 20)
    ups = np.array([output_amplitude(probe, c, D_CELL, LAMBDA_P)
                    for c in chis])
    assert np.all(np.diff(ups) < 0)


def test_baseband_identity_channel(probe):
    pb = output_probe_baseband(probe, 0.0 + 0.0j, D_CELL, LAMBDA_P)
    assert pb == pytest.approx(math.sqrt(probe.power)
                               * np.exp(1j * probe.phase), rel=1e-12)


def test_baseband_modulus_matches_power(probe, rng):
    for _ in range(20):
        chi = complex(rng.normal(0, 1e-5), abs(rng.normal(0, 1e-5)))
        pb = output_probe_baseband(probe, chi, D_CELL, LAMBDA_P)
        up = output_amplitude(probe, chi, D_CELL, LAMBDA_P)
        assert abs(pb)**2 == pytest.approx(
            float(beam_power(up, probe.fwhm_Fp)), rel=1e-12)


def test_beat_grid_resolution():
    t = beat_time_grid(150e3, periods=1.0)
    assert len(t) >= 200
    assert t[1] - t[0] == pytest.approx(1 / (257 * 150e3))


def test_beat_grid_rejects_coarse_sampling():
    with pytest.raises(RaqrError):
        beat_time_grid(150e3, samples_per_period=100)
