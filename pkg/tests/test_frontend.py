import numpy as np
import pytest

from raqr.constants import QA0
from raqr.errors import RaqrError, WeakLoViolation
from raqr.frontend import (
    RfTone,
    default_rx_amplitude,
    effective_aperture_iso,
    exact_beat_envelope,
    free_space_rx_amplitude,
    large_scale_fading_db,
    rabi_from_field,
    superpose,
    tone_power,
)

MU34 = 1443.45 * QA0


def test_rabi_zero_field():
    assert rabi_from_field(0.0, MU34) == 0.0


def test_rabi_reference_value():
    # 0.0661 V/m on the Rydberg transition dipole
    assert rabi_from_field(0.0661, MU34) == pytest.approx(7.67e6, rel=1e-3)


def test_rabi_linearity():
    assert rabi_from_field(0.2, MU34) == pytest.approx(
        2 * rabi_from_field(0.1, MU34), rel=1e-14)


def test_rabi_negative_field_rejected():
    with pytest.raises(RaqrError):
        rabi_from_field(-1.0, MU34)


def test_tone_power_identity():
    tone = RfTone.from_amplitude(0.05, 6.9458e9, effective_aperture_Ae=2e-4)
    assert tone.power == pytest.approx(tone_power(0.05, 2e-4), rel=1e-12)


def test_tone_inconsistent_power_rejected():
    with pytest.raises(RaqrError):
        RfTone(power=1.0, amplitude_U=0.05, frequency=1e9, phase=0.0,
               effective_aperture_Ae=2e-4)


def test_superpose_reduces_to_lo_when_signal_absent():
    y = RfTone.from_amplitude(0.0661, 6.9458e9 - 150e3)
    x = RfTone.from_amplitude(0.0, 6.9458e9)
    drive = superpose(x, y, MU34)
    assert drive.omega_x == 0.0
    t = np.linspace(0, 1e-5, 100)
    assert np.allclose(drive.omega_rf(t), drive.omega_l)


def test_superpose_phase_difference():
    y = RfTone.from_amplitude(0.0661, 6.9458e9 - 150e3, phase=0.4)
    x = RfTone.from_amplitude(1e-4, 6.9458e9, phase=0.4)
    assert superpose(x, y, MU34).theta_delta == 0.0


def test_superpose_weak_lo_violation():
    y = RfTone.from_amplitude(0.0661, 6.9458e9 - 150e3)
    x = RfTone.from_amplitude(0.02, 6.9458e9)
    with pytest.raises(WeakLoViolation):
        superpose(x, y, MU34)


def test_superpose_warns_within_factor_100():
    y = RfTone.from_amplitude(0.0661, 6.9458e9 - 150e3)
    x = RfTone.from_amplitude(0.0661 / 50, 6.9458e9)
    with pytest.warns(UserWarning):
        superpose(x, y, MU34)


def test_linearized_envelope_error_bound():
    uy, fdelta, theta = 0.0661, 150e3, 0.3
    t = np.linspace(0, 1 / fdelta, 10_000, endpoint=False)
    for ratio in (1e-3, 1e-2, 0.05):
        ux = ratio * uy
        exact = exact_beat_envelope(ux, uy, fdelta, theta, t)
        linear = uy + ux * np.cos(2 * np.pi * fdelta * t + theta)
        assert np.max(np.abs(exact - linear)) <= ux**2 / (2 * uy) * (1 + 1e-9)


def test_superposition_phase_stays_at_lo_phase():
    # complex baseband of signal + LO: phase within 0.01 rad of the LO's.
    # The exact worst case is arcsin(ux/uy), which crosses 0.01 only at
    # the ratio-100 boundary itself, so sample strictly inside the domain.
    uy, theta_y, theta_x, fdelta = 1.0, 0.7, 1.9, 150e3
    t = np.linspace(0, 1 / fdelta, 2_000, endpoint=False)
    for ratio in (105.0, 400.0):
        ux = uy / ratio
        zb = (ux * np.exp(1j * (2 * np.pi * fdelta * t + theta_x))
              + uy * np.exp(1j * theta_y))
        err = np.abs(np.angle(zb * np.exp(-1j * theta_y)))
        assert err.max() < 0.01


def test_aperture_values():
    assert effective_aperture_iso(6.9458e9) == pytest.approx(1.483e-4, rel=1e-3)
    assert effective_aperture_iso(13.4078e9) == pytest.approx(3.98e-5, rel=1e-2)


def test_aperture_scaling():
    a = effective_aperture_iso(2e9)
    assert effective_aperture_iso(8e9) == pytest.approx(a / 16, rel=1e-12)


def test_aperture_rejects_nonpositive():
    with pytest.raises(RaqrError):
        effective_aperture_iso(0.0)


def test_fading_at_one_metre():
    assert large_scale_fading_db(1.0, 2.0) == pytest.approx(-30.0)


def test_fading_ten_metres():
    assert large_scale_fading_db(10.0, 2.0) == pytest.approx(-50.0)


def test_default_link_amplitude():
    u, dbvm = free_space_rx_amplitude(1500.0, 2.0)
    assert dbvm == pytest.approx(-71.8, abs=1e-9)
    assert u == pytest.approx(10 ** (-71.8 / 20), rel=1e-12)
    assert default_rx_amplitude() == pytest.approx(u)


def test_fading_rejects_nonpositive_distance():
    with pytest.raises(RaqrError):
        large_scale_fading_db(0.0, 2.0)
