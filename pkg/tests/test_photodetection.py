import math

import numpy as np
import pytest

from raqr.chain import operating_point, with_overrides
from raqr.constants import TWO_PI
from raqr.errors import RaqrError, ZeroReference
from raqr.optics import beat_time_grid
from raqr.photodetection import (
    bcod_exact,
    bcod_linearized,
    diod_exact,
    diod_linearized,
    linearized_response,
    normalized_approx_error,
    phase_factor,
    responsivity,
)

ETA1 = 0.8
GAIN = 1000.0


@pytest.fixture(scope="module")
def tgrid(laser=None):
    return beat_time_grid(150e3)


def test_responsivity_zero():
    assert responsivity(0.0, 3.5e14) == 0.0


def test_responsivity_reference_value():
    fp = 299792458.0 / 852e-9
    assert responsivity(ETA1, fp) == pytest.approx(0.550, rel=2e-3)


def test_responsivity_inverse_in_frequency():
    assert responsivity(ETA1, 7e14) == pytest.approx(
        responsivity(ETA1, 3.5e14) / 2, rel=1e-12)


def test_diod_dc_only_without_signal(vapor, laser, tgrid):
    out = diod_exact(vapor, laser, 0.0, tgrid, ETA1, GAIN)
    assert np.allclose(out.ac_waveform, 0.0, atol=1e-15 * out.dc_volts)
    assert out.dc_volts > 0


def test_diod_gain_scaling(vapor, laser, tgrid):
    lo = diod_exact(vapor, laser, 1e-4, tgrid, ETA1, GAIN)
    hi = diod_exact(vapor, laser, 1e-4, tgrid, ETA1, 2 * GAIN)
    assert hi.dc_volts == pytest.approx(math.sqrt(2) * lo.dc_volts, rel=1e-12)


def test_diod_envelope_constant(vapor, laser, tgrid):
    """Fixed detunings: the AC oscillates at the beat but its envelope
    (per-period extrema) stays constant across periods."""
    out = diod_exact(vapor, laser, 2e-4, tgrid, ETA1, GAIN)
    n = len(tgrid) // 3
    peaks = [out.ac_waveform[i * n:(i + 1) * n].max() for i in range(3)]
    assert max(peaks) - min(peaks) < 1e-6 * max(peaks)


def test_kappas_equal_at_zero_detuning(vapor, laser):
    rd = linearized_response(vapor, laser, "DIOD", ETA1, GAIN)
    rb = linearized_response(vapor, laser, "BCOD", ETA1, GAIN)
    assert rd.kappa == pytest.approx(rb.kappa, rel=1e-10)


def test_kappa2_dominates_generally(vapor, laser, rng):
    for _ in range(50):
        las = with_overrides(laser,
                             detuning_p=float(rng.uniform(-1e7, 1e7)),
                             detuning_c=float(rng.uniform(-1e7, 1e7)),
                             detuning_l=float(rng.uniform(-1e7, 1e7)))
        rd = linearized_response(vapor, las, "DIOD", ETA1, GAIN)
        rb = linearized_response(vapor, las, "BCOD", ETA1, GAIN)
        assert rb.kappa >= rd.kappa


def test_kappa2_strictly_larger_at_bcod_optimum(vapor, laser_bcod_opt):
    rd = linearized_response(vapor, laser_bcod_opt, "DIOD", ETA1, GAIN)
    rb = linearized_response(vapor, laser_bcod_opt, "BCOD", ETA1, GAIN)
    assert rb.kappa > rd.kappa * (1 + 1e-6)


def test_varphi1_is_zero_or_pi(vapor, laser, laser_diod_opt, laser_bcod_opt):
    for las in (laser, laser_diod_opt, laser_bcod_opt):
        r = linearized_response(vapor, las, "DIOD", ETA1, GAIN)
        assert r.varphi in (0.0, math.pi)
        assert math.cos(r.varphi)**2 == 1.0


def _ac_cos_amplitude(out, t, fdelta, theta_delta):
    """Project the mean-removed waveform onto the beat cosine; mean(cos^2)
    over whole periods is 1/2, so the amplitude is twice the cross mean."""
    ref = np.cos(TWO_PI * fdelta * t + theta_delta)
    w = out.ac_waveform - out.ac_waveform.mean()
    return 2.0 * np.mean(w * ref)


def test_diod_slope_consistency(vapor, laser, laser_diod_opt, tgrid):
    """d(exact AC)/d(ux) at ux -> 0 equals -2 sqrt(G) alpha P1 kappa1 cosphi1."""
    for las in (laser, laser_diod_opt):
        resp = linearized_response(vapor, las, "DIOD", ETA1, GAIN)
        ux = las.lo_amplitude_Uy * 1e-5
        out = diod_exact(vapor, las, ux, tgrid, ETA1, GAIN)
        amp = _ac_cos_amplitude(out, tgrid, las.offset_frequency_fdelta, 0.0)
        alpha = responsivity(ETA1, 299792458.0 / las.probe_wavelength)
        expected = (-2.0 * math.sqrt(GAIN) * alpha * resp.probe_out_power
                    * resp.kappa * math.cos(resp.varphi)) * ux
        assert amp == pytest.approx(expected, rel=1e-4)


def test_bcod_slope_consistency(vapor, laser, laser_bcod_opt, tgrid):
    for las in (laser, laser_bcod_opt):
        resp = linearized_response(vapor, las, "BCOD", ETA1, GAIN)
        ux = las.lo_amplitude_Uy * 1e-5
        out = bcod_exact(vapor, las, ux, tgrid, ETA1, GAIN)
        amp = _ac_cos_amplitude(out, tgrid, las.offset_frequency_fdelta, 0.0)
        alpha = responsivity(ETA1, 299792458.0 / las.probe_wavelength)
        expected = (-2.0 * math.sqrt(GAIN) * alpha
                    * math.sqrt(las.local_optical_power_Pl
                                * resp.probe_out_power)
                    * resp.kappa * math.cos(resp.varphi)) * ux
        assert amp == pytest.approx(expected, rel=1e-4)


def test_bcod_quadrature_null(vapor, laser, tgrid):
    op = operating_point(vapor, laser)
    out = bcod_exact(vapor, laser, 0.0, tgrid, ETA1, GAIN,
                     phi_l=op.probe_out_phase + math.pi / 2)
    assert out.dc_volts == pytest.approx(0.0, abs=1e-12)


def test_bcod_in_phase_dc(vapor, laser, tgrid):
    op = operating_point(vapor, laser)
    alpha = responsivity(ETA1, 299792458.0 / laser.probe_wavelength)
    out = bcod_exact(vapor, laser, 0.0, tgrid, ETA1, GAIN,
                     phi_l=op.probe_out_phase)
    expected = (2 * math.sqrt(GAIN) * alpha
                * math.sqrt(laser.local_optical_power_Pl
                            * op.probe_out_power))
    assert out.dc_volts == pytest.approx(expected, rel=1e-12)


def test_phase_factor_limits():
    assert phase_factor(0.4, 0.0) == pytest.approx(np.exp(-0.4j), rel=1e-12)
    assert abs(phase_factor(0.4, math.pi / 2)) < 1e-15
    for phi in np.linspace(0, 2 * math.pi, 17):
        assert abs(phase_factor(1.1, phi)) <= 1.0 + 1e-12


def test_gain_ratio_bcod_over_diod(vapor, laser):
    rd = linearized_response(vapor, laser, "DIOD", ETA1, GAIN)
    rb = linearized_response(vapor, laser, "BCOD", ETA1, GAIN)
    assert rb.gain_rho / rd.gain_rho == pytest.approx(
        laser.local_optical_power_Pl / rd.probe_out_power, rel=1e-10)
    assert rb.gain_rho > rd.gain_rho


def test_normalized_error_trivial_cases(rng):
    w = rng.normal(size=300)
    assert normalized_approx_error(w, w) == 0.0
    centered = w - w.mean()
    assert normalized_approx_error(w, np.zeros_like(w)) == pytest.approx(1.0)
    with pytest.raises(ZeroReference):
        normalized_approx_error(np.ones(10), np.ones(10))
    with pytest.raises(RaqrError):
        normalized_approx_error(np.ones(10), np.ones(9))
    assert centered is not None


def test_linearization_error_small_and_growing(vapor, laser, tgrid):
    uy = laser.lo_amplitude_Uy
    errs = {}
    for scheme, exact, lin in (("DIOD", diod_exact, diod_linearized),
                               ("BCOD", bcod_exact, bcod_linearized)):
        e_small = normalized_approx_error(
            exact(vapor, laser, uy / 100, tgrid, ETA1, GAIN).ac_waveform,
            lin(vapor, laser, uy / 100, tgrid, ETA1, GAIN)[1].ac_waveform)
        e_large = normalized_approx_error(
            exact(vapor, laser, uy / 2, tgrid, ETA1, GAIN).ac_waveform,
            lin(vapor, laser, uy / 2, tgrid, ETA1, GAIN)[1].ac_waveform)
        assert e_small < 1e-2
        assert e_large > e_small
        errs[scheme] = (e_small, e_large)
    assert errs["DIOD"][0] != errs["BCOD"][0]
