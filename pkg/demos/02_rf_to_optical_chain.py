"""From an RF tone to the output probe beam.

Builds the LO + signal superposition, drives the vapor quasi-statically
along one beat period, and tracks the probe amplitude and phase through
the cell.
"""

import numpy as np

from raqr import table1_preset
from raqr.chain import rabi_of
from raqr.frontend import (
    RfTone,
    default_rx_amplitude,
    exact_beat_envelope,
    superpose,
)
from raqr.optics import ProbeBeamState, beat_time_grid, output_amplitude, output_phase
from raqr.quantum import DetuningSet, RabiSet, susceptibility

vapor, laser, chain = table1_preset()

ux = default_rx_amplitude()
print(f"received RF amplitude: {ux:.3e} V/m "
      f"({20 * np.log10(ux):.1f} dBV/m after the 1500 m link)")

x = RfTone.from_amplitude(ux, laser.carrier_frequency_fc)
y = RfTone.from_amplitude(laser.lo_amplitude_Uy, laser.lo_frequency_fl)
drive = superpose(x, y, vapor.dipole_mu34)
print(f"LO Rabi {drive.omega_l:.4e} rad/s, signal Rabi {drive.omega_x:.4e} "
      f"rad/s, beat {drive.fdelta / 1e3:.0f} kHz")

t = beat_time_grid(drive.fdelta, periods=1.0)
env_exact = exact_beat_envelope(ux, laser.lo_amplitude_Uy, drive.fdelta,
                                drive.theta_delta, t)
env_lin = laser.lo_amplitude_Uy + ux * np.cos(
    2 * np.pi * drive.fdelta * t + drive.theta_delta)
print(f"separated-envelope error bound Ux^2/(2 Uy) = "
      f"{ux**2 / (2 * laser.lo_amplitude_Uy):.2e} V/m; "
      f"measured max {np.abs(env_exact - env_lin).max():.2e} V/m")

probe = ProbeBeamState.from_power(laser.probe_power_P0,
                                  laser.probe_wavelength, laser.fwhm_Fp)
base = rabi_of(vapor, laser)
chi = susceptibility(RabiSet(base.omega_p, base.omega_c, drive.omega_rf(t)),
                     DetuningSet(), vapor)
up = output_amplitude(probe, chi, vapor.cell_length_d, laser.probe_wavelength)
phip = output_phase(probe, chi, vapor.cell_length_d, laser.probe_wavelength)

print(f"\nprobe in:  {probe.amplitude_U:8.3f} V/m")
print(f"probe out: {up.mean():8.3f} V/m mean, beat swing "
      f"{up.max() - up.min():.3e} V/m")
print(f"dispersive phase swing: {phip.max() - phip.min():.3e} rad "
      "(zero at resonance; grows once the beams are detuned)")
