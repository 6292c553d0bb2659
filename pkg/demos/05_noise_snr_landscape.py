"""Noise budget, regime SNRs, and the classical comparison.

Reproduces the headline numbers: at an atomic density of 5e10 cm^-3 the
balanced receiver clears the 5G base-station baseline by ~27 dB in the
shot-noise limit and ~39 dB at the projection-noise floor.
"""

from dataclasses import replace


from raqr import table1_preset
from raqr.chain import with_overrides
from raqr.config import SCHEMES, TABLE2
from raqr.constants import TWO_PI, per_m_to_per_cm
from raqr.frontend import default_rx_amplitude
from raqr.performance import (
    ClassicalRxConfig,
    classical_snr,
    h_sq_ps_from_amplitude,
    noise_breakdown,
    sensitivity,
    snr_psl,
    snr_report,
    snr_sql,
    snr_total,
)

vapor, laser, chain = table1_preset()
h_sq_ps = h_sq_ps_from_amplitude(default_rx_amplitude())
_, _, _, _, dps, dcs, dls = TABLE2["47D5/2-48P3/2"]
i = SCHEMES.index("BCOD")
las_b = with_overrides(laser, detuning_p=TWO_PI * dps[i] * 1e6,
                       detuning_c=TWO_PI * dcs[i] * 1e6,
                       detuning_l=TWO_PI * dls[i] * 1e6)

nb = noise_breakdown(vapor, las_b, chain)
total = nb.qpn + nb.psn + nb.itn
print("noise budget (balanced readout, optimized detunings):")
for name, val in (("projection", nb.qpn), ("shot", nb.psn),
                  ("thermal", nb.itn)):
    print(f"  {name:10s} {val:.3e} W  ({100 * val / total:5.1f} %)")

vapor5 = replace(vapor, atomic_density_N0=5e16)
bs = classical_snr(ClassicalRxConfig.from_chain(chain, laser.carrier_frequency_fc),
                   h_sq_ps, laser.bandwidth_B)
print(f"\nclassical base station SNR: {bs:6.2f} dB")
print(f"shot-limited BCOD gain over it:     "
      f"{snr_psl(vapor5, las_b, 'BCOD', 0.8, h_sq_ps) - bs:6.2f} dB")
print(f"projection-limited gain over it:    "
      f"{snr_sql(vapor5, laser, h_sq_ps) - bs:6.2f} dB")
print(f"all-noise BCOD gain over it:        "
      f"{snr_total(vapor5, las_b, replace(chain, scheme='BCOD'), h_sq_ps) - bs:6.2f} dB")

rep = snr_report(vapor, las_b, replace(chain, scheme="BCOD"), h_sq_ps)
print("\nsensitivities at the standard density:")
print(f"  projection floor {per_m_to_per_cm(rep.sensitivity_sql) * 1e12:7.1f} pV/cm/rtHz")
print(f"  shot floor       {per_m_to_per_cm(rep.sensitivity_psl) * 1e12:7.1f} pV/cm/rtHz")
print(f"  all noise        {per_m_to_per_cm(rep.sensitivity_total) * 1e12:7.1f} pV/cm/rtHz")
print(f"  classical        {per_m_to_per_cm(rep.sensitivity_classical) * 1e9:7.2f} nV/cm/rtHz")

print("\nlocal-beam power walks the balanced readout toward the shot limit:")
for pl in (30e-6, 1e-3, 30e-3, 300e-3):
    las = with_overrides(las_b, local_optical_power_Pl=pl)
    tot = snr_total(vapor5, las, replace(chain, scheme="BCOD"), h_sq_ps)
    psl = snr_psl(vapor5, las, "BCOD", 0.8, h_sq_ps)
    print(f"  Pl = {pl * 1e3:7.2f} mW: total {tot:6.2f} dB, "
          f"shot limit {psl:6.2f} dB, gap {psl - tot:5.2f} dB")
