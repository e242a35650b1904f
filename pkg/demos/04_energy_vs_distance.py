"""Per-bit energy vs distance: where coding starts paying for itself.

Short links are circuit-dominated, so the coded system's longer on-time and
codec power make it lose; long links are radiated-dominated, so the 4 dB
coding gain wins.  Both published-arithmetic readings of the coded on-time
are shown side by side.

Run:  python demos/04_energy_vs_distance.py
"""

import dataclasses

from gmsklink import (CodecPowerProfile, CodedVariant, LinkBudget,
                      PowerProfile, TimingProfile, crossover_distance,
                      golay_spec, total_energy_coded, total_energy_uncoded)

power = PowerProfile()
timing = TimingProfile()
budget = LinkBudget()
codec_power = CodecPowerProfile()
spec = golay_spec()  # 4 dB coding gain, rate 1/2
alpha, pe = 0.68, 1e-4

print(f"{'d (m)':>6} | {'uncoded J/bit':>13} | {'coded literal':>13} | "
      f"{'coded unscaled':>14} | savings(unscaled)")
for d in (1, 10, 25, 50, 75, 100, 150, 200):
    link = dataclasses.replace(budget, distance_m=float(d))
    unc = total_energy_uncoded(power, timing, link, pe, alpha).e_per_info_bit
    lit = total_energy_coded(power, timing, link, pe, alpha, spec, codec_power,
                             CodedVariant.LITERAL).e_per_info_bit
    uns = total_energy_coded(power, timing, link, pe, alpha, spec, codec_power,
                             CodedVariant.CIRCUIT_UNSCALED).e_per_info_bit
    print(f"{d:6d} | {unc:13.4e} | {lit:13.4e} | {uns:14.4e} | "
          f"{100 * (1 - uns / unc):+6.1f}%")

print()
for variant in CodedVariant:
    d_star = crossover_distance(power, timing, budget, pe, alpha, spec,
                                codec_power, variant)
    print(f"crossover distance [{variant.value:16s}]: "
          f"{f'{d_star:.1f} m' if d_star else 'none in range'}")

print("\nbreakdown at d = 100 m (circuit-unscaled variant):")
link = dataclasses.replace(budget, distance_m=100.0)
b = total_energy_coded(power, timing, link, pe, alpha, spec, codec_power,
                       CodedVariant.CIRCUIT_UNSCALED)
for name in ("e_tx_radiated", "e_pa_overhead", "e_circuit", "e_transient",
             "e_codec", "e_total"):
    print(f"  {name:14s} = {getattr(b, name):.4e} J")
