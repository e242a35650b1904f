"""Closed-form transceiver and link energy model.

The model splits one L-bit transmission into radiated energy (sized from the
target error probability, the BER-model alpha and the distance power gain),
power-amplifier overhead, transmit+receive circuit energy over the on-time,
codec energy, and the synthesizer start-up transient.  Coding divides the
radiated term by the coding gain but stretches the on-time by 1/R; because
the published arithmetic is ambiguous about whether circuit and codec power
also integrate over the stretched time, both readings are implemented as
:class:`CodedVariant` and reported side by side.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

from .channel import LinkBudget, path_gain
from .errors import ConfigError
from .fec import CodecPowerProfile, CodeSpec


class CodedVariant(enum.Enum):
    """How coded transmissions integrate circuit and codec power.

    LITERAL: circuit and codec powers run for the stretched time T_on / R.
    CIRCUIT_UNSCALED: only the radiated term pays the time stretch; circuit
    and codec energies are charged over the uncoded T_on.
    """

    LITERAL = "literal"
    CIRCUIT_UNSCALED = "circuit-unscaled"


@dataclass(frozen=True)
class PowerProfile:
    """Circuit power draws in watts plus amplifier efficiency parameters."""

    p_adc: float = 6.7e-3
    p_dac: float = 15.4e-3
    p_filt: float = 2.5e-3
    p_syn: float = 50e-3
    p_lna: float = 20e-3
    p_ifa: float = 3e-3
    p_mixer: float = 30.3e-3
    eta: float = 0.75
    zeta: float = 1.0

    def __post_init__(self):
        for name in ("p_adc", "p_dac", "p_filt", "p_syn", "p_lna", "p_ifa", "p_mixer"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if not 0 < self.eta <= 1:
            raise ConfigError(f"eta must be in (0, 1], got {self.eta}")
        if self.zeta < 1:
            raise ConfigError(f"zeta must be >= 1, got {self.zeta}")


@dataclass(frozen=True)
class TimingProfile:
    """Transmission timing: start-up transient plus L bits at the bit rate.

    Standby time is bookkeeping only; standby power is zero.
    """

    t_start: float = 5e-6
    l_bits: int = 1000
    bit_rate: float = 1e4
    t_stby: float = 0.0

    def __post_init__(self):
        if self.t_start < 0 or self.t_stby < 0:
            raise ConfigError("times must be >= 0")
        if self.l_bits < 1:
            raise ConfigError("l_bits must be >= 1")
        if not self.bit_rate > 0:
            raise ConfigError("bit_rate must be positive")

    @property
    def t_on(self) -> float:
        return self.l_bits / self.bit_rate


@dataclass(frozen=True)
class EnergyBreakdown:
    """Additive decomposition of one transmission's energy in joules."""

    e_tx_radiated: float
    e_pa_overhead: float
    e_circuit: float
    e_transient: float
    e_codec: float
    e_total: float
    e_per_info_bit: float


def amplifier_beta(profile: PowerProfile) -> float:
    """PA overhead factor beta = zeta/eta - 1 (P_PA = beta * P_tx)."""
    return (profile.zeta - profile.eta) / profile.eta


def circuit_powers(profile: PowerProfile) -> tuple[float, float]:
    """(transmit, receive) circuit power in watts, excluding the PA.

    The transmitter of a frequency-modulated link runs no DAC and no mixer,
    so its circuit draw is just the filter and the synthesizer.
    """
    p_tx = profile.p_filt + profile.p_syn
    p_rx = (profile.p_adc + profile.p_filt + profile.p_mixer
            + profile.p_syn + profile.p_lna + profile.p_ifa)
    return p_tx, p_rx


def rx_energy_per_bit(pe: float, alpha: float, sigma2: float, n_f: float) -> float:
    """Required received energy per bit: (2/alpha) sigma^2 N_f ln(1/pe)."""
    if not 0 < pe < 1:
        raise ValueError(f"pe must be in (0, 1), got {pe}")
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    return (2.0 / alpha) * sigma2 * n_f * math.log(1.0 / pe)


def tx_energy_uncoded(pe: float, alpha: float, n_f: float, sigma2: float,
                      g_d: float, l_bits: int) -> float:
    """Radiated energy for L bits: rx energy per bit scaled by the path gain."""
    if l_bits < 0:
        raise ValueError("l_bits must be >= 0")
    if l_bits == 0:
        return 0.0
    return rx_energy_per_bit(pe, alpha, sigma2, n_f) * g_d * l_bits


def _assemble(e_rad: float, beta: float, e_circuit: float, e_transient: float,
              e_codec: float, l_bits: int) -> EnergyBreakdown:
    e_pa = beta * e_rad
    e_total = e_rad + e_pa + e_circuit + e_transient + e_codec
    return EnergyBreakdown(
        e_tx_radiated=e_rad,
        e_pa_overhead=e_pa,
        e_circuit=e_circuit,
        e_transient=e_transient,
        e_codec=e_codec,
        e_total=e_total,
        e_per_info_bit=e_total / l_bits,
    )


def total_energy_uncoded(power: PowerProfile, timing: TimingProfile,
                         link: LinkBudget, pe: float, alpha: float) -> EnergyBreakdown:
    """Energy of one uncoded L-bit transmission over the given link."""
    e_rad = tx_energy_uncoded(pe, alpha, link.n_f, link.sigma2,
                              path_gain(link), timing.l_bits)
    p_tx_c, p_rx_c = circuit_powers(power)
    e_circuit = (p_tx_c + p_rx_c) * timing.t_on
    e_transient = 2.0 * power.p_syn * timing.t_start
    return _assemble(e_rad, amplifier_beta(power), e_circuit, e_transient,
                     0.0, timing.l_bits)


def total_energy_coded(power: PowerProfile, timing: TimingProfile,
                       link: LinkBudget, pe: float, alpha: float,
                       spec: CodeSpec, codec_power: CodecPowerProfile,
                       variant: CodedVariant = CodedVariant.LITERAL) -> EnergyBreakdown:
    """Energy of one coded L-bit transmission.

    The radiated term is the uncoded one divided by the linear coding gain;
    the on-time stretches to T_on / R.  ``variant`` selects whether circuit
    and codec powers integrate over the stretched or the uncoded on-time.
    The transient term is never stretched.
    """
    if not 0 < spec.rate <= 1:
        raise ConfigError(f"code rate must be in (0, 1], got {spec.rate}")
    g_code = 10.0 ** (spec.g_code_db / 10.0)
    e_rad = tx_energy_uncoded(pe, alpha, link.n_f, link.sigma2,
                              path_gain(link), timing.l_bits) / g_code
    t_on_code = timing.t_on / spec.rate
    t_integrate = t_on_code if variant is CodedVariant.LITERAL else timing.t_on
    p_tx_c, p_rx_c = circuit_powers(power)
    e_circuit = (p_tx_c + p_rx_c) * t_integrate
    e_codec = (codec_power.p_enc + codec_power.p_dec) * t_integrate
    e_transient = 2.0 * power.p_syn * timing.t_start
    return _assemble(e_rad, amplifier_beta(power), e_circuit, e_transient,
                     e_codec, timing.l_bits)


def crossover_distance(power: PowerProfile, timing: TimingProfile,
                       link_template: LinkBudget, pe: float, alpha: float,
                       spec: CodeSpec, codec_power: CodecPowerProfile,
                       variant: CodedVariant = CodedVariant.LITERAL,
                       d_min: float = 0.1, d_max: float = 1e4) -> float | None:
    """Distance where coded and uncoded per-bit energies cross.

    The difference coded - uncoded is monotone decreasing in distance
    whenever the code has positive gain, so bisection applies.  Returns
    ``d_min`` when coding already wins at the lower bound, ``None`` when it
    never wins within ``[d_min, d_max]``.
    """
    def diff(d: float) -> float:
        link = dataclasses.replace(link_template, distance_m=d)
        coded = total_energy_coded(power, timing, link, pe, alpha, spec,
                                   codec_power, variant)
        uncoded = total_energy_uncoded(power, timing, link, pe, alpha)
        return coded.e_per_info_bit - uncoded.e_per_info_bit

    lo, hi = d_min, d_max
    f_lo, f_hi = diff(lo), diff(hi)
    if f_lo <= 0:
        return lo
    if f_hi > 0:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if diff(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-9 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)
