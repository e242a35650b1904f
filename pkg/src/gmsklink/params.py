"""Flat key-value parameter files and the run configuration they populate.

The format is one ``section.key = value`` pair per line with ``#`` comments;
every key carries its unit in its name so files are unambiguous.  Parsing is
strict: unknown keys are rejected, and every field has a default drawn from
the shipped parameter file (the published circuit powers, link budget and
timing values).
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

from .channel import LinkBudget
from .energy import PowerProfile, TimingProfile
from .errors import ConfigError
from .fec import CodecPowerProfile
from .modem import ModemConfig, alpha_for_bt

_VALID_VARIANTS = ("literal", "circuit-unscaled", "both")
_VALID_CODECS = ("none", "golay", "reed_solomon", "convolutional")


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"expected a number, got {text!r}") from exc


def _parse_int(text: str) -> int:
    value = _parse_float(text)
    if value != int(value):
        raise ConfigError(f"expected an integer, got {text!r}")
    return int(value)


def _parse_alpha(text: str):
    if text == "auto":
        return "auto"
    value = _parse_float(text)
    if not 0 < value <= 1:
        raise ConfigError(f"energy.alpha must be 'auto' or in (0, 1], got {text!r}")
    return value


def _parse_variant(text: str) -> str:
    if text not in _VALID_VARIANTS:
        raise ConfigError(f"run.variant must be one of {_VALID_VARIANTS}, got {text!r}")
    return text


def _parse_codecs(text: str) -> tuple:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    for name in names:
        if name not in _VALID_CODECS:
            raise ConfigError(f"unknown codec {name!r} (valid: {_VALID_CODECS})")
    if not names:
        raise ConfigError("run.codecs must name at least one codec")
    return names


def _parse_floats(text: str) -> tuple:
    return tuple(_parse_float(s.strip()) for s in text.split(",") if s.strip())


_SCHEMA = {
    "timing.t_start_s": _parse_float,
    "timing.t_total_s": _parse_float,
    "timing.l_bits": _parse_int,
    "channel.sigma2_j": _parse_float,
    "link.path_loss_exponent": _parse_float,
    "link.g_l": _parse_float,
    "link.m_l": _parse_float,
    "link.noise_figure_db": _parse_float,
    "link.target_pe": _parse_float,
    "modem.bandwidth_hz": _parse_float,
    "modem.carrier_hz": _parse_float,
    "modem.bt_product": _parse_float,
    "modem.samples_per_symbol": _parse_int,
    "modem.pulse_span_symbols": _parse_int,
    "modem.rx_bt": _parse_float,
    "power.eta": _parse_float,
    "power.p_adc_mw": _parse_float,
    "power.p_dac_mw": _parse_float,
    "power.p_filt_mw": _parse_float,
    "power.p_syn_mw": _parse_float,
    "power.p_lna_mw": _parse_float,
    "power.p_ifa_mw": _parse_float,
    "power.p_mixer_mw": _parse_float,
    "codec.p_enc_mw": _parse_float,
    "codec.p_dec_mw": _parse_float,
    "codec.g_code_db": _parse_float,
    "run.seed": _parse_int,
    "run.out_dir": str,
    "run.variant": _parse_variant,
    "run.codecs": _parse_codecs,
    "energy.alpha": _parse_alpha,
    "sweep.ebno_start_db": _parse_float,
    "sweep.ebno_stop_db": _parse_float,
    "sweep.ebno_step_db": _parse_float,
    "sweep.min_bit_errors": _parse_int,
    "sweep.max_bits": _parse_int,
    "scan.d_start_m": _parse_float,
    "scan.d_stop_m": _parse_float,
    "scan.d_step_m": _parse_float,
    "scan.alpha_list": _parse_floats,
    "route.trials": _parse_int,
    "route.n_relays": _parse_int,
    "route.hop_min_m": _parse_float,
    "route.hop_max_m": _parse_float,
    "route.n_nodes": _parse_int,
    "route.field_m": _parse_float,
    "route.max_hop_m": _parse_float,
}


def parse_params_text(text: str, source: str = "<string>") -> dict:
    """Parse parameter-file text into a {key: value} dict (strict keys)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _SCHEMA[key](val)
    return values


def _default_values() -> dict:
    text = (
        importlib.resources.files("gmsklink")
        .joinpath("data", "defaults.params")
        .read_text()
    )
    return parse_params_text(text, source="defaults.params")


@dataclass(frozen=True)
class RunConfig:
    """Every parameter a CLI run needs, flattened from the config file."""

    values: tuple  # of (key, value), kept sorted for reproducibility

    def __getitem__(self, key):
        for k, v in self.values:
            if k == key:
                return v
        raise KeyError(key)

    # domain-object builders ------------------------------------------------

    def power_profile(self) -> PowerProfile:
        return PowerProfile(
            p_adc=self["power.p_adc_mw"] * 1e-3,
            p_dac=self["power.p_dac_mw"] * 1e-3,
            p_filt=self["power.p_filt_mw"] * 1e-3,
            p_syn=self["power.p_syn_mw"] * 1e-3,
            p_lna=self["power.p_lna_mw"] * 1e-3,
            p_ifa=self["power.p_ifa_mw"] * 1e-3,
            p_mixer=self["power.p_mixer_mw"] * 1e-3,
            eta=self["power.eta"],
        )

    def timing_profile(self) -> TimingProfile:
        return TimingProfile(
            t_start=self["timing.t_start_s"],
            l_bits=self["timing.l_bits"],
            bit_rate=self["modem.bandwidth_hz"],
        )

    def link_budget(self, distance_m: float = 100.0) -> LinkBudget:
        return LinkBudget(
            g_l=self["link.g_l"],
            m_l=self["link.m_l"],
            k_exp=self["link.path_loss_exponent"],
            distance_m=distance_m,
            n_f=10.0 ** (self["link.noise_figure_db"] / 10.0),
            sigma2=self["channel.sigma2_j"],
        )

    def modem_config(self) -> ModemConfig:
        return ModemConfig(
            bt_product=self["modem.bt_product"],
            samples_per_symbol=self["modem.samples_per_symbol"],
            pulse_span_symbols=self["modem.pulse_span_symbols"],
            bit_rate=self["modem.bandwidth_hz"],
            rx_bt=self["modem.rx_bt"],
        )

    def codec_power(self) -> CodecPowerProfile:
        return CodecPowerProfile(
            p_enc=self["codec.p_enc_mw"] * 1e-3,
            p_dec=self["codec.p_dec_mw"] * 1e-3,
        )

    def alpha(self) -> float:
        configured = self["energy.alpha"]
        if configured == "auto":
            return alpha_for_bt(self["modem.bt_product"])
        return configured

    def with_overrides(self, overrides: dict) -> "RunConfig":
        """New config with dotted keys replaced (e.g. ``{"run.seed": 7}``)."""
        mapping = dict(self.values)
        for key, value in overrides.items():
            if key not in _SCHEMA:
                raise ConfigError(f"unknown key {key!r}")
            mapping[key] = value
        return RunConfig(values=tuple(sorted(mapping.items())))


def load_config(path=None) -> RunConfig:
    """Defaults from the shipped parameter file, overlaid with ``path``."""
    mapping = _default_values()
    if path is not None:
        with open(path) as fh:
            mapping.update(parse_params_text(fh.read(), source=str(path)))
    return RunConfig(values=tuple(sorted(mapping.items())))
