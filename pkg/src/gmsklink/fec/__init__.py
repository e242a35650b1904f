"""Forward-error-correction codecs and the stream-level dispatcher.

Three codecs are provided: the extended Golay (24, 12), Reed-Solomon (15, 11)
over GF(16), and a K = 7 rate-1/2 convolutional code with hard-decision
Viterbi decoding.  :func:`apply_code` and :func:`strip_code` segment an
information bit stream into code blocks (zero-padding the last partial
block), route it through the selected codec, and undo both on the way back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, FramingError
from . import convolutional, golay
from .convolutional import conv_encode, viterbi_decode
from .golay import golay_decode, golay_encode
from .reed_solomon import ReedSolomon

__all__ = [
    "CodeSpec",
    "CodecPowerProfile",
    "BlockLayout",
    "none_spec",
    "golay_spec",
    "rs_spec",
    "conv_spec",
    "apply_code",
    "strip_code",
    "block_layout",
    "golay_encode",
    "golay_decode",
    "rs_encode",
    "rs_decode",
    "conv_encode",
    "viterbi_decode",
    "ReedSolomon",
]

_RS_DEFAULT = ReedSolomon()


@dataclass(frozen=True)
class CodeSpec:
    """Static parameters of an error-correcting code.

    ``n`` and ``k`` are in bits for binary codes and in symbols for
    Reed-Solomon (``symbol_bits`` > 1).  ``d_min`` is the minimum distance
    where defined; convolutional codes carry ``d_free`` instead.
    ``g_code_db`` is the coding gain used by the energy model.
    """

    name: str
    n: int
    k: int
    rate: float
    t: int
    d_min: int | None = None
    d_free: int | None = None
    symbol_bits: int = 1
    g_code_db: float = 0.0

    def __post_init__(self):
        if self.name not in ("none", "golay", "reed_solomon", "convolutional"):
            raise ConfigError(f"unknown code name {self.name!r}")
        if not 0 < self.k <= self.n:
            raise ConfigError(f"require 0 < k <= n, got k={self.k}, n={self.n}")
        if self.rate != self.k / self.n:
            raise ConfigError("rate must equal k / n exactly")
        if self.name == "reed_solomon":
            if self.d_min != self.n - self.k + 1:
                raise ConfigError("Reed-Solomon requires d_min = n - k + 1")
            if self.t != (self.n - self.k) // 2:
                raise ConfigError("Reed-Solomon requires t = floor((n - k) / 2)")
        if self.name == "golay" and (self.n, self.k, self.d_min, self.t) != (24, 12, 8, 3):
            raise ConfigError("extended Golay is fixed at (24, 12, 8) with t = 3")
        if self.name == "none" and (self.rate != 1.0 or self.g_code_db != 0.0):
            raise ConfigError("the identity code has rate 1 and no coding gain")

    @property
    def k_bits(self) -> int:
        return self.k * self.symbol_bits

    @property
    def n_bits(self) -> int:
        return self.n * self.symbol_bits


@dataclass(frozen=True)
class CodecPowerProfile:
    """Encoder and decoder power draw in watts."""

    p_enc: float = 0.028
    p_dec: float = 0.035

    def __post_init__(self):
        if self.p_enc < 0 or self.p_dec < 0:
            raise ConfigError("codec powers must be >= 0")


@dataclass(frozen=True)
class BlockLayout:
    """How an information stream maps onto code blocks."""

    n_blocks: int
    coded_bits: int
    pad_bits: int


def none_spec() -> CodeSpec:
    return CodeSpec(name="none", n=1, k=1, rate=1.0, t=0, d_min=1)


def golay_spec(g_code_db: float = 4.0) -> CodeSpec:
    return CodeSpec(name="golay", n=24, k=12, rate=0.5, t=3, d_min=8,
                    g_code_db=g_code_db)


def rs_spec(g_code_db: float = 4.0) -> CodeSpec:
    rs = _RS_DEFAULT
    return CodeSpec(name="reed_solomon", n=rs.n, k=rs.k, rate=rs.k / rs.n,
                    t=rs.t, d_min=rs.d_min, symbol_bits=rs.m, g_code_db=g_code_db)


def conv_spec(segment_bits: int = 512, g_code_db: float = 4.0) -> CodeSpec:
    if segment_bits < 1:
        raise ConfigError("segment_bits must be >= 1")
    n = 2 * (segment_bits + convolutional.CONSTRAINT_LENGTH - 1)
    return CodeSpec(name="convolutional", n=n, k=segment_bits,
                    rate=segment_bits / n, t=(convolutional.D_FREE - 1) // 2,
                    d_free=convolutional.D_FREE, g_code_db=g_code_db)


def rs_encode(message) -> np.ndarray:
    """Systematic RS(15, 11) encode of 11 GF(16) symbols."""
    return _RS_DEFAULT.encode(message)


def rs_decode(received):
    """RS(15, 11) decode; returns (message, corrected) or raises DecodeFailure."""
    return _RS_DEFAULT.decode(received)


def block_layout(info_len: int, spec: CodeSpec) -> BlockLayout:
    """Blocks, coded length and zero padding for an ``info_len``-bit stream."""
    if info_len < 1:
        raise ValueError("info_len must be >= 1")
    if spec.name == "none":
        return BlockLayout(1, info_len, 0)
    if spec.name == "convolutional":
        full, rem = divmod(info_len, spec.k)
        tail = 2 * (convolutional.CONSTRAINT_LENGTH - 1)
        coded = full * (2 * spec.k + tail) + (2 * rem + tail if rem else 0)
        return BlockLayout(full + (1 if rem else 0), coded, 0)
    blocks = math.ceil(info_len / spec.k_bits)
    return BlockLayout(blocks, blocks * spec.n_bits, blocks * spec.k_bits - info_len)


def _as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a nonempty 1-d bit array")
    return arr


def apply_code(bits, spec: CodeSpec) -> np.ndarray:
    """Segment an information stream into blocks and encode each one."""
    bits = _as_bits(bits)
    if spec.name == "none":
        return bits.copy()
    if spec.name == "convolutional":
        parts = [conv_encode(bits[i: i + spec.k])
                 for i in range(0, bits.size, spec.k)]
        return np.concatenate(parts)
    layout = block_layout(bits.size, spec)
    padded = np.concatenate([bits, np.zeros(layout.pad_bits, dtype=np.uint8)])
    if spec.name == "golay":
        msgs = golay.pack_message_bits(padded.reshape(-1, 12))
        return golay.unpack_codeword_bits(golay.encode_words(msgs)).reshape(-1)
    if spec.name == "reed_solomon":
        rs = _RS_DEFAULT
        symbols = rs.bits_to_symbols(padded).reshape(-1, rs.k)
        return rs.symbols_to_bits(rs.encode_blocks(symbols).reshape(-1))
    raise ConfigError(f"unknown code name {spec.name!r}")


def strip_code(coded, spec: CodeSpec, info_len: int) -> np.ndarray:
    """Decode a stream produced by :func:`apply_code` back to ``info_len`` bits.

    Uncorrectable Golay and Reed-Solomon blocks fall back to their raw
    systematic bits, so residual errors stay measurable instead of erasing
    whole blocks.
    """
    coded = _as_bits(coded)
    layout = block_layout(info_len, spec)
    if coded.size != layout.coded_bits:
        raise FramingError(
            f"coded stream has {coded.size} bits, expected {layout.coded_bits}"
        )
    if spec.name == "none":
        return coded.copy()
    if spec.name == "convolutional":
        tail = 2 * (convolutional.CONSTRAINT_LENGTH - 1)
        full, rem = divmod(info_len, spec.k)
        out = []
        if full:
            width = 2 * spec.k + tail
            head = coded[: full * width].reshape(full, width)
            out.append(convolutional.viterbi_decode_blocks(head).reshape(-1))
        if rem:
            out.append(viterbi_decode(coded[full * (2 * spec.k + tail):]))
        return np.concatenate(out) if len(out) > 1 else out[0]
    if spec.name == "golay":
        words = golay.pack_codeword_bits(coded.reshape(-1, 24))
        msgs, _, _ = golay.decode_words(words)
        return golay.unpack_message_bits(msgs).reshape(-1)[:info_len]
    if spec.name == "reed_solomon":
        rs = _RS_DEFAULT
        received = rs.bits_to_symbols(coded).reshape(-1, rs.n)
        synd = rs.syndromes_blocks(received)
        dirty = np.nonzero(synd.any(axis=1))[0]
        decoded = received[:, : rs.k].copy()
        for i in dirty:
            word, _, _ = rs.decode_word(received[i])
            decoded[i] = word[: rs.k]
        return rs.symbols_to_bits(decoded.reshape(-1))[:info_len]
    raise ConfigError(f"unknown code name {spec.name!r}")
