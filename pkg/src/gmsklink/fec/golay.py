"""Extended binary Golay (24, 12, 8) encoder and decoder.

Systematic construction with generator [I | B], using the standard symmetric
12x12 matrix B (B is its own inverse over GF(2), which the decoder exploits).
Decoding is table-driven syndrome decoding that corrects every error pattern
of weight <= 3 and reports weight-4 patterns as failures.  The word-level
routines are vectorised so exhaustive sweeps over all messages and error
patterns stay cheap.
"""

from __future__ import annotations

import numpy as np

from ..errors import DecodeFailure

N_BITS = 24
K_BITS = 12
D_MIN = 8
T_CORRECT = 3

_B = [
    [1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1],
    [1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1],
    [0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 1],
    [1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1],
    [1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1],
    [1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    [0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 1],
    [0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1],
    [1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1],
    [0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0],
]

# Row i of B packed as a 12-bit integer, column 0 at bit 11.
B_ROWS = np.array(
    [sum(bit << (11 - j) for j, bit in enumerate(row)) for row in _B],
    dtype=np.uint16,
)


def _build_product_table() -> np.ndarray:
    """table[u] = u . B over GF(2) for every 12-bit row vector u."""
    table = np.zeros(4096, dtype=np.uint16)
    u = np.arange(4096, dtype=np.uint16)
    for i in range(12):
        table ^= np.where((u >> (11 - i)) & 1, B_ROWS[i], 0).astype(np.uint16)
    return table


_MULT_B = _build_product_table()
_POP12 = np.array([bin(i).count("1") for i in range(4096)], dtype=np.uint8)
_POW2_12 = (1 << np.arange(11, -1, -1)).astype(np.uint16)
_POW2_24 = (1 << np.arange(23, -1, -1)).astype(np.uint32)


def encode_words(messages: np.ndarray) -> np.ndarray:
    """Encode 12-bit message integers into 24-bit codeword integers."""
    messages = np.asarray(messages, dtype=np.uint32)
    return (messages << 12) | _MULT_B[messages]


def decode_words(words: np.ndarray):
    """Decode 24-bit received words.

    Returns ``(messages, corrected, failed)``: the 12-bit message estimates,
    per-word count of corrected bits, and a boolean failure mask.  Failed
    words (no error pattern of weight <= 3 fits) carry their raw systematic
    half in ``messages`` so residual errors stay measurable.
    """
    words = np.atleast_1d(np.asarray(words, dtype=np.uint32))
    r1 = (words >> 12).astype(np.uint16)
    r2 = (words & 0xFFF).astype(np.uint16)
    syn = _MULT_B[r1] ^ r2

    e1 = np.zeros(words.shape, dtype=np.uint16)
    e2 = np.zeros(words.shape, dtype=np.uint16)
    undecided = np.ones(words.shape, dtype=bool)

    # e = (0, s): at most 3 errors, all in the parity half.
    hit = _POP12[syn] <= 3
    e2[hit] = syn[hit]
    undecided &= ~hit

    def _one_systematic_bit(active, base, sys_from_row):
        # Try e = (u_i, base ^ B_i) or e = (base ^ B_i, u_i) for each row i.
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            return
        combos = base[idx, None] ^ B_ROWS[None, :]
        ok = _POP12[combos] <= 2
        any_ok = ok.any(axis=1)
        rows = np.argmax(ok, axis=1)[any_ok]
        tgt = idx[any_ok]
        unit = (np.uint16(1) << (11 - rows)).astype(np.uint16)
        rest = combos[any_ok, rows]
        if sys_from_row:
            e1[tgt] = unit
            e2[tgt] = rest
        else:
            e1[tgt] = rest
            e2[tgt] = unit
        undecided[tgt] = False

    # e = (u_i, s ^ B_i): one systematic error plus <= 2 parity errors.
    _one_systematic_bit(undecided, syn, sys_from_row=True)

    # e = (s.B, 0): errors confined to the systematic half (B.B = I).
    syn2 = _MULT_B[syn]
    hit = undecided & (_POP12[syn2] <= 3)
    e1[hit] = syn2[hit]
    undecided &= ~hit

    # e = (s.B ^ B_i, u_i): one parity error plus <= 2 systematic errors.
    _one_systematic_bit(undecided, syn2, sys_from_row=False)

    failed = undecided
    messages = (r1 ^ e1).astype(np.uint16)
    corrected = (_POP12[e1] + _POP12[e2]).astype(np.uint8)
    corrected[failed] = 0
    return messages, corrected, failed


def pack_message_bits(bits: np.ndarray) -> np.ndarray:
    """(B, 12) bit array -> 12-bit integers, first bit at the MSB."""
    return (np.asarray(bits, dtype=np.uint16) @ _POW2_12).astype(np.uint16)


def unpack_message_bits(values: np.ndarray) -> np.ndarray:
    """12-bit integers -> (B, 12) bit array."""
    values = np.asarray(values, dtype=np.uint16)
    return ((values[:, None] >> np.arange(11, -1, -1)) & 1).astype(np.uint8)


def pack_codeword_bits(bits: np.ndarray) -> np.ndarray:
    """(B, 24) bit array -> 24-bit integers, first bit at the MSB."""
    return (np.asarray(bits, dtype=np.uint32) @ _POW2_24).astype(np.uint32)


def unpack_codeword_bits(values: np.ndarray) -> np.ndarray:
    """24-bit integers -> (B, 24) bit array."""
    values = np.asarray(values, dtype=np.uint32)
    return ((values[:, None] >> np.arange(23, -1, -1)) & 1).astype(np.uint8)


def golay_encode(message_bits) -> np.ndarray:
    """Encode exactly 12 bits into a systematic 24-bit codeword."""
    bits = np.asarray(message_bits, dtype=np.uint8)
    if bits.shape != (12,):
        raise ValueError(f"Golay message must be 12 bits, got shape {bits.shape}")
    word = encode_words(pack_message_bits(bits[None, :]))
    return unpack_codeword_bits(word)[0]


def golay_decode(received_bits):
    """Decode a 24-bit word; returns ``(message_bits, corrected_errors)``.

    Raises :class:`DecodeFailure` on uncorrectable (weight >= 4) patterns.
    """
    bits = np.asarray(received_bits, dtype=np.uint8)
    if bits.shape != (24,):
        raise ValueError(f"Golay word must be 24 bits, got shape {bits.shape}")
    msgs, corrected, failed = decode_words(pack_codeword_bits(bits[None, :]))
    if failed[0]:
        raise DecodeFailure("uncorrectable Golay block (more than 3 bit errors)")
    return unpack_message_bits(msgs)[0], int(corrected[0])
