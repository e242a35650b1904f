"""Rate-1/2 convolutional code, K = 7, generators (171, 133) octal.

Tail-terminated: every encoded block carries K - 1 = 6 flush bits so the
trellis ends in the zero state.  Decoding is hard-decision Viterbi over the
terminated trellis, vectorised across a batch of equal-length blocks (the
time recursion is the only Python loop).  Free distance of this generator
pair is 10.
"""

from __future__ import annotations

import numpy as np

from ..errors import FramingError

CONSTRAINT_LENGTH = 7
D_FREE = 10

# Generator taps, most significant octal digit first: tap j multiplies x[i-j].
G1_TAPS = np.array([1, 1, 1, 1, 0, 0, 1], dtype=np.uint8)  # 171 octal
G2_TAPS = np.array([1, 0, 1, 1, 0, 1, 1], dtype=np.uint8)  # 133 octal

_N_STATES = 1 << (CONSTRAINT_LENGTH - 1)


def _transition_tables():
    # state s holds the previous 6 inputs, newest at bit 0; register value
    # for input b is reg = b | (s << 1), next state is reg & 63.
    g1_mask = int("".join(map(str, G1_TAPS)), 2)
    g2_mask = int("".join(map(str, G2_TAPS)), 2)
    # reg bit j (from LSB) is x[i-j], so reverse the tap masks
    g1 = int(f"{g1_mask:07b}"[::-1], 2)
    g2 = int(f"{g2_mask:07b}"[::-1], 2)
    out1 = np.zeros((_N_STATES, 2), dtype=np.uint8)
    out2 = np.zeros((_N_STATES, 2), dtype=np.uint8)
    for s in range(_N_STATES):
        for b in (0, 1):
            reg = b | (s << 1)
            out1[s, b] = bin(reg & g1).count("1") & 1
            out2[s, b] = bin(reg & g2).count("1") & 1
    # predecessor view: state s' was reached with input b = s' & 1 from
    # either s' >> 1 or (s' >> 1) | 32
    pred0 = np.arange(_N_STATES) >> 1
    pred1 = pred0 | (_N_STATES >> 1)
    bit = np.arange(_N_STATES) & 1
    o1_p0 = out1[pred0, bit]
    o1_p1 = out1[pred1, bit]
    o2_p0 = out2[pred0, bit]
    o2_p1 = out2[pred1, bit]
    return pred0, pred1, o1_p0, o1_p1, o2_p0, o2_p1


_PRED0, _PRED1, _O1P0, _O1P1, _O2P0, _O2P1 = _transition_tables()


def conv_encode(bits) -> np.ndarray:
    """Encode a bit stream; output length is 2 * (len(bits) + 6)."""
    b = np.asarray(bits, dtype=np.uint8)
    if b.ndim != 1 or b.size == 0:
        raise ValueError("input must be a nonempty 1-d bit sequence")
    x = np.concatenate([b, np.zeros(CONSTRAINT_LENGTH - 1, dtype=np.uint8)])
    v1 = np.convolve(x, G1_TAPS)[: x.size] & 1
    v2 = np.convolve(x, G2_TAPS)[: x.size] & 1
    out = np.empty(2 * x.size, dtype=np.uint8)
    out[0::2] = v1
    out[1::2] = v2
    return out


def viterbi_decode(coded) -> np.ndarray:
    """Maximum-likelihood hard-decision decode of one tail-terminated block."""
    c = np.asarray(coded, dtype=np.uint8)
    if c.ndim != 1:
        raise FramingError("coded stream must be one-dimensional")
    if c.size % 2 != 0:
        raise FramingError(f"coded stream length {c.size} is not a multiple of 2")
    steps = c.size // 2
    if steps < CONSTRAINT_LENGTH:
        raise FramingError(
            f"coded stream too short ({c.size} bits) for a tail-terminated block"
        )
    return viterbi_decode_blocks(c[None, :])[0]


def viterbi_decode_blocks(coded: np.ndarray) -> np.ndarray:
    """Viterbi-decode a (B, 2T) array of equal-length terminated blocks."""
    c = np.asarray(coded, dtype=np.uint8)
    if c.ndim != 2 or c.shape[1] % 2 != 0:
        raise FramingError("expected a (B, 2T) coded array")
    nb, width = c.shape
    steps = width // 2
    r1 = c[:, 0::2]
    r2 = c[:, 1::2]

    big = np.int32(1 << 20)
    pm = np.full((nb, _N_STATES), big, dtype=np.int32)
    pm[:, 0] = 0
    back = np.empty((steps, nb, _N_STATES), dtype=bool)
    for t in range(steps):
        bm0 = (_O1P0 ^ r1[:, t, None]) + (_O2P0 ^ r2[:, t, None])
        bm1 = (_O1P1 ^ r1[:, t, None]) + (_O2P1 ^ r2[:, t, None])
        cand0 = pm[:, _PRED0] + bm0
        cand1 = pm[:, _PRED1] + bm1
        choose1 = cand1 < cand0
        back[t] = choose1
        pm = np.where(choose1, cand1, cand0)

    # tail-terminated: start traceback in state 0
    state = np.zeros(nb, dtype=np.int64)
    bits = np.empty((steps, nb), dtype=np.uint8)
    rows = np.arange(nb)
    for t in range(steps - 1, -1, -1):
        bits[t] = state & 1
        came1 = back[t][rows, state]
        state = (state >> 1) | (came1.astype(np.int64) << (CONSTRAINT_LENGTH - 2))
    return bits[: steps - (CONSTRAINT_LENGTH - 1)].T.copy()
