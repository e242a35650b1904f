"""The three codecs at work: encode, corrupt, decode, count corrections.

Run:  python demos/02_error_correction.py
"""

import numpy as np

from gmsklink import (DecodeFailure, apply_code, conv_encode, golay_decode,
                      golay_encode, golay_spec, rs_decode, rs_encode,
                      strip_code, viterbi_decode)

rng = np.random.default_rng(1)

print("=== extended Golay (24, 12): corrects 3 bit errors, detects 4 ===")
message = rng.integers(0, 2, 12).astype(np.uint8)
codeword = golay_encode(message)
print(f"message  {''.join(map(str, message))}")
print(f"codeword {''.join(map(str, codeword))}")
for n_errors in (1, 2, 3, 4):
    corrupted = codeword.copy()
    corrupted[rng.choice(24, n_errors, replace=False)] ^= 1
    try:
        decoded, corrected = golay_decode(corrupted)
        ok = np.array_equal(decoded, message)
        print(f"  {n_errors} errors -> corrected {corrected}, message ok: {ok}")
    except DecodeFailure:
        print(f"  {n_errors} errors -> uncorrectable, detected and flagged")

print("\n=== Reed-Solomon (15, 11) over GF(16): corrects 2 symbol errors ===")
msg_symbols = rng.integers(0, 16, 11)
cw = rs_encode(msg_symbols)
print(f"message symbols {msg_symbols.tolist()}")
corrupted = cw.copy()
corrupted[2] ^= 9   # one corrupted symbol can hide up to 4 bit errors
corrupted[13] ^= 5
decoded, corrected = rs_decode(corrupted)
print(f"2 symbol errors -> corrected {corrected}, "
      f"message ok: {np.array_equal(decoded, msg_symbols)}")

print("\n=== convolutional K=7 (171, 133) + Viterbi ===")
bits = rng.integers(0, 2, 94).astype(np.uint8)
coded = conv_encode(bits)
print(f"{bits.size} info bits -> {coded.size} coded bits (tail included)")
coded[[30, 31, 90]] ^= 1
decoded = viterbi_decode(coded)
print(f"3 channel errors -> exact recovery: {np.array_equal(decoded, bits)}")

print("\n=== stream dispatcher: segmentation and padding ===")
stream = rng.integers(0, 2, 1000).astype(np.uint8)
spec = golay_spec()
coded = apply_code(stream, spec)
print(f"1000 info bits through Golay -> {coded.size} coded bits "
      f"({coded.size // 24} blocks, {coded.size // 2 - 1000} pad bits)")
print(f"roundtrip exact: {np.array_equal(strip_code(coded, spec, 1000), stream)}")
