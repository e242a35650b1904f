"""Reed-Solomon codec over GF(2^m) with Berlekamp-Massey decoding.

Default parameters are RS(15, 11) over GF(16) built on the primitive
polynomial x^4 + x + 1: d_min = 5, correcting any 2 symbol errors per block.
Decoding is bounded-distance: syndromes, Berlekamp-Massey for the error
locator, Chien search for the roots, and Forney for the magnitudes.  A final
syndrome re-check guarantees that a reported success really is a codeword
within distance t of the input, so failure flags are exact.
"""

from __future__ import annotations

import numpy as np

from ..errors import DecodeFailure


class ReedSolomon:
    """Systematic RS(n, k) codec over GF(2^m) with n = 2^m - 1."""

    def __init__(self, n: int = 15, k: int = 11, m: int = 4,
                 prim_poly: int = 0b10011, fcr: int = 1):
        if n != (1 << m) - 1:
            raise ValueError(f"n must be 2^m - 1, got n={n}, m={m}")
        if not 0 < k < n:
            raise ValueError(f"require 0 < k < n, got k={k}, n={n}")
        if (n - k) % 2 != 0:
            raise ValueError("n - k must be even so t = (n - k) / 2 is integral")
        self.n = n
        self.k = k
        self.m = m
        self.fcr = fcr
        self.t = (n - k) // 2
        self.d_min = n - k + 1

        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.zeros(n + 1, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & (1 << m):
                x ^= prim_poly
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log

        # generator polynomial prod_{i=0}^{2t-1} (x - a^(fcr+i)), high degree first
        gen = [1]
        for i in range(2 * self.t):
            gen = self._poly_mul(gen, [1, self._pow(2, fcr + i)])
        self._gen = gen

    # GF(2^m) scalar helpers -------------------------------------------------

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def _div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if a == 0:
            return 0
        return int(self._exp[(self._log[a] - self._log[b]) % self.n])

    def _pow(self, a: int, p: int) -> int:
        return int(self._exp[(self._log[a] * p) % self.n])

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting zero in GF(2^m)")
        return int(self._exp[(self.n - self._log[a]) % self.n])

    def _poly_mul(self, p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            if pi:
                for j, qj in enumerate(q):
                    out[i + j] ^= self._mul(pi, qj)
        return out

    def _poly_add(self, p, q):
        # high degree first, aligned at the constant term
        length = max(len(p), len(q))
        out = [0] * length
        for i, c in enumerate(p):
            out[i + length - len(p)] ^= c
        for i, c in enumerate(q):
            out[i + length - len(q)] ^= c
        return out

    def _poly_eval(self, poly, x: int) -> int:
        # high degree first, Horner scheme
        y = poly[0]
        for coef in poly[1:]:
            y = self._mul(y, x) ^ coef
        return y

    # encode -----------------------------------------------------------------

    def _check_symbols(self, symbols: np.ndarray):
        if np.any(symbols < 0) or np.any(symbols >= (1 << self.m)):
            raise ValueError(f"symbols must lie in [0, {1 << self.m})")

    def encode(self, message) -> np.ndarray:
        """Encode k symbols into a systematic n-symbol codeword."""
        msg = np.asarray(message, dtype=np.int64)
        if msg.shape != (self.k,):
            raise ValueError(f"message must be {self.k} symbols, got {msg.shape}")
        self._check_symbols(msg)
        return self.encode_blocks(msg[None, :])[0]

    def encode_blocks(self, messages: np.ndarray) -> np.ndarray:
        """Encode a (B, k) symbol array into (B, n) codewords."""
        msgs = np.asarray(messages, dtype=np.int64)
        self._check_symbols(msgs)
        nb = msgs.shape[0]
        npar = 2 * self.t
        # batched synthetic division by the generator polynomial
        rem = np.zeros((nb, npar), dtype=np.int64)
        gen_log = np.array([self._log[g] for g in self._gen[1:]], dtype=np.int64)
        for i in range(self.k):
            coef = msgs[:, i] ^ rem[:, 0]
            rem = np.concatenate([rem[:, 1:], np.zeros((nb, 1), np.int64)], axis=1)
            nz = coef != 0
            if np.any(nz):
                rem[nz] ^= self._exp[self._log[coef[nz], None] + gen_log[None, :]]
        return np.concatenate([msgs, rem], axis=1)

    # decode -----------------------------------------------------------------

    def syndromes_blocks(self, received: np.ndarray) -> np.ndarray:
        """Batched syndrome computation: (B, n) words -> (B, 2t) syndromes."""
        r = np.asarray(received, dtype=np.int64)
        out = np.zeros((r.shape[0], 2 * self.t), dtype=np.int64)
        for j in range(2 * self.t):
            log_x = (self.fcr + j) % self.n
            acc = r[:, 0].copy()
            for i in range(1, self.n):
                nz = acc != 0
                acc[nz] = self._exp[self._log[acc[nz]] + log_x]
                acc ^= r[:, i]
            out[:, j] = acc
        return out

    def decode(self, received):
        """Decode n received symbols; returns ``(message, corrected_count)``.

        Raises :class:`DecodeFailure` when no codeword lies within distance t.
        """
        word, corrected, failed = self.decode_word(received)
        if failed:
            raise DecodeFailure(
                f"uncorrectable RS block (more than {self.t} symbol errors)"
            )
        return word[: self.k], corrected

    def decode_word(self, received):
        """Bounded-distance decode returning ``(word, corrected, failed)``.

        On failure the raw received word is returned unchanged so callers can
        still account residual errors against the systematic symbols.
        """
        r = np.asarray(received, dtype=np.int64)
        if r.shape != (self.n,):
            raise ValueError(f"received word must be {self.n} symbols, got {r.shape}")
        self._check_symbols(r)

        synd = [self._poly_eval(r.tolist(), self._pow(2, self.fcr + j))
                for j in range(2 * self.t)]
        if max(synd) == 0:
            return r.copy(), 0, False

        err_loc = self._berlekamp_massey(synd)
        n_errs = len(err_loc) - 1
        if n_errs > self.t:
            return r.copy(), 0, True
        positions = self._chien_search(err_loc)
        if len(positions) != n_errs:
            return r.copy(), 0, True
        corrected = r.copy()
        for pos, mag in zip(positions, self._forney(synd, positions)):
            corrected[pos] ^= mag
        # guarantee the output is a codeword (exact failure semantics)
        check = [self._poly_eval(corrected.tolist(), self._pow(2, self.fcr + j))
                 for j in range(2 * self.t)]
        if max(check) != 0:
            return r.copy(), 0, True
        return corrected, n_errs, False

    def _berlekamp_massey(self, synd):
        err_loc = [1]
        old_loc = [1]
        for i in range(2 * self.t):
            delta = synd[i]
            for j in range(1, len(err_loc)):
                delta ^= self._mul(err_loc[-(j + 1)], synd[i - j])
            old_loc = old_loc + [0]
            if delta != 0:
                if len(old_loc) > len(err_loc):
                    new_loc = [self._mul(c, delta) for c in old_loc]
                    old_loc = [self._mul(c, self._inv(delta)) for c in err_loc]
                    err_loc = new_loc
                err_loc = self._poly_add(
                    err_loc, [self._mul(c, delta) for c in old_loc]
                )
        while err_loc and err_loc[0] == 0:
            err_loc.pop(0)
        return err_loc

    def _chien_search(self, err_loc):
        # err_loc has roots at X_i^-1 where X_i = a^(n-1-pos); a root found at
        # a^i therefore marks array position (i - 1) mod n.
        positions = []
        for i in range(self.n):
            if self._poly_eval(err_loc, self._pow(2, i)) == 0:
                positions.append((i - 1) % self.n)
        return positions

    def _forney(self, synd, positions):
        # low-degree-first in here; X_i = a^(n-1-pos)
        xs = [self._pow(2, self.n - 1 - p) for p in positions]
        lam = [1]
        for xi in xs:
            new = lam + [0]
            for d in range(len(lam)):
                new[d + 1] ^= self._mul(lam[d], xi)
            lam = new
        omega = [0] * (2 * self.t)
        for i, si in enumerate(synd):
            if si:
                for j, lj in enumerate(lam):
                    if lj and i + j < 2 * self.t:
                        omega[i + j] ^= self._mul(si, lj)
        mags = []
        for i, xi in enumerate(xs):
            xi_inv = self._inv(xi)
            num = 0
            xterm = 1
            for coef in omega:
                if coef:
                    num ^= self._mul(coef, xterm)
                xterm = self._mul(xterm, xi_inv)
            # formal derivative at the root: lambda'(X_i^-1) = X_i * denom
            denom = 1
            for j, xj in enumerate(xs):
                if j != i:
                    denom = self._mul(denom, 1 ^ self._mul(xi_inv, xj))
            num = self._mul(num, self._pow(xi, -self.fcr)) if num else 0
            mags.append(self._div(num, denom) if num else 0)
        return mags

    # bit/symbol packing -----------------------------------------------------

    def bits_to_symbols(self, bits: np.ndarray) -> np.ndarray:
        """Bit array (multiple of m long) -> symbols, MSB first per symbol."""
        b = np.asarray(bits, dtype=np.int64)
        if b.size % self.m:
            raise ValueError(f"bit count must be a multiple of {self.m}")
        pows = 1 << np.arange(self.m - 1, -1, -1)
        return b.reshape(-1, self.m) @ pows

    def symbols_to_bits(self, symbols: np.ndarray) -> np.ndarray:
        """Symbols -> flat bit array, MSB first per symbol."""
        s = np.asarray(symbols, dtype=np.int64)
        shifts = np.arange(self.m - 1, -1, -1)
        return ((s[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)
