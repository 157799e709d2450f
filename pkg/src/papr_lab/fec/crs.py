"""Constrained RS framing: fit an RS(n, k) codeword into one 2^(N+1)-bit frame.

Each of the k' transmitted message symbols is restricted to p < q bits
(low-order bits of its q-bit field symbol), so k' p-bit message fields plus
all r q-bit parity symbols fit the frame with a small zero pad.  The
remaining k - k' message symbols are implicit zeros (shortening).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rs import (DecodeFailure, LengthMismatch, rs_spec, rs_encode,
                 decode_word, _symbols_to_bits, _bits_to_symbols)


class LayoutInfeasible(ValueError):
    pass


class ConstraintViolation(ValueError):
    pass


class UnknownScheme(ValueError):
    pass


@dataclass(frozen=True)
class CrsFrameLayout:
    N: int           # log2 of sub-channel count
    n: int           # RS codeword symbols
    k: int           # RS message symbols
    q: int           # bits per parity symbol (field symbol width)
    k_prime: int     # transmitted message symbol count
    p: int           # bits per constrained message symbol
    p_lower: float   # open lower bound of the feasible p interval (k' = k)
    p_upper: float   # closed upper bound of the feasible p interval

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def frame_bits(self) -> int:
        return 1 << (self.N + 1)

    @property
    def message_bits(self) -> int:
        return self.k_prime * self.p

    @property
    def pad_bits(self) -> int:
        return self.frame_bits - (self.k_prime * self.p + self.r * self.q)


DEFAULT_K_PRIME = 16  # transmitted message symbols for the N = 6 frame


def crs_layout(N: int, n: int, k: int,
               k_prime: int = DEFAULT_K_PRIME) -> CrsFrameLayout:
    """Solve the frame-fitting constraints for an RS(n, k) code.

    q is the field symbol width (n = 2^q - 1); p is the largest integer with
    p < q that keeps k' p-bit fields plus r q-bit parity symbols within the
    2^(N+1)-bit frame.
    """
    q = n.bit_length()
    if n != (1 << q) - 1:
        raise LayoutInfeasible(f"n = {n} is not 2^q - 1")
    if not 0 < k < n:
        raise LayoutInfeasible(f"k = {k} outside (0, {n})")
    if k_prime > k:
        raise LayoutInfeasible(f"k' = {k_prime} exceeds k = {k}")
    r = n - k
    frame_bits = 1 << (N + 1)
    if r * q > (1 << N):
        raise LayoutInfeasible(
            f"parity bits r*q = {r * q} exceed half frame 2^N = {1 << N}")
    p_upper = (frame_bits - r * q) / k_prime
    p_lower = (frame_bits - r * q) / k
    p = min(q - 1, int(np.floor(p_upper)))
    if p < 1:
        raise LayoutInfeasible("no integer p >= 1 fits the frame")
    return CrsFrameLayout(N=N, n=n, k=k, q=q, k_prime=k_prime, p=p,
                          p_lower=p_lower, p_upper=p_upper)


def crs_encode(layout: CrsFrameLayout, message_bits: np.ndarray) -> np.ndarray:
    """k'*p message bits -> one frame_bits-long bit frame.

    Frame layout: [k' p-bit message fields | r q-bit parity symbols | zero pad].
    """
    bits = np.asarray(message_bits, dtype=np.uint8)
    if bits.size != layout.message_bits:
        raise LengthMismatch(
            f"message length {bits.size} != {layout.message_bits}")
    msg_syms = _bits_to_symbols(bits, layout.p)
    if any(s >= (1 << layout.p) for s in msg_syms):
        raise ConstraintViolation("message symbol exceeds p bits")
    spec = rs_spec(layout.q, layout.k)
    shortened = [0] * (layout.k - layout.k_prime)
    codeword = rs_encode(spec, shortened + msg_syms)
    parity = codeword[layout.k:]
    frame = np.zeros(layout.frame_bits, dtype=np.uint8)
    frame[:bits.size] = bits
    pbits = _symbols_to_bits(parity, layout.q)
    frame[bits.size:bits.size + pbits.size] = pbits
    return frame


def crs_decode(layout: CrsFrameLayout,
               frame: np.ndarray) -> tuple[np.ndarray, int, bool]:
    """Decode one frame -> (message bits, corrected symbols, constraint_ok).

    constraint_ok is False when a corrected message symbol has nonzero bits
    above the p-bit subset, i.e. the error pattern left the constrained
    alphabet; the low p bits are still returned.
    """
    frame = np.asarray(frame, dtype=np.uint8)
    if frame.size != layout.frame_bits:
        raise LengthMismatch(f"frame length {frame.size} != {layout.frame_bits}")
    spec = rs_spec(layout.q, layout.k)
    nm = layout.message_bits
    msg_syms = _bits_to_symbols(frame[:nm], layout.p)
    parity = _bits_to_symbols(frame[nm:nm + layout.r * layout.q], layout.q)
    word = ([0] * (layout.k - layout.k_prime)) + msg_syms + parity
    decoded, positions = decode_word(spec, word)
    if any(decoded[:layout.k - layout.k_prime]):
        raise DecodeFailure("shortened prefix decoded nonzero")
    out_syms = decoded[layout.k - layout.k_prime:layout.k]
    constraint_ok = all(s < (1 << layout.p) for s in out_syms)
    low = [s & ((1 << layout.p) - 1) for s in out_syms]
    return _symbols_to_bits(low, layout.p), len(positions), constraint_ok


# --- codeword density --------------------------------------------------------

_DENSITIES = {
    # scheme -> (message bits, transmitted bits)
    "bch": (85, 128),
    "rs31_19_raw": (95, 155),
    "rs2516": (80, 128),
    "crs31_19": (64, 128),
}


def codeword_density(scheme: str) -> int:
    """log2 of the probability that a random transmitted frame is a valid
    codeword: message bits minus transmitted bits."""
    try:
        msg, tx = _DENSITIES[scheme]
    except KeyError:
        raise UnknownScheme(f"unknown scheme {scheme!r}") from None
    return msg - tx
