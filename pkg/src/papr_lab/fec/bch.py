"""Binary BCH(127,85) codec over GF(2^7).

Narrow-sense construction: the generator is the LCM of the minimal
polynomials of alpha^1..alpha^(2t), grown until its degree reaches
n - k = 42 (which happens at t = 6).  Encoding is systematic; the 127
codeword bits are suffixed with one zero pad bit to fill a 128-bit frame.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import gf2m
from ..gf2m import FieldSpec, mul, inv
from .rs import DecodeFailure, LengthMismatch, _berlekamp_massey


def _gf2_poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _gf2_poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _minimal_poly(fs: FieldSpec, i: int) -> int:
    """Minimal polynomial of alpha^i over GF(2), as a bit-encoded polynomial."""
    # conjugacy class {i, 2i, 4i, ...} mod (2^m - 1)
    coset = []
    c = i % fs.order
    while c not in coset:
        coset.append(c)
        c = (2 * c) % fs.order
    # product of (x - alpha^j) over the coset, coefficients collapse to GF(2)
    poly = [1]
    for j in coset:
        root = gf2m.pow_alpha(fs, j)
        poly = gf2m.poly_mul(fs, poly, [root, 1])
    assert all(c in (0, 1) for c in poly)
    out = 0
    for d, c in enumerate(poly):
        out |= c << d
    return out


@dataclass(frozen=True)
class BchCodeSpec:
    field: FieldSpec
    n: int
    k: int
    t: int
    generator: int  # bit-encoded binary polynomial, bit d = coeff of x^d

    @property
    def r(self) -> int:
        return self.n - self.k


_SPEC: BchCodeSpec | None = None


def bch_spec() -> BchCodeSpec:
    """The BCH(127,85) spec; t is resolved from the generator degree."""
    global _SPEC
    if _SPEC is not None:
        return _SPEC
    fs = gf2m.cached_field(7)
    n = fs.order
    gen = 1
    seen = set()
    t = 0
    while gen.bit_length() - 1 < 42:
        t += 1
        for i in range(2 * t - 1, 2 * t + 1):
            mp = _minimal_poly(fs, i)
            if mp not in seen:
                seen.add(mp)
                gen = _gf2_poly_mul(gen, mp)
    deg = gen.bit_length() - 1
    if deg != 42:
        raise AssertionError(f"generator degree {deg} != 42")
    _SPEC = BchCodeSpec(field=fs, n=n, k=n - deg, t=t, generator=gen)
    return _SPEC


def _bits_to_int(bits: np.ndarray) -> int:
    # bits[0] is the highest-degree coefficient (first transmitted)
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def _int_to_bits(v: int, width: int) -> np.ndarray:
    return np.array([(v >> (width - 1 - i)) & 1 for i in range(width)],
                    dtype=np.uint8)


def bch_encode(message: np.ndarray) -> np.ndarray:
    """85 message bits -> 128-bit frame (127 codeword bits + 1 zero pad)."""
    spec = bch_spec()
    message = np.asarray(message, dtype=np.uint8)
    if message.size != spec.k:
        raise LengthMismatch(f"message length {message.size} != {spec.k}")
    m_int = _bits_to_int(message)
    parity = _gf2_poly_mod(m_int << spec.r, spec.generator)
    frame = np.zeros(spec.n + 1, dtype=np.uint8)
    frame[:spec.k] = message
    frame[spec.k:spec.n] = _int_to_bits(parity, spec.r)
    return frame


def bch_decode(frame: np.ndarray) -> tuple[np.ndarray, int]:
    """128-bit frame -> (85 message bits, corrected bit count).

    Corrects any pattern of <= t bit errors in the 127 codeword bits; the pad
    bit is ignored.  Raises DecodeFailure when the syndromes are inconsistent.
    """
    spec = bch_spec()
    fs = spec.field
    frame = np.asarray(frame, dtype=np.uint8)
    if frame.size != spec.n + 1:
        raise LengthMismatch(f"frame length {frame.size} != {spec.n + 1}")
    word = frame[:spec.n].copy()
    # S_j = sum over set bit positions of alpha^(j * degree)
    set_degs = [spec.n - 1 - i for i in np.flatnonzero(word)]
    synd = []
    for j in range(1, 2 * spec.t + 1):
        s = 0
        for d in set_degs:
            s ^= gf2m.pow_alpha(fs, j * d)
        synd.append(s)
    if not any(synd):
        return word[:spec.k], 0

    lam = _berlekamp_massey(fs, synd)
    nerr = gf2m.poly_deg(lam)
    if nerr > spec.t:
        raise DecodeFailure("locator degree exceeds capability")
    flips = []
    for pos in range(spec.n):
        x = gf2m.pow_alpha(fs, spec.n - 1 - pos)
        if gf2m.poly_eval(fs, lam, inv(fs, x)) == 0:
            flips.append(pos)
    if len(flips) != nerr:
        raise DecodeFailure("locator degree does not match root count")
    for pos in flips:
        word[pos] ^= 1
    # verify
    set_degs = [spec.n - 1 - i for i in np.flatnonzero(word)]
    for j in range(1, 2 * spec.t + 1):
        s = 0
        for d in set_degs:
            s ^= gf2m.pow_alpha(fs, j * d)
        if s:
            raise DecodeFailure("residual syndromes after correction")
    return word[:spec.k], len(flips)
