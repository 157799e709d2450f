"""GF(2^m) arithmetic backed by log/antilog tables.

Field elements are plain ints in [0, 2^m), interpreted as GF(2) coefficient
vectors.  Polynomials over the field are lists of ints, lowest degree first;
the zero polynomial is the empty list (degree -1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GfError(ValueError):
    pass


class NonPrimitivePolynomial(GfError):
    """The supplied modulus does not generate the full multiplicative group."""


class DegreeMismatch(GfError):
    pass


class DivisionByZero(GfError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    m: int
    primitive_poly: int
    exp_table: np.ndarray  # exp_table[i] = alpha^i, length 2^m (wraps at order)
    log_table: np.ndarray  # log_table[alpha^i] = i, log_table[0] = -1

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Multiplicative group order, 2^m - 1."""
        return (1 << self.m) - 1

    def __post_init__(self):
        self.exp_table.setflags(write=False)
        self.log_table.setflags(write=False)


def field_new(m: int, primitive_poly: int) -> FieldSpec:
    """Build a GF(2^m) field from a degree-m primitive polynomial.

    Raises NonPrimitivePolynomial if x does not have multiplicative order
    2^m - 1 modulo the polynomial, DegreeMismatch if the polynomial degree
    is not m.
    """
    if not 2 <= m <= 16:
        raise GfError(f"extension degree {m} outside supported range 2..16")
    if primitive_poly.bit_length() - 1 != m:
        raise DegreeMismatch(
            f"modulus degree {primitive_poly.bit_length() - 1} != m = {m}")
    size = 1 << m
    order = size - 1
    exp = np.zeros(size, dtype=np.int64)
    log = np.full(size, -1, dtype=np.int64)
    cur = 1
    for i in range(order):
        if log[cur] != -1:
            # revisited an element before exhausting the group
            raise NonPrimitivePolynomial(
                f"x has order {i} < {order} modulo {primitive_poly:#x}")
        exp[i] = cur
        log[cur] = i
        cur <<= 1
        if cur & size:
            cur ^= primitive_poly
    if cur != 1:
        raise NonPrimitivePolynomial(
            f"x^{order} != 1 modulo {primitive_poly:#x}")
    exp[order] = 1  # wrap entry so exp[log a + log b] works without mod
    return FieldSpec(m=m, primitive_poly=primitive_poly, exp_table=exp,
                     log_table=log)


def add(a: int, b: int) -> int:
    """Characteristic-2 addition (XOR); also subtraction."""
    return a ^ b


def mul(fs: FieldSpec, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(fs.exp_table[(fs.log_table[a] + fs.log_table[b]) % fs.order])


def inv(fs: FieldSpec, a: int) -> int:
    if a == 0:
        raise DivisionByZero("inverse of 0")
    return int(fs.exp_table[(fs.order - fs.log_table[a]) % fs.order])


def div(fs: FieldSpec, a: int, b: int) -> int:
    if b == 0:
        raise DivisionByZero("division by 0")
    if a == 0:
        return 0
    return int(fs.exp_table[(fs.log_table[a] - fs.log_table[b]) % fs.order])


def pow_alpha(fs: FieldSpec, e: int) -> int:
    """alpha^e for any integer exponent."""
    return int(fs.exp_table[e % fs.order])


def arr_mul(fs: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise product of two arrays of field elements."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    nz = (a != 0) & (b != 0)
    la = fs.log_table[np.broadcast_to(a, out.shape)[nz]]
    lb = fs.log_table[np.broadcast_to(b, out.shape)[nz]]
    out[nz] = fs.exp_table[(la + lb) % fs.order]
    return out


# --- polynomials, lowest degree first ---------------------------------------

def poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_deg(p: list[int]) -> int:
    return len(p) - 1


def poly_add(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] ^= c
    for i, c in enumerate(q):
        out[i] ^= c
    return poly_trim(out)


def poly_mul(fs: FieldSpec, p: list[int], q: list[int]) -> list[int]:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] ^= mul(fs, a, b)
    return poly_trim(out)


def poly_scale(fs: FieldSpec, p: list[int], c: int) -> list[int]:
    return poly_trim([mul(fs, a, c) for a in p])


def poly_eval(fs: FieldSpec, p: list[int], x: int) -> int:
    """Horner evaluation of p at x."""
    acc = 0
    for c in reversed(p):
        acc = mul(fs, acc, x) ^ c
    return acc


def poly_divmod(fs: FieldSpec, p: list[int],
                q: list[int]) -> tuple[list[int], list[int]]:
    """(quotient, remainder) with deg(remainder) < deg(divisor)."""
    q = poly_trim(list(q))
    if not q:
        raise DivisionByZero("polynomial division by zero polynomial")
    rem = list(poly_trim(list(p)))
    dq = poly_deg(q)
    lead_inv = inv(fs, q[-1])
    quot = [0] * max(len(rem) - dq, 0)
    while poly_deg(rem) >= dq:
        shift = poly_deg(rem) - dq
        coef = mul(fs, rem[-1], lead_inv)
        quot[shift] = coef
        for i, c in enumerate(q):
            rem[shift + i] ^= mul(fs, c, coef)
        rem = poly_trim(rem)
    return poly_trim(quot), rem


# canonical moduli used by the codecs: GF(32) <- x^5+x^2+1,
# GF(128) <- x^7+x^3+1
PRIM_POLY_GF32 = 0b100101
PRIM_POLY_GF128 = 0b10001001

_FIELD_CACHE: dict[tuple[int, int], FieldSpec] = {}


def cached_field(m: int, primitive_poly: int | None = None) -> FieldSpec:
    """Shared immutable field instances for the standard moduli."""
    if primitive_poly is None:
        primitive_poly = {5: PRIM_POLY_GF32, 7: PRIM_POLY_GF128}[m]
    key = (m, primitive_poly)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = field_new(m, primitive_poly)
    return _FIELD_CACHE[key]
