"""Measurement helpers: PAPR, empirical CCDF, BER counting, information
content of a codeword-probability."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DegenerateSignal(ValueError):
    pass


class TooFewSamples(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class DomainError(ValueError):
    pass


def papr_db(window: np.ndarray) -> float:
    """10 log10(peak instantaneous power / mean power) over the window."""
    window = np.asarray(window)
    power = np.abs(window) ** 2
    mean = power.mean()
    if mean == 0.0:
        raise DegenerateSignal("all-zero window")
    return float(10.0 * np.log10(power.max() / mean))


def frame_paprs(signal: np.ndarray, M: int, Lp: int,
                n_frames: int) -> np.ndarray:
    """Per-frame PAPR of a burst: one M-sample window centered on each
    frame's steady-state span (group delay (Lp-1)/2 accounted for)."""
    center0 = (Lp - 1) // 2
    out = np.empty(n_frames)
    for l in range(n_frames):
        start = center0 + l * M - M // 2
        start = max(start, 0)
        out[l] = papr_db(signal[start:start + M])
    return out


@dataclass(frozen=True)
class CcdfCurve:
    thresholds_db: np.ndarray
    probabilities: np.ndarray


CCDF_GRID_STEP_DB = 0.1


def ccdf(samples_db: np.ndarray) -> CcdfCurve:
    """Empirical complementary CDF of PAPR samples on a 0.1 dB grid."""
    samples_db = np.asarray(samples_db, dtype=float)
    if samples_db.size < 100:
        raise TooFewSamples(f"need >= 100 samples, got {samples_db.size}")
    lo = np.floor(samples_db.min() / CCDF_GRID_STEP_DB) * CCDF_GRID_STEP_DB
    hi = np.ceil(samples_db.max() / CCDF_GRID_STEP_DB) * CCDF_GRID_STEP_DB
    grid = np.arange(lo, hi + CCDF_GRID_STEP_DB / 2, CCDF_GRID_STEP_DB)
    probs = np.array([(samples_db > g).mean() for g in grid])
    return CcdfCurve(thresholds_db=grid, probabilities=probs)


def papr_at_probability(curve: CcdfCurve, prob: float) -> float:
    """Smallest grid threshold whose exceedance probability is <= prob."""
    idx = np.flatnonzero(curve.probabilities <= prob)
    if idx.size == 0:
        return float(curve.thresholds_db[-1])
    return float(curve.thresholds_db[idx[0]])


@dataclass(frozen=True)
class BerRecord:
    snr_db: float
    scheme: str
    channel: str
    companding: bool
    bits_total: int
    bits_error: int

    @property
    def ber(self) -> float:
        return self.bits_error / self.bits_total if self.bits_total else 0.0


def ber(tx_bits: np.ndarray, rx_bits: np.ndarray) -> tuple[int, int]:
    """(error count, total count) between two equal-length bit streams."""
    tx_bits = np.asarray(tx_bits).ravel()
    rx_bits = np.asarray(rx_bits).ravel()
    if tx_bits.size != rx_bits.size:
        raise LengthMismatch(
            f"stream lengths differ: {tx_bits.size} vs {rx_bits.size}")
    return int(np.count_nonzero(tx_bits != rx_bits)), int(tx_bits.size)


def information(p: float) -> float:
    """Information content in bits of an outcome with probability p."""
    if not 0.0 < p <= 1.0:
        raise DomainError(f"probability {p} outside (0, 1]")
    return -math.log2(p)
