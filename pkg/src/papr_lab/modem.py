"""FBMC-OQAM modem: 4-QAM mapping, OQAM staggering, synthesis/analysis banks.

The direct-form transmultiplexer: each sub-channel filter is the exponential
modulation of one real linear-phase prototype designed by frequency sampling,
g_k(m) = p(m) exp(j 2 pi k / M (m - (Lp - 1)/2)).  Sub-channel data moves at
twice the QAM symbol rate (real/imag staggered by half a symbol), with phase
factors j^(k+n) keeping adjacent sub-channels orthogonal.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve


class UnsupportedOverlap(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class ConfigMismatch(ValueError):
    pass


class SignalTooShort(ValueError):
    pass


# frequency-sampling target values per overlap factor
_FREQ_SAMPLES = {
    2: [1.0, np.sqrt(2) / 2],
    3: [1.0, 0.911438, 0.411438],
    4: [1.0, 0.971960, np.sqrt(2) / 2, 0.235147],
}


def design_prototype(M: int, K: int) -> np.ndarray:
    """Length K*M - 1 real symmetric prototype, unit center tap."""
    if K not in _FREQ_SAMPLES:
        raise UnsupportedOverlap(f"no coefficient table for K = {K}")
    if M < 2 or M & (M - 1):
        raise ConfigMismatch(f"M = {M} is not a power of two")
    A = _FREQ_SAMPLES[K]
    L = K * M - 1
    m = np.arange(L)
    p = np.full(L, A[0])
    for k in range(1, K):
        p = p + 2.0 * (-1) ** k * A[k] * np.cos(2 * np.pi * k * (m + 1) / (K * M))
    return p / p[(L - 1) // 2]


@dataclass(frozen=True)
class ModemConfig:
    M: int = 64
    K: int = 4
    frames_per_burst: int = 10
    prototype: np.ndarray = field(default=None, repr=False)

    @property
    def Lp(self) -> int:
        return self.K * self.M - 1

    def __post_init__(self):
        if self.prototype is None:
            object.__setattr__(self, "prototype",
                               design_prototype(self.M, self.K))
        self.prototype.setflags(write=False)


def subchannel_filters(cfg: ModemConfig) -> np.ndarray:
    """(M, Lp) complex array of synthesis filters; row 0 is the prototype."""
    m = np.arange(cfg.Lp)
    k = np.arange(cfg.M)[:, None]
    phase = np.exp(2j * np.pi * k / cfg.M * (m - (cfg.Lp - 1) / 2))
    return cfg.prototype * phase


_QAM_SCALE = 1 / np.sqrt(2)


def qam_map(bits: np.ndarray) -> np.ndarray:
    """2M bits -> M Gray-mapped unit-energy 4-QAM symbols (bit 0 -> +)."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 2:
        raise LengthMismatch("bit count must be even")
    re = 1.0 - 2.0 * bits[0::2]
    im = 1.0 - 2.0 * bits[1::2]
    return (re + 1j * im) * _QAM_SCALE


def qam_demap(symbols: np.ndarray) -> np.ndarray:
    """Hard-decision nearest-point demapping, scale invariant."""
    symbols = np.asarray(symbols)
    bits = np.empty(2 * symbols.size, dtype=np.uint8)
    bits[0::2] = (symbols.real < 0).astype(np.uint8).ravel()
    bits[1::2] = (symbols.imag < 0).astype(np.uint8).ravel()
    return bits


def frames_to_grid(frames: np.ndarray, M: int) -> np.ndarray:
    """(L, 2M) bit frames -> (M, L) QAM grid, one frame per column."""
    frames = np.atleast_2d(np.asarray(frames, dtype=np.uint8))
    if frames.shape[1] != 2 * M:
        raise LengthMismatch(f"frame length {frames.shape[1]} != {2 * M}")
    return np.stack([qam_map(f) for f in frames], axis=1)


def grid_to_frames(grid: np.ndarray) -> np.ndarray:
    """(M, L) QAM grid -> (L, 2M) bit frames."""
    return np.stack([qam_demap(grid[:, l]) for l in range(grid.shape[1])])


def theta(M: int, n_half: int) -> np.ndarray:
    """(M, n_half) phase grid j^(k+n)."""
    k = np.arange(M)[:, None]
    n = np.arange(n_half)[None, :]
    return 1j ** ((k + n) % 4)


def oqam_preprocess(grid: np.ndarray) -> np.ndarray:
    """(M, L) complex QAM grid -> (M, 2L) staggered grid with j^(k+n) phases.

    Even sub-channels transmit the real part first, odd ones the imaginary
    part; the half-symbol stagger doubles the time axis.
    """
    M, L = grid.shape
    d = np.empty((M, 2 * L))
    d[0::2, 0::2] = grid[0::2].real
    d[0::2, 1::2] = grid[0::2].imag
    d[1::2, 0::2] = grid[1::2].imag
    d[1::2, 1::2] = grid[1::2].real
    return d * theta(M, 2 * L)


def oqam_postprocess(grid: np.ndarray) -> np.ndarray:
    """Inverse of oqam_preprocess: conjugate phases, take the real part,
    recombine staggered pairs into complex QAM estimates."""
    M, n_half = grid.shape
    d = (grid * np.conj(theta(M, n_half))).real
    out = np.empty((M, n_half // 2), dtype=complex)
    out[0::2] = d[0::2, 0::2] + 1j * d[0::2, 1::2]
    out[1::2] = d[1::2, 1::2] + 1j * d[1::2, 0::2]
    return out


def synthesis(grid: np.ndarray, cfg: ModemConfig) -> np.ndarray:
    """Staggered grid (M, n_half) -> baseband samples (direct form).

    Each sub-channel sequence is upsampled by M/2 and filtered by its
    modulated prototype; branches are summed.
    """
    M, n_half = grid.shape
    if M != cfg.M:
        raise ConfigMismatch(f"grid has {M} sub-channels, config {cfg.M}")
    hop = M // 2
    up = np.zeros((M, (n_half - 1) * hop + 1), dtype=complex)
    up[:, ::hop] = grid
    branches = fftconvolve(up, subchannel_filters(cfg), mode="full", axes=1)
    return branches.sum(axis=0)


def analysis(signal: np.ndarray, cfg: ModemConfig, n_half: int) -> np.ndarray:
    """Baseband samples -> (M, n_half) staggered grid, delay compensated.

    The analysis filters are the time-reversed conjugates of the synthesis
    filters (equal to them for a linear-phase prototype); the cascade's
    Lp - 1 group delay is absorbed by the sampling offset and the gain
    sum(p^2) is normalized out.
    """
    signal = np.asarray(signal, dtype=complex)
    hop = cfg.M // 2
    need = (n_half - 1) * hop + cfg.Lp
    if signal.size < need:
        raise SignalTooShort(f"need {need} samples, got {signal.size}")
    filters = subchannel_filters(cfg)  # == analysis filters, see docstring
    y = fftconvolve(signal[None, :], filters, mode="full", axes=1)
    idx = cfg.Lp - 1 + hop * np.arange(n_half)
    gain = np.sum(cfg.prototype ** 2)
    return y[:, idx] / gain


def modulate_frames(frames: np.ndarray, cfg: ModemConfig) -> np.ndarray:
    """Bit frames (L, 2M) -> baseband burst."""
    return synthesis(oqam_preprocess(frames_to_grid(frames, cfg.M)), cfg)


def demodulate_burst(signal: np.ndarray, cfg: ModemConfig,
                     n_frames: int) -> np.ndarray:
    """Baseband burst -> recovered bit frames (L, 2M)."""
    grid = analysis(signal, cfg, 2 * n_frames)
    return grid_to_frames(oqam_postprocess(grid))
