"""Mu-law companding applied componentwise to complex baseband samples.

Forward: F(y) = sgn(y) ln(1 + mu |y|) / ln(1 + mu) on peak-normalized
components; inverse: F^-1(r) = sgn(r) (1/mu) ((1 + mu)^|r| - 1), then the
peak scale is restored.  The scale is treated as known at the receiver.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

CLAMP_TOLERANCE = 1e-6


class DegenerateSignal(ValueError):
    pass


@dataclass(frozen=True)
class CompanderConfig:
    mu: float = 25.0

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")


def _forward(y: np.ndarray, mu: float) -> np.ndarray:
    return np.sign(y) * np.log1p(mu * np.abs(y)) / np.log1p(mu)


def _inverse(r: np.ndarray, mu: float) -> np.ndarray:
    return np.sign(r) * (np.expm1(np.abs(r) * np.log1p(mu))) / mu


def mu_compress(signal: np.ndarray,
                cfg: CompanderConfig = CompanderConfig()) -> tuple[np.ndarray, float]:
    """Compand a complex signal; returns (companded signal, peak scale).

    The scale is the largest absolute real or imaginary component; both
    components are normalized by it before the transform, so outputs lie in
    [-1, 1] per component.  An all-zero signal passes through with scale 1.
    """
    signal = np.asarray(signal, dtype=complex)
    if signal.size == 0:
        raise DegenerateSignal("empty signal")
    scale = max(np.max(np.abs(signal.real)), np.max(np.abs(signal.imag)))
    if scale == 0.0:
        return signal.copy(), 1.0
    out = (_forward(signal.real / scale, cfg.mu)
           + 1j * _forward(signal.imag / scale, cfg.mu))
    return out, float(scale)


def mu_expand(signal: np.ndarray, scale: float,
              cfg: CompanderConfig = CompanderConfig()) -> tuple[np.ndarray, int]:
    """Invert mu_compress; returns (signal, saturation count).

    Components outside [-1, 1] (noise overshoot) are clamped; the count of
    clamped components beyond the tolerance is reported.
    """
    signal = np.asarray(signal, dtype=complex)
    re, im = signal.real, signal.imag
    saturated = int(np.sum(np.abs(re) > 1 + CLAMP_TOLERANCE)
                    + np.sum(np.abs(im) > 1 + CLAMP_TOLERANCE))
    re = np.clip(re, -1.0, 1.0)
    im = np.clip(im, -1.0, 1.0)
    out = (_inverse(re, cfg.mu) + 1j * _inverse(im, cfg.mu)) * scale
    return out, saturated
