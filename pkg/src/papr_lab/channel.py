"""AWGN and ITU tapped-delay-line channels with block Rayleigh fading,
plus the one-tap zero-forcing sub-channel equalizer.

Tap tables follow the standard ITU-R M.1225 Pedestrian B / Vehicular A
definitions.  Fading is quasi-static per burst: one complex Gaussian gain
per tap, power profile normalized to unit total average power.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_SAMPLE_RATE = 10e6  # 100 ns resolution: all ITU delays land cleanly


class UnknownProfile(ValueError):
    pass


@dataclass(frozen=True)
class ChannelProfile:
    name: str
    tap_delays_ns: tuple  # strictly increasing, first 0
    tap_powers_db: tuple
    fading: str  # "none" | "block-rayleigh"


_PROFILES = {
    "awgn": ChannelProfile(
        name="awgn", tap_delays_ns=(0.0,), tap_powers_db=(0.0,),
        fading="none"),
    "pedestrian_b": ChannelProfile(
        name="pedestrian_b",
        tap_delays_ns=(0.0, 200.0, 800.0, 1200.0, 2300.0, 3700.0),
        tap_powers_db=(0.0, -0.9, -4.9, -8.0, -7.8, -23.9),
        fading="block-rayleigh"),
    "vehicular_a": ChannelProfile(
        name="vehicular_a",
        tap_delays_ns=(0.0, 310.0, 710.0, 1090.0, 1730.0, 2510.0),
        tap_powers_db=(0.0, -1.0, -9.0, -10.0, -15.0, -20.0),
        fading="block-rayleigh"),
}


def make_profile(name: str) -> ChannelProfile:
    try:
        return _PROFILES[name]
    except KeyError:
        raise UnknownProfile(f"unknown channel profile {name!r}") from None


@dataclass(frozen=True)
class ChannelRealization:
    fir_taps: np.ndarray  # complex, at the simulation sample rate
    merged_taps: bool = False  # True when delays collided onto one sample

    def __post_init__(self):
        self.fir_taps.setflags(write=False)


def realize(profile: ChannelProfile, sample_rate: float,
            rng: np.random.Generator | None = None) -> ChannelRealization:
    """Draw one quasi-static realization of the profile.

    Block-Rayleigh profiles need an rng; tap delays are rounded to the
    nearest sample, colliding taps merge with power addition.
    """
    if sample_rate <= 0:
        raise ValueError("sample_rate must be positive")
    powers_lin = 10.0 ** (np.asarray(profile.tap_powers_db) / 10.0)
    powers_lin = powers_lin / powers_lin.sum()  # unit average channel power
    idx = np.rint(np.asarray(profile.tap_delays_ns) * 1e-9 * sample_rate)
    idx = idx.astype(int)
    span = int(idx.max()) + 1
    merged = len(np.unique(idx)) != len(idx)
    tap_power = np.zeros(span)
    for i, p in zip(idx, powers_lin):
        tap_power[i] += p
    if profile.fading == "none":
        taps = np.sqrt(tap_power).astype(complex)
    else:
        if rng is None:
            raise ValueError("fading profile requires an rng")
        g = rng.standard_normal(span) + 1j * rng.standard_normal(span)
        taps = np.sqrt(tap_power / 2.0) * g
    if not np.any(taps):
        taps[0] = 1.0  # degenerate all-zero draw is measure-zero but fatal
    return ChannelRealization(fir_taps=taps, merged_taps=merged)


def apply(signal: np.ndarray, ch: ChannelRealization, snr_db: float,
          rng: np.random.Generator | None = None) -> np.ndarray:
    """Convolve with the channel taps and add complex white Gaussian noise.

    Noise power is set against the empirical power of the faded signal so
    the received SNR over the full band equals snr_db.  snr_db = inf (or
    None) skips the noise entirely.
    """
    signal = np.asarray(signal, dtype=complex)
    faded = np.convolve(signal, ch.fir_taps)
    if snr_db is None or math.isinf(snr_db):
        return faded
    if rng is None:
        raise ValueError("finite snr requires an rng")
    sig_power = np.mean(np.abs(faded) ** 2)
    noise_power = sig_power / (10.0 ** (snr_db / 10.0))
    noise = (rng.standard_normal(faded.size)
             + 1j * rng.standard_normal(faded.size))
    return faded + np.sqrt(noise_power / 2.0) * noise


SINGULAR_THRESHOLD = 1e-6


def frequency_response(ch: ChannelRealization, M: int) -> np.ndarray:
    """Channel response at the M sub-channel center frequencies 2 pi k / M."""
    t = np.arange(ch.fir_taps.size)
    k = np.arange(M)[:, None]
    return (ch.fir_taps * np.exp(-2j * np.pi * k * t / M)).sum(axis=1)


def equalize(grid: np.ndarray, ch: ChannelRealization,
             M: int) -> tuple[np.ndarray, np.ndarray]:
    """One-tap zero-forcing per sub-channel with genie channel knowledge.

    Returns (equalized grid, singular-subchannel mask); sub-channels whose
    response magnitude is below the threshold pass through unequalized and
    are flagged.
    """
    if grid.shape[0] != M:
        raise ValueError(f"grid has {grid.shape[0]} sub-channels, expected {M}")
    H = frequency_response(ch, M)
    singular = np.abs(H) < SINGULAR_THRESHOLD
    Hsafe = np.where(singular, 1.0, H)
    return grid / Hsafe[:, None], singular
