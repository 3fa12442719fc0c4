"""Spectral decomposition solver for u_t + u_xxx = 0 on [0, 1]."""

from ._core import (
    ConfigError,
    InputError,
    NumericalError,
    classify_time,
    datum_kinds,
    decay_exponent,
    detect_jumps,
    eval_v,
    families,
    fourier_coeffs,
    fourier_coeffs_from_samples,
    revival_period,
    run_scenario,
)

__all__ = [
    "ConfigError",
    "InputError",
    "NumericalError",
    "classify_time",
    "datum_kinds",
    "decay_exponent",
    "detect_jumps",
    "eval_v",
    "families",
    "fourier_coeffs",
    "fourier_coeffs_from_samples",
    "magnitudes",
    "revival_period",
    "run_scenario",
]


def magnitudes(coeffs):
    """sqrt((|c_n|^2 + |c_-n|^2) / 2) for n = 0..N."""
    import numpy as np

    c = np.asarray(coeffs)
    n = c.size // 2
    pos, neg = c[n:], c[n::-1]
    return np.sqrt(0.5 * (np.abs(pos) ** 2 + np.abs(neg) ** 2))
