"""Image comparison metrics used by tests and the benchmark harness."""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft

from .grids import CartesianImage

__all__ = ["mse", "relative_l2", "hf_energy", "total_variation"]


def _values(a) -> np.ndarray:
    return a.values if isinstance(a, CartesianImage) else np.asarray(a, dtype=np.float64)


def _check_dims(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")


def mse(a, b) -> float:
    """Mean squared difference."""
    x, y = _values(a), _values(b)
    _check_dims(x, y)
    return float(np.mean((x - y) ** 2))


def relative_l2(a, b) -> float:
    """||a - b||_2 / ||b||_2 (b is the reference)."""
    x, y = _values(a), _values(b)
    _check_dims(x, y)
    den = np.linalg.norm(y)
    if den == 0.0:
        return 0.0 if np.linalg.norm(x) == 0.0 else float("inf")
    return float(np.linalg.norm(x - y) / den)


def hf_energy(a, fraction: float) -> float:
    """Spectral energy above `fraction` of the radial Nyquist frequency."""
    if not (0.0 <= fraction <= 1.0):
        raise ValueError("fraction must lie in [0, 1]")
    x = _values(a)
    ny, nx = x.shape
    F = sfft.fft2(x)
    fy = np.fft.fftfreq(ny)[:, None]
    fx = np.fft.fftfreq(nx)[None, :]
    radius = np.hypot(fy, fx)
    mask = radius > fraction * 0.5
    return float(np.sum(np.abs(F[mask]) ** 2))


def total_variation(a) -> float:
    """Anisotropic total variation: sum of absolute forward differences."""
    x = _values(a)
    return float(np.sum(np.abs(np.diff(x, axis=0))) + np.sum(np.abs(np.diff(x, axis=1))))
