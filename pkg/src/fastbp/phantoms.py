"""Test phantoms and the analytic oracles used to validate the engines.

The two closed-form oracles are the point-source backprojection profile
(1/distance) and the radial spectrum of the backprojected unit disk,
``J1(|w|) / |w|^2``.  Both are cheap to evaluate and independent of every
discrete code path, which is what makes them useful as ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from scipy import special

from .grids import CartesianImage

__all__ = [
    "Ellipse",
    "EllipseSet",
    "PointSourceSet",
    "shepp_logan",
    "rasterize",
    "circ_phantom",
    "point_source_psf",
    "point_source_psf_rotated",
    "circ_bp_spectrum",
    "bessel_j1",
    "bessel_i0",
    "point_sources",
]


@dataclass(frozen=True)
class Ellipse:
    """Additive ellipse: center, semi-axes (A, B), tilt in radians, intensity."""

    center: tuple[float, float]
    semi_axes: tuple[float, float]
    tilt: float
    intensity: float

    def __post_init__(self):
        if self.semi_axes[0] <= 0 or self.semi_axes[1] <= 0:
            raise ValueError("semi-axes must be positive")


@dataclass(frozen=True)
class EllipseSet:
    ellipses: tuple[Ellipse, ...]

    def __post_init__(self):
        if len(self.ellipses) == 0:
            raise ValueError("EllipseSet must be nonempty")

    def __iter__(self):
        return iter(self.ellipses)

    def __len__(self):
        return len(self.ellipses)


@dataclass(frozen=True)
class PointSourceSet:
    """Unit point sources inside [-0.3, 0.3]^2, deterministic per seed."""

    points: np.ndarray = field(repr=False)
    seed: int = 0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must have shape (n, 2)")
        if np.max(np.abs(pts)) > 0.3 + 1e-12:
            raise ValueError("points must lie inside [-0.3, 0.3]^2")
        pts = np.ascontiguousarray(pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)


def shepp_logan() -> EllipseSet:
    """The standard 10-ellipse head phantom (original gray levels), loaded
    from the packaged parameter table ``data/shepp_logan.txt``."""
    text = resources.files("fastbp").joinpath("data/shepp_logan.txt").read_text()
    ellipses = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cx, cy, a, b, tilt_deg, rho = (float(tok) for tok in line.split())
        ellipses.append(Ellipse((cx, cy), (a, b), math.radians(tilt_deg), rho))
    return EllipseSet(tuple(ellipses))


def rasterize(ellipse_set: EllipseSet, n: int) -> CartesianImage:
    """Rasterize on an n x n grid: a pixel sums the intensities of every
    ellipse whose open interior contains its center."""
    if n < 2:
        raise ValueError("n must be >= 2")
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs)
    out = np.zeros((n, n))
    for e in ellipse_set:
        ct, st = math.cos(e.tilt), math.sin(e.tilt)
        dx = X - e.center[0]
        dy = Y - e.center[1]
        u = (dx * ct + dy * st) / e.semi_axes[0]
        v = (-dx * st + dy * ct) / e.semi_axes[1]
        out += e.intensity * (u * u + v * v < 1.0)
    return CartesianImage(n, n, out)


def circ_phantom(n: int) -> CartesianImage:
    """Unit disk indicator with a half-valued band where the pixel center is
    within half a pixel diagonal of the circle ||x|| = 1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs)
    r = np.hypot(X, Y)
    half_diag = 0.5 * math.hypot(2.0 / n, 2.0 / n)
    out = np.where(r < 1.0, 1.0, 0.0)
    out[np.abs(r - 1.0) < half_diag] = 0.5
    return CartesianImage(n, n, out)


def point_source_psf(x, a) -> np.ndarray:
    """Backprojection profile of a unit point source at ``a``: 1/||x - a||.

    Raises on evaluation at the singular point.
    """
    x = np.asarray(x, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    d = np.linalg.norm(np.atleast_2d(x - a), axis=-1)
    if np.any(d == 0.0):
        raise ValueError("point_source_psf is singular at x = a")
    out = 1.0 / d
    return out[0] if x.ndim == 1 else out.reshape(x.shape[:-1])


def point_source_psf_rotated(x, a) -> np.ndarray:
    """Alternate closed form ``|a| / sqrt((x.a)^2 + (|a|^2 - x.a_perp)^2)``
    with ``a_perp`` the quarter-turn rotation of ``a``.

    Algebraically this equals 1/||x - a_perp||: its singularity sits at the
    rotated source position, not at ``a``.  It is kept so the discrete
    engines can be compared against both candidate profiles; see the
    point-source acceptance test for the verdict.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    a = np.asarray(a, dtype=np.float64)
    a_perp = np.array([-a[1], a[0]])
    na = float(np.linalg.norm(a))
    if na == 0.0:
        raise ValueError("rotated form is undefined for a source at the origin")
    xa = x @ a
    xap = x @ a_perp
    denom2 = xa**2 + (na**2 - xap) ** 2
    if np.any(denom2 == 0.0):
        raise ValueError("point_source_psf_rotated is singular at the rotated source")
    out = na / np.sqrt(denom2)
    return out[0] if np.asarray(x).ndim == 1 else out


def circ_bp_spectrum(omega_norm) -> np.ndarray:
    """Radial spectrum of the backprojected unit disk: J1(|w|) / |w|^2.

    Diverges at |w| = 0 (the DC of a backprojection is unbounded), so zero
    arguments are rejected.
    """
    w = np.asarray(omega_norm, dtype=np.float64)
    if np.any(w == 0.0):
        raise ValueError("circ_bp_spectrum diverges at |w| = 0")
    return special.j1(w) / w**2


def bessel_j1(x) -> np.ndarray:
    """Bessel function of the first kind, order 1."""
    return special.j1(np.asarray(x, dtype=np.float64))


def bessel_i0(x) -> np.ndarray:
    """Modified Bessel function of the first kind, order 0."""
    return special.i0(np.asarray(x, dtype=np.float64))


def point_sources(count: int, seed: int) -> PointSourceSet:
    """`count` points drawn uniformly from [-0.3, 0.3]^2 with a dedicated
    seeded generator (no global RNG state)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-0.3, 0.3, size=(count, 2))
    return PointSourceSet(pts, seed)
