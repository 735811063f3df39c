"""Slow, trusted backprojectors.

Two independent discretizations of the same operator: the pixel-driven
angular sum and the circle-stacking quadrature.  Both are O(n^2 * angles)
and exist to be correct, not fast; every fast engine is validated against
them.
"""

from __future__ import annotations

import math

import numpy as np

from .grids import CartesianImage, Sinogram, _lerp_profile
from .radon import radon_numeric

__all__ = ["backproject_naive", "backproject_circles", "adjointness_gap"]


def backproject_naive(g: Sinogram, n: int) -> CartesianImage:
    """Pixel-driven backprojection: b(x) = dtheta * sum_k g(x . xi_k, theta_k).

    The ray offset is linearly interpolated on the t grid; offsets past the
    sampled range read zero.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs)
    acc = np.zeros((n, n))
    inv_dt = 1.0 / g.dt
    for j in range(g.ntheta):
        theta = j * g.dtheta
        t = X * math.cos(theta) + Y * math.sin(theta)
        acc += _lerp_profile(g.values[:, j], (t + 1.0) * inv_dt)
    return CartesianImage(n, n, acc * g.dtheta)


def _sample_sinogram_plane(g: Sinogram, yx: np.ndarray, yy: np.ndarray) -> np.ndarray:
    """Evaluate the sinogram as a function of the plane: the point y maps to
    (t, theta) = (signed distance, direction mod pi) and is read bilinearly,
    with the angle axis wrapping through the evenness rule g(t, theta + pi)
    = g(-t, theta)."""
    r = np.hypot(yx, yy)
    phi = np.mod(np.arctan2(yy, yx), 2.0 * math.pi)
    theta = np.mod(phi, math.pi)
    t = np.where(phi < math.pi, r, -r)

    fj = theta / g.dtheta
    j0 = np.floor(fj).astype(np.int64)
    wj = fj - j0
    j0 = np.clip(j0, 0, g.ntheta - 1)
    j1 = j0 + 1
    wrap = j1 >= g.ntheta  # past the last angle: neighbour is theta=0 with -t
    j1 = np.where(wrap, 0, j1)
    t1 = np.where(wrap, -t, t)

    fi0 = (t + 1.0) / g.dt
    fi1 = (t1 + 1.0) / g.dt

    def lerp_cols(fi, jj):
        i0 = np.floor(fi).astype(np.int64)
        wi = fi - i0
        i1 = i0 + 1
        ok0 = (i0 >= 0) & (i0 < g.nt)
        ok1 = (i1 >= 0) & (i1 < g.nt)
        v = g.values
        v0 = np.where(ok0, v[np.clip(i0, 0, g.nt - 1), jj], 0.0)
        v1 = np.where(ok1, v[np.clip(i1, 0, g.nt - 1), jj], 0.0)
        return v0 * (1.0 - wi) + v1 * wi

    return lerp_cols(fi0, j0) * (1.0 - wj) + lerp_cols(fi1, j1) * wj


def backproject_circles(g: Sinogram, n: int, m: int | None = None) -> CartesianImage:
    """Circle-stacking backprojection.

    Each pixel averages the sinogram (read as a function of the plane) over
    the circle through the origin centered at x/2 with radius ||x||/2:
    ``b(x) = (1/2) * (2 pi / m) * sum_k p(x/2 + (||x||/2) xi_k)``.
    A discretization of the same operator as :func:`backproject_naive` along
    entirely different coordinates, which is what makes the pair a useful
    cross-check.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if m is None:
        m = 4 * g.ntheta
    if m < 16:
        raise ValueError("m must be >= 16 quadrature nodes")
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs)
    R = np.hypot(X, Y)
    acc = np.zeros((n, n))
    for k in range(m):
        psi = 2.0 * math.pi * k / m
        yx = 0.5 * X + 0.5 * R * math.cos(psi)
        yy = 0.5 * Y + 0.5 * R * math.sin(psi)
        acc += _sample_sinogram_plane(g, yx, yy)
    return CartesianImage(n, n, acc * (math.pi / m))


def adjointness_gap(f: CartesianImage, g: Sinogram, step: float | None = None) -> float:
    """Normalized defect of <R f, g> = <f, B g> under Riemann inner products.

    R is the numeric ray integrator and B the naive backprojector; the gap
    measures how far the two discretizations are from being exact adjoints.
    """
    rf = radon_numeric(f, g.nt, g.ntheta, step=step)
    bg = backproject_naive(g, f.nx)
    cell_v = g.dt * g.dtheta
    cell_u = f.dx * f.dy
    lhs = float(np.sum(rf.values * g.values)) * cell_v
    rhs = float(np.sum(f.values * bg.values)) * cell_u
    nf = math.sqrt(float(np.sum(f.values**2)) * cell_u)
    ng = math.sqrt(float(np.sum(g.values**2)) * cell_v)
    if nf == 0.0 or ng == 0.0:
        return 0.0
    return abs(lhs - rhs) / (nf * ng)
