"""Grid types and coordinate transforms shared by every backprojection engine.

All images live on the square [-1, 1]^2 with pixel centers at
``x_j = -1 + (j + 1/2) * dx``.  A sinogram samples ``g(t, theta)`` on
``t_i = -1 + i * dt`` (``dt = 2/nt``) and ``theta_j = j * pi/ntheta``.  Its
semi-polar unfolding covers ``s in [0, 1]`` (endpoint inclusive) and
``phi in [0, 2*pi)``; the log-polar grid substitutes ``rho = ln s``.

Frequency grids use angular frequency: DFT bin ``k`` of an ``n``-pixel axis
over [-1, 1] corresponds to ``omega = pi * k``.  Radial spectra sample
``sigma_m = m * dsigma`` with a dedicated DC row at ``m = 0``.

All containers are immutable after construction and every transform is a
pure function, so concurrent use on shared inputs is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CartesianImage",
    "Sinogram",
    "PolarSinogram",
    "LogPolarImage",
    "PolarSpectrum",
    "FrequencyImage",
    "sinogram_to_semipolar",
    "semipolar_to_sinogram",
    "semipolar_to_logpolar",
    "logpolar_to_semipolar",
    "compute_nrho",
    "adaptive_rho0",
    "logpolar_to_cartesian",
    "polar_to_cartesian_frequency",
    "dft_1d",
    "dft_2d",
    "cartesian_frequencies",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _require_finite(a: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} must contain only finite values")


# ---------------------------------------------------------------------------
# containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartesianImage:
    """Real image sampled on [-1, 1]^2; row-major with y as the outer axis."""

    nx: int
    ny: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("nx and ny must be >= 2")
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.ny, self.nx):
            raise ValueError(f"values must have shape (ny, nx) = {(self.ny, self.nx)}")
        _require_finite(v, "values")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def dx(self) -> float:
        return 2.0 / self.nx

    @property
    def dy(self) -> float:
        return 2.0 / self.ny

    def x_centers(self) -> np.ndarray:
        return -1.0 + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        return -1.0 + (np.arange(self.ny) + 0.5) * self.dy


@dataclass(frozen=True)
class Sinogram:
    """Projection data g(t_i, theta_j), shape (nt, ntheta)."""

    nt: int
    ntheta: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.nt < 2 or self.ntheta < 1:
            raise ValueError("nt must be >= 2 and ntheta >= 1")
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.nt, self.ntheta):
            raise ValueError(f"values must have shape (nt, ntheta) = {(self.nt, self.ntheta)}")
        _require_finite(v, "values")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def dt(self) -> float:
        return 2.0 / self.nt

    @property
    def dtheta(self) -> float:
        return math.pi / self.ntheta

    def t(self) -> np.ndarray:
        return -1.0 + np.arange(self.nt) * self.dt

    def theta(self) -> np.ndarray:
        return np.arange(self.ntheta) * self.dtheta


@dataclass(frozen=True)
class PolarSinogram:
    """Semi-polar samples on s_i = i/(ns-1) in [0, 1], phi_k = k * 2*pi/nphi."""

    ns: int
    nphi: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.ns < 2 or self.nphi < 2:
            raise ValueError("ns and nphi must be >= 2")
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.ns, self.nphi):
            raise ValueError(f"values must have shape (ns, nphi) = {(self.ns, self.nphi)}")
        _require_finite(v, "values")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def ds(self) -> float:
        return 1.0 / (self.ns - 1)

    @property
    def dphi(self) -> float:
        return 2.0 * math.pi / self.nphi

    def s(self) -> np.ndarray:
        return np.arange(self.ns) * self.ds

    def phi(self) -> np.ndarray:
        return np.arange(self.nphi) * self.dphi


@dataclass(frozen=True)
class LogPolarImage:
    """Samples on rho_i = rho0 + (i+1)*drho with drho = -rho0/nrho.

    The grid covers (rho0, 0] and always contains the rho = 0 row; radii are
    e^rho in (e^rho0, 1].
    """

    nrho: int
    nphi: int
    rho0: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.nrho < 2 or self.nphi < 2:
            raise ValueError("nrho and nphi must be >= 2")
        if not self.rho0 < 0:
            raise ValueError("rho0 must be negative")
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.nrho, self.nphi):
            raise ValueError(f"values must have shape (nrho, nphi) = {(self.nrho, self.nphi)}")
        _require_finite(v, "values")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def drho(self) -> float:
        return -self.rho0 / self.nrho

    @property
    def dphi(self) -> float:
        return 2.0 * math.pi / self.nphi

    def rho(self) -> np.ndarray:
        return self.rho0 + (np.arange(self.nrho) + 1) * self.drho

    def phi(self) -> np.ndarray:
        return np.arange(self.nphi) * self.dphi

    @property
    def fovea_radius(self) -> float:
        return math.exp(self.rho0)


@dataclass(frozen=True)
class PolarSpectrum:
    """Complex samples on radial frequency rays: sigma_m = m * dsigma >= 0."""

    nsigma: int
    ntheta: int
    dsigma: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.nsigma < 2 or self.ntheta < 2:
            raise ValueError("nsigma and ntheta must be >= 2")
        if not self.dsigma > 0:
            raise ValueError("dsigma must be positive")
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.nsigma, self.ntheta):
            raise ValueError(f"values must have shape (nsigma, ntheta) = {(self.nsigma, self.ntheta)}")
        _require_finite(v.view(np.float64), "values")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def dtheta(self) -> float:
        return 2.0 * math.pi / self.ntheta

    def sigma(self) -> np.ndarray:
        return np.arange(self.nsigma) * self.dsigma

    @property
    def sigma_max(self) -> float:
        return (self.nsigma - 1) * self.dsigma


@dataclass(frozen=True)
class FrequencyImage:
    """Cartesian frequency samples in FFT layout; bin k holds omega = pi * k."""

    nx: int
    ny: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("nx and ny must be >= 2")
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.ny, self.nx):
            raise ValueError(f"values must have shape (ny, nx) = {(self.ny, self.nx)}")
        _require_finite(v.view(np.float64), "values")
        object.__setattr__(self, "values", _freeze(v))


# ---------------------------------------------------------------------------
# interpolation helpers
# ---------------------------------------------------------------------------


def _lerp_axis0(values: np.ndarray, fidx: np.ndarray) -> np.ndarray:
    """Linear interpolation of each column of `values` at fractional row
    indices `fidx` (same trailing shape as the columns); out-of-range reads 0.
    """
    n = values.shape[0]
    i0 = np.floor(fidx).astype(np.int64)
    w = fidx - i0
    i1 = i0 + 1
    ok0 = (i0 >= 0) & (i0 < n)
    ok1 = (i1 >= 0) & (i1 < n)
    i0c = np.clip(i0, 0, n - 1)
    i1c = np.clip(i1, 0, n - 1)
    v0 = np.take_along_axis(values, i0c, axis=0)
    v1 = np.take_along_axis(values, i1c, axis=0)
    return np.where(ok0, v0, 0.0) * (1.0 - w) + np.where(ok1, v1, 0.0) * w


def _lerp_profile(profile: np.ndarray, fidx: np.ndarray) -> np.ndarray:
    """1-D linear interpolation at fractional indices; zero outside the grid."""
    n = profile.shape[0]
    i0 = np.floor(fidx).astype(np.int64)
    w = fidx - i0
    i1 = i0 + 1
    ok0 = (i0 >= 0) & (i0 < n)
    ok1 = (i1 >= 0) & (i1 < n)
    v0 = np.where(ok0, profile[np.clip(i0, 0, n - 1)], 0.0)
    v1 = np.where(ok1, profile[np.clip(i1, 0, n - 1)], 0.0)
    return v0 * (1.0 - w) + v1 * w


# ---------------------------------------------------------------------------
# sinogram <-> semi-polar
# ---------------------------------------------------------------------------


def sinogram_to_semipolar(g: Sinogram, ns: int | None = None) -> PolarSinogram:
    """Unfold a sinogram onto the semi-polar grid.

    For phi < pi the ray offset is s; for phi >= pi the negative-t half is
    flipped there: ``p(s, phi) = g(-s, phi - pi)``.  Off-grid t values are
    obtained by linear interpolation along t; t outside the sampled range
    reads zero.  `ns` overrides the default radial count nt // 2 (used by
    engines that oversample the radial axis before a DFT).
    """
    if ns is None:
        ns = g.nt // 2
    if ns < 2:
        raise ValueError("ns must be >= 2")
    nphi = 2 * g.ntheta
    s = np.arange(ns) / (ns - 1.0)

    # fractional t-index of +s and -s on the t grid
    fi_pos = (s + 1.0) / g.dt
    fi_neg = (-s + 1.0) / g.dt
    pos = _lerp_axis0(g.values, np.repeat(fi_pos[:, None], g.ntheta, axis=1))
    neg = _lerp_axis0(g.values, np.repeat(fi_neg[:, None], g.ntheta, axis=1))
    return PolarSinogram(ns, nphi, np.hstack([pos, neg]))


def semipolar_to_sinogram(p: PolarSinogram, nt: int, ntheta: int) -> Sinogram:
    """Fold a semi-polar array back onto the sinogram grid (inverse of
    :func:`sinogram_to_semipolar` up to interpolation error)."""
    if 2 * ntheta != p.nphi:
        raise ValueError("ntheta must equal nphi / 2")
    t = -1.0 + np.arange(nt) * (2.0 / nt)
    fs = np.abs(t) * (p.ns - 1.0)
    first = _lerp_axis0(p.values[:, :ntheta], np.repeat(fs[:, None], ntheta, axis=1))
    second = _lerp_axis0(p.values[:, ntheta:], np.repeat(fs[:, None], ntheta, axis=1))
    vals = np.where(t[:, None] >= 0, first, second)
    return Sinogram(nt, ntheta, vals)


# ---------------------------------------------------------------------------
# semi-polar <-> log-polar
# ---------------------------------------------------------------------------


def semipolar_to_logpolar(p: PolarSinogram, rho0: float, nrho: int) -> LogPolarImage:
    """Resample radial profiles onto the log-polar grid s = e^rho.

    Linear interpolation along s at s = e^rho_i; queries below the first
    radial node read zero (the grid here always starts at s = 0, so the
    clause only matters for shifted sector grids).
    """
    if nrho < 2:
        raise ValueError("nrho must be >= 2")
    if not rho0 < 0:
        raise ValueError("rho0 must be negative")
    drho = -rho0 / nrho
    rho = rho0 + (np.arange(nrho) + 1) * drho
    fs = np.exp(rho) * (p.ns - 1.0)
    vals = _lerp_axis0(p.values, np.repeat(fs[:, None], p.nphi, axis=1))
    return LogPolarImage(nrho, p.nphi, rho0, vals)


def logpolar_to_semipolar(l: LogPolarImage, ns: int) -> PolarSinogram:
    """Resample a log-polar array back to the semi-polar grid.

    Radii below e^rho0 read zero; the cell between rho0 and the first grid
    row clamps to the first row.
    """
    s = np.arange(ns) / (ns - 1.0)
    with np.errstate(divide="ignore"):
        rho = np.log(np.maximum(s, 1e-300))
    fidx = (rho - l.rho0) / l.drho - 1.0
    fidx = np.where(rho < l.rho0, -2.0, np.clip(fidx, -1.0, l.nrho - 1.0))
    # clamp the half-open cell (rho0, rho0 + drho) onto the first row
    fidx = np.where((fidx >= -1.0) & (fidx < 0.0), 0.0, fidx)
    vals = _lerp_axis0(l.values, np.repeat(fidx[:, None], l.nphi, axis=1))
    return PolarSinogram(ns, l.nphi, vals)


# ---------------------------------------------------------------------------
# mesh sizing
# ---------------------------------------------------------------------------


def compute_nrho(ns: int, nx: int, ny: int) -> int:
    """Radial count of the log-polar mesh matching an (nx, ny) target image.

    ``ceil(ln(min(1/nx, 1/ny)) / ln(1 - 2/ns))``, clamped to [2, 64*ns].
    The 2/ns step convention reproduces the reference mesh sizes (e.g.
    3546 for ns = nx = ny = 1024); see compute_nrho tests.
    """
    if ns < 2 or nx < 2 or ny < 2:
        raise ValueError("all counts must be >= 2")
    n = math.ceil(math.log(min(1.0 / nx, 1.0 / ny)) / math.log(1.0 - 2.0 / ns))
    return int(min(max(n, 2), 64 * ns))


def adaptive_rho0(nx: int, ny: int) -> float:
    """Inner log-radius for an (nx, ny) target: one octave below the pixel
    pitch, i.e. ln(min(dx, dy)) - ln 2, guaranteeing no information loss at
    the finest cartesian scale."""
    if nx < 2 or ny < 2:
        raise ValueError("counts must be >= 2")
    return math.log(min(2.0 / nx, 2.0 / ny)) - math.log(2.0)


# ---------------------------------------------------------------------------
# log-polar -> cartesian
# ---------------------------------------------------------------------------


def logpolar_to_cartesian(l: LogPolarImage, nx: int, ny: int) -> CartesianImage:
    """Sample a log-polar array at cartesian pixel centers.

    Bilinear in (rho, phi) with periodic phi; pixels with ||x|| > 1 or
    ln||x|| < rho0 are zero.  The sliver between rho0 and the first grid row
    clamps to the first row.
    """
    if nx < 2 or ny < 2:
        raise ValueError("nx and ny must be >= 2")
    xs = -1.0 + (np.arange(nx) + 0.5) * (2.0 / nx)
    ys = -1.0 + (np.arange(ny) + 0.5) * (2.0 / ny)
    X, Y = np.meshgrid(xs, ys)
    r = np.hypot(X, Y)
    phi = np.mod(np.arctan2(Y, X), 2.0 * math.pi)

    inside = (r <= 1.0) & (r > 0.0)
    out = np.zeros((ny, nx))
    if not np.any(inside):
        return CartesianImage(nx, ny, out)

    rho = np.log(r[inside])
    keep = rho >= l.rho0
    fi = (rho - l.rho0) / l.drho - 1.0
    fi = np.where((fi >= -1.0) & (fi < 0.0), 0.0, fi)
    fi = np.clip(fi, 0.0, l.nrho - 1.0)

    fj = phi[inside] / l.dphi
    j0 = np.floor(fj).astype(np.int64)
    wj = fj - j0
    j0 = np.mod(j0, l.nphi)
    j1 = np.mod(j0 + 1, l.nphi)

    i0 = np.floor(fi).astype(np.int64)
    wi = fi - i0
    i1 = np.minimum(i0 + 1, l.nrho - 1)

    v = l.values
    interp = (
        v[i0, j0] * (1 - wi) * (1 - wj)
        + v[i1, j0] * wi * (1 - wj)
        + v[i0, j1] * (1 - wi) * wj
        + v[i1, j1] * wi * wj
    )
    out[inside] = np.where(keep, interp, 0.0)
    return CartesianImage(nx, ny, out)


# ---------------------------------------------------------------------------
# polar spectrum -> cartesian frequency grid
# ---------------------------------------------------------------------------


def cartesian_frequencies(n: int) -> np.ndarray:
    """Angular frequencies omega = pi * k of an n-pixel axis, FFT bin order."""
    return math.pi * np.fft.fftfreq(n, d=1.0 / n)


def polar_to_cartesian_frequency(
    ps: PolarSpectrum, nx: int, ny: int, dw: float = math.pi
) -> FrequencyImage:
    """Grid a polar spectrum onto the cartesian frequency lattice.

    Bilinear in (sigma, theta) with theta periodic (the first ray is the
    2*pi neighbour of the last).  Conjugate symmetry ``F(-w) = conj(F(w))``
    is enforced after gridding so a subsequent inverse transform is real.
    Rejects spectra that do not reach the target Nyquist radius.  `dw` is
    the lattice spacing (pi for an image over [-1, 1]; engines pass finer
    spacings when reconstructing on an enlarged domain).
    """
    if nx < 2 or ny < 2:
        raise ValueError("nx and ny must be >= 2")
    nyq = math.sqrt(2.0) * dw * max(nx, ny) / 2.0
    if ps.sigma_max < nyq * (1.0 - 1e-12):
        raise ValueError(
            f"polar spectrum reaches sigma = {ps.sigma_max:.3f} but the cartesian "
            f"grid requires coverage up to the Nyquist radius {nyq:.3f}"
        )

    wx = cartesian_frequencies(nx) * (dw / math.pi)
    wy = cartesian_frequencies(ny) * (dw / math.pi)
    WX, WY = np.meshgrid(wx, wy)
    sigma = np.hypot(WX, WY)
    theta = np.mod(np.arctan2(WY, WX), 2.0 * math.pi)

    fi = sigma / ps.dsigma
    fi = np.minimum(fi, ps.nsigma - 1.0)
    i0 = np.floor(fi).astype(np.int64)
    wi = fi - i0
    i1 = np.minimum(i0 + 1, ps.nsigma - 1)

    fj = theta / ps.dtheta
    j0 = np.floor(fj).astype(np.int64)
    wj = fj - j0
    j0 = np.mod(j0, ps.ntheta)
    j1 = np.mod(j0 + 1, ps.ntheta)

    v = ps.values
    grid = (
        v[i0, j0] * (1 - wi) * (1 - wj)
        + v[i1, j0] * wi * (1 - wj)
        + v[i0, j1] * (1 - wi) * wj
        + v[i1, j1] * wi * wj
    )

    # Hermitian symmetrization: average each bin with the conjugate of its
    # mirror bin (-k mod n); Nyquist rows pair with themselves and become real.
    ix = (-np.arange(nx)) % nx
    iy = (-np.arange(ny)) % ny
    grid = 0.5 * (grid + np.conj(grid[np.ix_(iy, ix)]))
    return FrequencyImage(nx, ny, grid)


# ---------------------------------------------------------------------------
# DFT wrappers
# ---------------------------------------------------------------------------


def dft_1d(signal: np.ndarray, direction: str = "forward") -> np.ndarray:
    """1-D DFT: forward kernel e^{-i sigma t}, unnormalized; inverse carries
    the 1/N factor so inverse(forward(x)) == x."""
    if direction == "forward":
        return np.fft.fft(signal)
    if direction == "inverse":
        return np.fft.ifft(signal)
    raise ValueError("direction must be 'forward' or 'inverse'")


def dft_2d(signal: np.ndarray, direction: str = "forward") -> np.ndarray:
    """2-D analogue of :func:`dft_1d`."""
    if direction == "forward":
        return np.fft.fft2(signal)
    if direction == "inverse":
        return np.fft.ifft2(signal)
    raise ValueError("direction must be 'forward' or 'inverse'")
