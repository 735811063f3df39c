"""Frequency-domain backprojection engine.

The backprojection of a sinogram has a polar spectrum equal to the 1-D ray
spectrum divided by the radial frequency: per angle a single 1-D DFT and a
1/sigma weighting, then an interpolation onto the cartesian frequency grid
and one inverse 2-D DFT.  Cost O(N^2 log N) against O(N^3) for the
pixel-driven sum.

Normalization: every grid-dependent factor (radial sample spacing, the
frequency cell of the inverse transform) is applied explicitly, so a single
dimensionless constant relates this engine to the pixel-driven reference.
``BST_SCALE`` was calibrated once against :func:`fastbp.reference.
backproject_naive` on the constant-sinogram test and is frozen; the
calibration test asserts it stays put across grid sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from .grids import (
    CartesianImage,
    PolarSpectrum,
    Sinogram,
    cartesian_frequencies,
    polar_to_cartesian_frequency,
    sinogram_to_semipolar,
)
from .phantoms import bessel_i0
from .radon import square_chord

__all__ = [
    "BstOptions",
    "kaiser_window",
    "sigma_kernel",
    "bst_backproject",
    "bst_spectrum",
    "fst_consistency",
    "mean_backprojection",
    "BST_SCALE",
]

# Frozen engine scale; analytically ~ 4*pi (one 2*pi from the slice identity,
# a factor 2 from Hermitian averaging of the two half-line spectra).
BST_SCALE = 4.0 * math.pi

# Radial oversampling of the semi-polar grid before the 1-D DFTs; two times
# the native spacing is what lets the radial band reach the corners of the
# cartesian frequency square.
_RADIAL_OVERSAMPLE = 2

# Reconstruction happens on a domain enlarged by this factor and is cropped
# back to [-1, 1]^2: backprojections decay like 1/r, so the periodization
# inherent in the inverse DFT would otherwise fold the exterior tails into
# the image.
_DOMAIN_PAD = 2


@dataclass(frozen=True)
class BstOptions:
    """Engine knobs.

    beta      -- shape of the radial apodization window (0 disables it)
    zero_pad  -- radial zero-padding factor z >= 1 (the s domain [0, 1]
                 grows to [0, z] before the DFT; actual padding rounds up
                 to an FFT-friendly length)
    dc_mode   -- 'subtract_mean' removes the per-angle DC before the
                 1/sigma kernel and restores the exact spatial mean as a
                 constant; 'kernel_cap' caps the DC weight at 1/dsigma
    n_out     -- output image size (pixels per axis)
    """

    n_out: int
    beta: float = 0.0
    zero_pad: float = 2.0
    dc_mode: str = "subtract_mean"

    def __post_init__(self):
        if self.n_out < 2:
            raise ValueError("n_out must be >= 2")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if self.zero_pad < 1:
            raise ValueError("zero_pad must be >= 1")
        if self.dc_mode not in ("subtract_mean", "kernel_cap"):
            raise ValueError("dc_mode must be 'subtract_mean' or 'kernel_cap'")


def kaiser_window(ns: int, beta: float) -> np.ndarray:
    """Kaiser-Bessel taper on ns samples:
    ``w_i = I0(beta * sqrt(1 - ((2i - ns + 1)/(ns - 1))^2) ) / I0(beta)``.

    Unity at the midpoint, 1/I0(beta) at both endpoints, exactly symmetric.
    """
    if ns < 2:
        raise ValueError("ns must be >= 2")
    i = np.arange(ns)
    u = (2.0 * i - ns + 1.0) / (ns - 1.0)
    return np.abs(bessel_i0(beta * np.sqrt(np.maximum(1.0 - u * u, 0.0)))) / abs(
        float(bessel_i0(beta))
    )


def sigma_kernel(nsigma: int, dsigma: float) -> np.ndarray:
    """Radial frequency weights: 1/sigma_m for m >= 1, capped at 1/dsigma
    for the otherwise-divergent DC bin."""
    if not dsigma > 0:
        raise ValueError("dsigma must be positive")
    sigma = np.arange(nsigma) * dsigma
    out = np.empty(nsigma)
    out[0] = 1.0 / dsigma
    out[1:] = 1.0 / sigma[1:]
    return out


def _radial_spectra(
    g: Sinogram, zero_pad: float, beta: float, n_out: int
) -> tuple[np.ndarray, float]:
    """Windowed, zero-padded 1-D DFTs of every semi-polar ray.

    Returns (H, dsigma) where H[m, k] approximates the half-line transform
    of ray k at sigma_m = m * dsigma, with enough rows to reach the Nyquist
    radius of an n_out output grid.
    """
    ns = _RADIAL_OVERSAMPLE * (g.nt // 2)
    p = sinogram_to_semipolar(g, ns=ns)
    ds = p.ds
    prof = p.values * kaiser_window(ns, beta)[:, None]
    # the s = 0 sample is shared by the phi and phi + pi half-lines: half
    # weight keeps the implied full-line quadrature trapezoidal
    prof = prof.copy()
    prof[0, :] *= 0.5

    length = sfft.next_fast_len(max(int(math.ceil(2.0 * zero_pad * (ns - 1))), ns))
    dsigma = 2.0 * math.pi / (length * ds)
    sigma_need = math.sqrt(2.0) * math.pi * n_out / 2.0
    m_need = int(math.floor(sigma_need / dsigma)) + 2
    if m_need > length // 2 + 1:
        raise ValueError(
            f"n_out = {n_out} exceeds the resolution supported by an nt = {g.nt} "
            f"sinogram (max ~ {int(math.sqrt(2) * (ns - 1))})"
        )
    spectra = ds * sfft.rfft(prof, n=length, axis=0)
    return spectra[:m_need], dsigma


def _spectrum_to_image(ps: PolarSpectrum, n_out: int) -> np.ndarray:
    """Grid a polar spectrum and inverse-transform it onto [-1, 1]^2.

    The lattice is _DOMAIN_PAD times finer than the output demands and the
    inverse transform is cropped back, so the 1/r tails of a backprojection
    do not alias into the image.  Carries the 1/(2 pi)^2 inverse-transform
    normalization; the result is ``(1/4 pi^2) integral F e^{i w . x} dw``
    sampled at the pixel centers.
    """
    d = _DOMAIN_PAD
    big = d * n_out
    dw = math.pi / d
    grid = polar_to_cartesian_frequency(ps, big, big, dw=dw).values.copy()
    if big % 2 == 0:
        # Nyquist rows pair with themselves under conjugation; drop them so
        # the phase-ramped inverse transform stays real
        grid[big // 2, :] = 0.0
        grid[:, big // 2] = 0.0

    k = np.rint(cartesian_frequencies(big) / math.pi).astype(np.int64)
    p0 = ((d - 1) * n_out) // 2
    dx = 2.0 / n_out
    tau = np.exp(1j * dw * k * ((0.5 - p0) * dx - 1.0))
    img = sfft.ifft2(grid * tau[:, None] * tau[None, :]) * (big * big / (4.0 * d * d))
    return img.real[p0 : p0 + n_out, p0 : p0 + n_out]


def mean_backprojection(g: Sinogram) -> float:
    """Spatial mean over [-1, 1]^2 of the backprojection of g, evaluated in
    the sinogram domain through the adjoint identity <B g, 1> = <g, chord>
    with the chord function of the square."""
    t = g.t()[:, None]
    theta = g.theta()[None, :]
    weights = square_chord(t, theta)
    return float(np.sum(g.values * weights)) * g.dt * g.dtheta / 4.0


def bst_backproject(g: Sinogram, opts: BstOptions) -> CartesianImage:
    """Backproject a sinogram through the frequency-domain pipeline:
    semi-polar unfolding, per-ray windowed DFT, 1/sigma kernel, polar to
    cartesian frequency gridding, inverse 2-D DFT (on an enlarged domain,
    cropped back to the image square)."""
    n = opts.n_out
    spectra, dsigma = _radial_spectra(g, opts.zero_pad, opts.beta, n)

    offset = 0.0
    if opts.dc_mode == "subtract_mean":
        spectra = spectra.copy()
        spectra[0, :] = 0.0
    kernel = sigma_kernel(spectra.shape[0], dsigma)
    ps = PolarSpectrum(spectra.shape[0], spectra.shape[1], dsigma, spectra * kernel[:, None])
    img = BST_SCALE * _spectrum_to_image(ps, n)
    if opts.dc_mode == "subtract_mean":
        # the removed DC fixes the spatial mean; restore it exactly
        offset = mean_backprojection(g) - float(img.mean())
    return CartesianImage(n, n, img + offset)


def bst_spectrum(g: Sinogram, opts: BstOptions) -> "FrequencyImage":
    """Frequency-domain representation of the backprojection on the
    omega = pi * k lattice of an n_out image.

    This is the engine's native product before the inverse transform: it
    equals the 2-D DFT of the engine's full periodic output, and is the
    right object to compare against analytic backprojection spectra (the
    DFT of the cropped spatial image differs by the window convolution of
    the square domain, since backprojections have 1/r tails).
    """
    from .grids import FrequencyImage

    spectra, dsigma = _radial_spectra(g, opts.zero_pad, opts.beta, opts.n_out)
    if opts.dc_mode == "subtract_mean":
        spectra = spectra.copy()
        spectra[0, :] = 0.0
    kernel = sigma_kernel(spectra.shape[0], dsigma)
    ps = PolarSpectrum(spectra.shape[0], spectra.shape[1], dsigma, spectra * kernel[:, None])
    gridded = polar_to_cartesian_frequency(ps, opts.n_out, opts.n_out)
    return FrequencyImage(opts.n_out, opts.n_out, BST_SCALE * gridded.values)


def fst_consistency(
    f: CartesianImage,
    g: Sinogram,
    zero_pad: float = 2.0,
    probe_angles: int = 8,
    probe_sigmas: int = 48,
) -> float:
    """Slice-consistency defect between an image and its sinogram.

    For a probe set of angles, compares the 1-D ray spectrum of g (direct
    complex sums, exact at the probe frequencies) against the radial slice
    of the image's 2-D spectrum, interpolated bilinearly from a zero-padded
    cartesian transform.  Returns the worst relative L2 distance over the
    probes; zero-padding refines the cartesian grid and tightens the
    interpolation.
    """
    n = f.nx
    pad = sfft.next_fast_len(int(round(zero_pad * n)))
    dx = f.dx
    dw = 2.0 * math.pi / (pad * dx)
    # image spectrum with pixel-center phases: F(w) = dx*dy * sum f e^{-iw.x}
    F = sfft.fft2(f.values, s=(pad, pad))
    kidx = np.fft.fftfreq(pad, d=1.0 / pad)
    phase = np.exp(-1j * kidx * dw * (-1.0 + 0.5 * dx))
    F = F * phase[:, None] * phase[None, :] * (dx * dx)

    sigmas = np.linspace(math.pi, math.pi * n / 4.0, probe_sigmas)
    t = g.t()
    worst = 0.0
    js = np.linspace(0, g.ntheta - 1, probe_angles).astype(int)
    for j in js:
        theta = j * g.dtheta
        ghat = (g.values[:, j][None, :] * np.exp(-1j * sigmas[:, None] * t[None, :])).sum(
            axis=1
        ) * g.dt
        wx = sigmas * math.cos(theta)
        wy = sigmas * math.sin(theta)
        fi = np.mod(wy / dw, pad)
        fj = np.mod(wx / dw, pad)
        i0 = np.floor(fi).astype(np.int64) % pad
        j0 = np.floor(fj).astype(np.int64) % pad
        wi = fi - np.floor(fi)
        wj = fj - np.floor(fj)
        i1 = (i0 + 1) % pad
        j1 = (j0 + 1) % pad
        slice_vals = (
            F[i0, j0] * (1 - wi) * (1 - wj)
            + F[i1, j0] * wi * (1 - wj)
            + F[i0, j1] * (1 - wi) * wj
            + F[i1, j1] * wi * wj
        )
        denom = np.linalg.norm(ghat)
        if denom == 0.0:
            continue
        worst = max(worst, float(np.linalg.norm(ghat - slice_vals) / denom))
    return worst
