import numpy as np, math
from scipy import fft as sfft
from fastbp import *
from fastbp.bst import BstOptions, bst_backproject, _radial_spectra, sigma_kernel, BST_SCALE
from fastbp.grids import PolarSpectrum, polar_to_cartesian_frequency, cartesian_frequencies

disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))
n = 128
C = 4 * math.pi**2


def annulus_rel_l2(F, lo=1.0, hi=20.0):
    k = np.rint(cartesian_frequencies(F.shape[0]) / math.pi).astype(np.int64)
    KX, KY = np.meshgrid(k, k)
    W = math.pi * np.hypot(KX, KY)
    m = (W >= lo) & (W <= hi)
    oracle = C * circ_bp_spectrum(W[m])
    meas = F[m].real
    return float(np.linalg.norm(meas - oracle) / np.linalg.norm(oracle)), float(
        np.abs(F[m].imag).max()
    )


def image_dft(vals, n):
    dx = 2.0 / n
    k = np.rint(cartesian_frequencies(n) / math.pi).astype(np.int64)
    tau = np.exp(-1j * math.pi * k * (1.0 / n - 1.0))
    return sfft.fft2(vals) * tau[:, None] * tau[None, :] * dx * dx


for nt, ntheta in [(256, 180), (512, 360)]:
    g = radon_ellipses(disk, nt, ntheta)
    for z in (2.0, 4.0, 8.0):
        # route A: spatial output on [-1,1], forward DFT
        b = bst_backproject(g, BstOptions(n_out=n, beta=0.0, zero_pad=z))
        relA, _ = annulus_rel_l2(image_dft(b.values, n))
        # route B: the engine's gridded spectrum (scaled)
        H, ds = _radial_spectra(g, z, 0.0, n)
        kern = sigma_kernel(H.shape[0], ds)
        ps = PolarSpectrum(H.shape[0], H.shape[1], ds, H * kern[:, None])
        F = BST_SCALE * polar_to_cartesian_frequency(ps, n, n, dw=math.pi).values
        relB, imB = annulus_rel_l2(F)
        print(f"nt={nt} z={z}: spatial-route rel_l2={relA:.4f}   spectrum-route rel_l2={relB:.4f} (imag {imB:.1e})")
