import numpy as np, math
from scipy import fft as sfft
from fastbp import *
from fastbp.bst import BstOptions, bst_backproject
from fastbp.grids import cartesian_frequencies

pts = point_sources(50, seed=7)
gp = radon_points(pts, 256, 256)
nvp = backproject_naive(gp, 128)
b = bst_backproject(gp, BstOptions(n_out=128, beta=1.0, zero_pad=2))
print("points beta=1 z=2:", relative_l2(b, nvp))

disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))


def image_dft(img):
    n = img.nx
    dx = img.dx
    k = np.rint(cartesian_frequencies(n) / math.pi).astype(np.int64)
    tau = np.exp(-1j * math.pi * k * (1.0 / n - 1.0))
    return sfft.fft2(img.values) * tau[:, None] * tau[None, :] * dx * dx


for n, nt, ntheta in [(128, 256, 180), (128, 512, 360)]:
    g = radon_ellipses(disk, nt, ntheta)
    for beta in (0.0, 1.0):
        b = bst_backproject(g, BstOptions(n_out=n, beta=beta, zero_pad=2))
        F = image_dft(b)
        k = np.rint(cartesian_frequencies(n) / math.pi).astype(np.int64)
        KX, KY = np.meshgrid(k, k)
        W = math.pi * np.hypot(KX, KY)
        mask = (W >= 1.0) & (W <= 20.0)
        oracle = circ_bp_spectrum(W[mask])
        meas = F[mask].real
        # frozen analytic constant 4*pi^2
        C = 4.0 * math.pi**2
        rel = np.abs(meas - C * oracle) / np.abs(C * oracle)
        fit = float(np.sum(meas * oracle) / np.sum(oracle * oracle))
        print(f"n={n} nt={nt} beta={beta}: fit const={fit:.4f} (4pi^2={C:.4f}) "
              f"max rel={rel.max():.4f} mean rel={rel.mean():.4f}  imagmax={np.abs(F[mask].imag).max():.2e}")
