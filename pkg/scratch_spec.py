import numpy as np, math
from fastbp import *
from fastbp.bst import _radial_spectra, _spectrum_to_image, sigma_kernel, BST_SCALE
from fastbp.grids import PolarSpectrum, polar_to_cartesian_frequency, cartesian_frequencies

disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))
g = radon_ellipses(disk, 512, 360)

H, ds = _radial_spectra(g, zero_pad=2.0, beta=0.0, n_out=128)
print("dsigma =", ds, "rows:", H.shape)
sig = np.arange(H.shape[0]) * ds
# full-line spectrum at angle 0: H[:,0] + conj(H[:, nphi/2])  (phi + pi)
nphi = H.shape[1]
ghat = H[:, 0] + np.conj(H[:, nphi // 2])
mask = (sig >= 1) & (sig <= 20)
oracle = 2 * math.pi * bessel_j1(sig[mask]) / sig[mask]
meas = ghat[mask].real
rel = np.abs(meas - oracle) / np.maximum(np.abs(oracle), 1e-12)
print("ray-spectrum vs 2pi J1/sigma: max rel", rel.max(), "mean", rel.mean())
print("imag part", np.abs(ghat[mask].imag).max())

# now the gridded cartesian spectrum BEFORE the inverse transform
kern = sigma_kernel(H.shape[0], ds)
ps = PolarSpectrum(H.shape[0], H.shape[1], ds, H * kern[:, None])
n = 128
F = polar_to_cartesian_frequency(ps, n, n, dw=math.pi).values * 2  # x2: hermitian halves
k = np.rint(cartesian_frequencies(n) / math.pi).astype(np.int64)
KX, KY = np.meshgrid(k, k)
W = math.pi * np.hypot(KX, KY)
m2 = (W >= 1) & (W <= 20)
oracle2 = 4 * math.pi**2 * circ_bp_spectrum(W[m2])
meas2 = (2 * math.pi * F[m2]).real  # B_hat = 2 pi * ghat_full / sigma; F = ghat_full*K... check scale
rel2 = np.abs(meas2 - oracle2) / np.abs(oracle2)
print("gridded spectrum: max rel", rel2.max(), "mean", rel2.mean())
