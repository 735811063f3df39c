import numpy as np, math
from fastbp import *
from fastbp.bst import BstOptions, bst_backproject

def lsq(target, probe):
    return float(np.sum(target * probe) / np.sum(probe * probe))

disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))
sl = shepp_logan()

print("=== constant sinogram, interior mean ratio vs zero_pad ===")
nt, ntheta, n = 256, 180, 128
g = Sinogram(nt, ntheta, np.ones((nt, ntheta)))
nv = backproject_naive(g, n)
xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
X, Y = np.meshgrid(xs, xs); R = np.hypot(X, Y); inner = R <= 0.8
for z in [1, 2, 4, 8]:
    b = bst_backproject(g, BstOptions(n_out=n, beta=0.0, zero_pad=z))
    print(f" z={z}: interior ratio {nv.values[inner].mean()/b.values[inner].mean():.5f}  rel_l2 {relative_l2(b, nv):.4f}")

print("=== smooth-ish phantoms, lsq fit naive~fit*bst ===")
for name, gs in [("disk", radon_ellipses(disk, 256, 180)),
                 ("shepp", radon_ellipses(sl, 256, 180))]:
    for n in (64, 128):
        nv = backproject_naive(gs, n)
        for z in (2, 4):
            b = bst_backproject(gs, BstOptions(n_out=n, beta=0.0, zero_pad=z))
            fit = lsq(nv.values.ravel(), b.values.ravel())
            print(f" {name} n={n} z={z}: fit {fit:.5f}  rel_l2 {relative_l2(b, nv):.4f}")
