import numpy as np
from fastbp import *
from fastbp.bst import BstOptions, bst_backproject

sl = shepp_logan()
gs = radon_ellipses(sl, 256, 180)
n = 128
nv = backproject_naive(gs, n)
for beta in [0.0, 1.0, 2.0, 4.0, 8.0]:
    b = bst_backproject(gs, BstOptions(n_out=n, beta=beta, zero_pad=2))
    print(f"beta={beta}: rel_l2 vs naive = {relative_l2(b, nv):.4f}")

# points phantom (hardest: flat spectrum)
pts = point_sources(50, seed=7)
gp = radon_points(pts, 256, 256)
nvp = backproject_naive(gp, 128)
for beta in [0.0, 8.0]:
    for z in [2, 4]:
        b = bst_backproject(gp, BstOptions(n_out=128, beta=beta, zero_pad=z))
        print(f"points beta={beta} z={z}: rel_l2 = {relative_l2(b, nvp):.4f}")
