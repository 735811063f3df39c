"""Dev scratch: calibrate engine scales and probe equivalence."""
import numpy as np, math
from fastbp import *
from fastbp.bst import BstOptions, bst_backproject, mean_backprojection
from fastbp import bst as bstmod
from fastbp import logpolar as lpmod

def lsq_ratio(target, probe):
    return float(np.sum(target * probe) / np.sum(probe * probe))

# --- constant sinogram test ---
for nt, ntheta, n in [(128, 90, 64), (256, 180, 128), (512, 256, 256)]:
    c = 1.0
    g = Sinogram(nt, ntheta, np.full((nt, ntheta), c))
    nv = backproject_naive(g, n).values
    # interior disk check
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs)
    R = np.hypot(X, Y)
    inner = R <= 0.8
    print(f"naive const: nt={nt} n={n} interior mean {nv[inner].mean():.6f} (pi={math.pi:.6f})")
    b = bst_backproject(g, BstOptions(n_out=n, beta=0.0, zero_pad=2.0, dc_mode="subtract_mean"))
    # least-squares fit of bst (without offset problems) against naive over whole image
    ratio_int = nv[inner].mean() / b.values[inner].mean()
    # zero-mean fit
    bz = b.values - b.values.mean()
    nz = nv - nv.mean()
    fit = lsq_ratio(nz.ravel(), bz.ravel())
    print(f"  bst: interior-mean ratio {ratio_int:.6f}, zero-mean lsq scale correction {fit:.6f}, rel_l2={relative_l2(b, CartesianImage(n,n,nv)):.4f}")
    print(f"  mean_backprojection={mean_backprojection(g):.6f} vs naive mean {nv.mean():.6f}")
