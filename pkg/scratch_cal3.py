import numpy as np, math
from fastbp import *
from fastbp.bst import BstOptions, bst_backproject

disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))
gs = radon_ellipses(disk, 256, 180)
n = 128
nv = backproject_naive(gs, n)
b = bst_backproject(gs, BstOptions(n_out=n, beta=0.0, zero_pad=2))
diff = b.values - nv.values
xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
X, Y = np.meshgrid(xs, xs); R = np.hypot(X, Y)
# radial profile of the difference
bins = np.linspace(0, math.sqrt(2), 20)
prof = [diff[(R >= a) & (R < bb)].mean() for a, bb in zip(bins[:-1], bins[1:])]
nvprof = [nv.values[(R >= a) & (R < bb)].mean() for a, bb in zip(bins[:-1], bins[1:])]
print("radial mean of (bst - naive) vs naive:")
for c, d, v in zip(0.5 * (bins[1:] + bins[:-1]), prof, nvprof):
    print(f"  r={c:.2f} diff={d:+.4f} naive={v:.3f}")
print("max |diff|", np.abs(diff).max(), " rel l2", relative_l2(b, nv))
