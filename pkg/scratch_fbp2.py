import numpy as np, math
from fastbp import *

def lsq(t, p):
    return float(np.sum(t * p) / np.sum(p * p))

xs128 = -1.0 + (np.arange(128) + 0.5) / 64.0
X, Y = np.meshgrid(xs128, xs128)
R = np.hypot(X, Y)

for radius in (0.5, 0.8, 1.0):
    disk = EllipseSet((Ellipse((0.0, 0.0), (radius, radius), 0.0, 1.0),))
    f = rasterize(disk, 128)
    for nt, ntheta in [(128, 180), (256, 180)]:
        g = radon_ellipses(disk, nt, ntheta)
        r = fbp(g, FilterSpec(lam=0.0), engine="naive", n=128)
        interior = r.values[R < 0.8 * radius].mean()
        ext = r.values[(R > 1.15 * radius) & (R < 0.98)].mean() if radius < 0.85 else float("nan")
        print(f"disk r={radius} nt={nt}: interior {interior:.4f} exterior {ext:.4f} "
              f"rel {relative_l2(r, f):.4f}")

sl = shepp_logan()
f = rasterize(sl, 128)
for nt in (128, 256):
    g = radon_ellipses(sl, nt, 180)
    rn = fbp(g, FilterSpec(lam=0.0), engine="naive", n=128)
    print(f"SL nt={nt}: naive fit-scale {lsq(f.values.ravel(), rn.values.ravel()):.4f} rel {relative_l2(rn, f):.4f}")
    for cut in (1.0, 0.55):
        rb = fbp(g, FilterSpec(lam=0.0, cutoff=cut), engine="bst", n=128)
        rl = fbp(g, FilterSpec(lam=0.0, cutoff=cut), engine="logpolar", n=128)
        rn2 = fbp(g, FilterSpec(lam=0.0, cutoff=cut), engine="naive", n=128)
        print(f"  cutoff={cut}: bst-vs-naive {relative_l2(rb, rn2):.4f} lp-vs-naive {relative_l2(rl, rn2):.4f} "
              f"bst rel {relative_l2(rb, f):.4f} naive rel {relative_l2(rn2, f):.4f}")
