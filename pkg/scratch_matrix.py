import numpy as np, math, time
from fastbp import *
from fastbp.bst import BstOptions, bst_backproject
from fastbp.logpolar import logpolar_backproject

def region_rel(b, nv, n, rin=None):
    if rin is None:
        return relative_l2(b, nv)
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs)
    R = np.hypot(X, Y)
    m = (R > rin) & (R <= 1.0)
    return float(np.linalg.norm(b.values[m] - nv.values[m]) / np.linalg.norm(nv.values[m]))

sl = shepp_logan()
disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))
pts = point_sources(50, seed=20260810)

for n in (64, 128):
    nt = 2 * n
    for name in ("shepp", "circ", "points"):
        ntheta = 2 * n if name == "points" else int(1.5 * n)
        if name == "shepp":
            g = radon_ellipses(sl, nt, ntheta)
        elif name == "circ":
            g = radon_ellipses(disk, nt, ntheta)
        else:
            g = radon_points(pts, nt, ntheta)
        t0 = time.time()
        nv = backproject_naive(g, n)
        t1 = time.time()
        b = bst_backproject(g, BstOptions(n_out=n))
        t2 = time.time()
        lp = logpolar_backproject(g, n)
        t3 = time.time()
        fov = 2 * math.exp(adaptive_rho0(n, n))
        print(f"n={n} {name:7s} (nt={nt},nth={ntheta}): bst={region_rel(b, nv, n):.4f} "
              f"lp={region_rel(lp, nv, n, fov):.4f}  [naive {t1-t0:.2f}s bst {t2-t1:.2f}s lp {t3-t2:.2f}s]")
