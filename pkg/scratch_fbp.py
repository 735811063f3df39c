import numpy as np, math, time, warnings
from fastbp import *

sl = shepp_logan()
f = rasterize(sl, 128)
g = radon_ellipses(sl, 256, 180)

for cutoff in (1.0, 0.9):
    for engine in ("naive", "bst", "logpolar"):
        r = fbp(g, FilterSpec(lam=0.0, cutoff=cutoff), engine=engine, n=128)
        print(f"fbp {engine} cutoff={cutoff}: rel_l2 vs phantom {relative_l2(r, f):.4f}")

rn = fbp(g, FilterSpec(lam=0.0, cutoff=0.9), engine="naive", n=128)
rb = fbp(g, FilterSpec(lam=0.0, cutoff=0.9), engine="bst", n=128)
print("fbp naive vs bst rel:", relative_l2(rb, rn))

# regularized fst vs fbp-bst at lambda=0
r0 = regularized_fst_reconstruct(g, 0.0, 128)
rb1 = fbp(g, FilterSpec(lam=0.0, cutoff=1.0), engine="bst", n=128)
print("reg-fst(0) vs fbp-bst rel:", relative_l2(r0, rb1), " vs phantom:", relative_l2(r0, f))

# disk inversion sanity
disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))
gd = radon_ellipses(disk, 256, 180)
rd = fbp(gd, FilterSpec(lam=0.0, cutoff=1.0), engine="naive", n=128)
xs = -1.0 + (np.arange(128) + 0.5) / 64.0
X, Y = np.meshgrid(xs, xs); R = np.hypot(X, Y)
print(f"disk: interior mean {rd.values[R<0.9].mean():.4f} exterior mean {abs(rd.values[R>1.1]).mean():.4f}")

# partial backprojection
from fastbp.logpolar import partial_backproject, logpolar_backproject
g = radon_ellipses(sl, 256, 180)
nv = backproject_naive(g, 128)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    pb = partial_backproject(g, [(k * math.pi / 4, math.pi / 8, 0.25) for k in range(4)], 128)
fov = 2 * math.exp(adaptive_rho0(128, 128))
Xs = np.hypot(*np.meshgrid(xs, xs))
m = (Xs > fov) & (Xs <= 1.0)
print("partial vs naive annulus rel:", float(np.linalg.norm(pb.values[m]-nv.values[m])/np.linalg.norm(nv.values[m])))

# single sector covering everything
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    pb1 = partial_backproject(g, [(0.0, math.pi / 2, 0.25)], 128)
lp = logpolar_backproject(g, 128)
m2 = (Xs > fov) & (Xs <= 1.0)
print("single-sector vs lp annulus rel:", float(np.linalg.norm(pb1.values[m2]-lp.values[m2])/np.linalg.norm(lp.values[m2])),
      " vs naive:", float(np.linalg.norm(pb1.values[m2]-nv.values[m2])/np.linalg.norm(nv.values[m2])))
