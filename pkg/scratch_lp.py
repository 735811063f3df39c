import numpy as np, math
from fastbp import *
from fastbp.logpolar import LogPolarOptions, logpolar_backproject

def annulus_rel(b, nv, n, rin, rout=1.0):
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs)
    R = np.hypot(X, Y)
    m = (R > rin) & (R <= rout)
    return float(np.linalg.norm(b.values[m] - nv.values[m]) / np.linalg.norm(nv.values[m]))

# constant sinogram
for nt, ntheta, n in [(128, 90, 64), (256, 180, 128)]:
    g = Sinogram(nt, ntheta, np.ones((nt, ntheta)))
    nv = backproject_naive(g, n)
    b = logpolar_backproject(g, n)
    rho0 = adaptive_rho0(n, n)
    fov = 2 * math.exp(rho0)
    xs = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
    X, Y = np.meshgrid(xs, xs); R = np.hypot(X, Y)
    inner = (R > fov) & (R <= 0.8)
    print(f"const nt={nt} n={n}: lp interior mean {b.values[inner].mean():.5f} (pi={math.pi:.5f}) "
          f"ratio {nv.values[inner].mean()/b.values[inner].mean():.5f} annulus rel {annulus_rel(b, nv, n, fov):.4f}")

sl = shepp_logan()
for nt, ntheta, n in [(128, 90, 64), (256, 180, 128)]:
    g = radon_ellipses(sl, nt, ntheta)
    nv = backproject_naive(g, n)
    b = logpolar_backproject(g, n)
    fov = 2 * math.exp(adaptive_rho0(n, n))
    print(f"shepp nt={nt} n={n}: annulus rel_l2 {annulus_rel(b, nv, n, fov):.4f}")

disk = EllipseSet((Ellipse((0.0, 0.0), (1.0, 1.0), 0.0, 1.0),))
g = radon_ellipses(disk, 256, 180)
nv = backproject_naive(g, 128)
b = logpolar_backproject(g, 128)
fov = 2 * math.exp(adaptive_rho0(128, 128))
print("disk 128:", annulus_rel(b, nv, 128, fov))
