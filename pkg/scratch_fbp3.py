import numpy as np, math
from scipy import fft as sfft
from fastbp import *
from fastbp.bst import BstOptions

sl = shepp_logan()
f = rasterize(sl, 128)
n = 128

for nt, ntheta in [(256, 180), (128, 180), (256, 360)]:
    g = radon_ellipses(sl, nt, ntheta)
    fg = filter_sinogram(g, FilterSpec(lam=0.0))
    rn = fbp(g, FilterSpec(lam=0.0), engine="naive", n=n)
    for z in (2.0, 4.0, 8.0):
        rb = fbp(g, FilterSpec(lam=0.0), engine="bst", n=n,
                 engine_options=BstOptions(n_out=n, zero_pad=z))
        d = rb.values - rn.values
        D = np.abs(sfft.fft2(d)) ** 2
        N = np.abs(sfft.fft2(rn.values)) ** 2
        fr = np.fft.fftfreq(n)
        RR = np.hypot(*np.meshgrid(fr, fr)) * n * math.pi  # omega radius
        lo = RR <= 100
        print(f"nt={nt} nth={ntheta} z={z}: rel {np.linalg.norm(d)/np.linalg.norm(rn.values):.4f} "
              f" low-band rel {math.sqrt(D[lo].sum()/N[lo].sum()):.4f} "
              f" frac diff-energy >100: {D[~lo].sum()/D.sum():.2f}  vs-phantom {relative_l2(rb, f):.4f}")
