"""Fast tomographic backprojection.

Two O(N^2 log N) backprojection engines (a frequency-domain slice method
and a log-polar convolution method), slow trusted references, analytic
oracles, a regularized filtered-backprojection layer and a benchmark
harness.
"""

from .grids import (
    CartesianImage,
    FrequencyImage,
    LogPolarImage,
    PolarSinogram,
    PolarSpectrum,
    Sinogram,
    adaptive_rho0,
    compute_nrho,
    dft_1d,
    dft_2d,
    logpolar_to_cartesian,
    logpolar_to_semipolar,
    polar_to_cartesian_frequency,
    semipolar_to_logpolar,
    semipolar_to_sinogram,
    sinogram_to_semipolar,
)
from .phantoms import (
    Ellipse,
    EllipseSet,
    PointSourceSet,
    bessel_i0,
    bessel_j1,
    circ_bp_spectrum,
    circ_phantom,
    point_source_psf,
    point_source_psf_rotated,
    point_sources,
    rasterize,
    shepp_logan,
)
from .radon import (
    NoiseSpec,
    add_poisson_noise,
    radon_ellipses,
    radon_numeric,
    radon_points,
    shift_sinogram,
    square_chord,
)
from .reference import adjointness_gap, backproject_circles, backproject_naive
from .bst import (
    BstOptions,
    bst_backproject,
    bst_spectrum,
    fst_consistency,
    kaiser_window,
    mean_backprojection,
    sigma_kernel,
)
from .logpolar import (
    LogPolarOptions,
    logpolar_backproject,
    make_logpolar_kernel,
    partial_backproject,
    truncation_error_bound,
)
from .filtering import (
    FilterSpec,
    fbp,
    filter_sinogram,
    normal_equations_residual,
    regularized_fst_reconstruct,
)
from .metrics import hf_energy, mse, relative_l2, total_variation

__version__ = "0.1.0"
