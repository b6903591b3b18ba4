"""Fuss-Catalan laws: exact moments, densities, free transforms and random matrices."""

from importlib import metadata as _metadata

from .combinatorics import (FcParams, MomentSequence, beta_coefficient, beta_ratio_params,
                            beta_ratio_term, fuss_catalan, fuss_catalan_polynomial,
                            moment_sequence)
from .density import (DensityEstimate, Method, density_grid, marchenko_pastur, moment_grid,
                      pi_1_closed_form, pi_2_closed_form, pi_s_degenerate, pi_s_monte_carlo,
                      pi_s_quadrature, recover_moment, sigma_s, support_constant)
from .free import FormalPowerSeries, free_cumulants, r_transform, s_transform, series_reversion
from .rmt import RmtExperimentConfig, Variant, histogram_vs_density, product_moments
from .special import gauss_jacobi_rule, hypergeometric_pfq

try:
    __version__ = _metadata.version("artifact")
except _metadata.PackageNotFoundError:  # pragma: no cover
    __version__ = "0+unknown"

__all__ = [
    "FcParams", "MomentSequence", "beta_coefficient", "beta_ratio_params", "beta_ratio_term",
    "fuss_catalan", "fuss_catalan_polynomial", "moment_sequence",
    "DensityEstimate", "Method", "density_grid", "marchenko_pastur", "moment_grid",
    "pi_1_closed_form", "pi_2_closed_form", "pi_s_degenerate", "pi_s_monte_carlo",
    "pi_s_quadrature", "recover_moment", "sigma_s", "support_constant",
    "FormalPowerSeries", "free_cumulants", "r_transform", "s_transform", "series_reversion",
    "RmtExperimentConfig", "Variant", "histogram_vs_density", "product_moments",
    "gauss_jacobi_rule", "hypergeometric_pfq",
]
