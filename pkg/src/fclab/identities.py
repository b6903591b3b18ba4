"""Independent numerical routes to the characteristic function of ``sigma_s``.

``sigma_s`` is the symmetric law whose even moments are the Fuss-Catalan
numbers. Its characteristic function can be computed three ways:

* the moment series ``sum_k m_k (-xi^2)^k / (2k)!``;
* the hypergeometric series ``sF_{s+1}(a; b; -K xi^2 / 4)``;
* the Beta-mixture of ``0F1(1 + 1/s; -tau K xi^2 / 4)`` over ``tau = t_1 ... t_s``.
"""

from __future__ import annotations

import math

import numpy as np

from .combinatorics import beta_ratio_params, fuss_catalan
from .density import beta_weight_spec
from .special import HypergeometricSpec, gauss_jacobi_rule, hyp0f1, hypergeometric_pfq, log_beta


def cf_moment_series(s: int, xi: float, k_max: int = 20) -> float:
    """Truncated moment series ``sum_{k<=k_max} m_k (-xi^2)^k / (2k)!``."""
    z = -float(xi) ** 2
    return math.fsum(fuss_catalan(s, k) * z**k / math.factorial(2 * k) for k in range(k_max + 1))


def cf_hypergeometric(s: int, xi: float) -> float:
    p = beta_ratio_params(s)
    spec = HypergeometricSpec([float(a) for a in p.a], [float(b) for b in p.b],
                              -float(p.K) * float(xi) ** 2 / 4)
    return hypergeometric_pfq(spec, tol=1e-15)


def cf_euler_integral(s: int, xi: float, n: int = 24) -> float:
    """Tensor Gauss-Jacobi rule for ``E_F[0F1(b_{s+1}; -tau K xi^2 / 4)]``.

    The integrand is entire in ``tau``, so each Beta factor only needs the
    Jacobi rule carrying its own endpoint exponents.
    """
    spec = beta_weight_spec(s)
    if spec.degenerate:
        raise ValueError("the mixture is a point mass for s = 1")
    p = beta_ratio_params(s)
    tau = np.ones(1)
    weight = np.ones(1)
    for a, c in spec.pairs:
        rule = gauss_jacobi_rule(float(c) - 1.0, float(a) - 1.0, n)
        t, _, w = rule.unit_interval()
        tau = np.multiply.outer(tau, t).ravel()
        weight = np.multiply.outer(weight, w * math.exp(-log_beta(float(a), float(c)))).ravel()
    z = -float(p.K) * float(xi) ** 2 / 4 * tau
    return float(np.dot(weight, hyp0f1(float(p.b[-1]), z)))
