"""Named verification suites shared by ``fc-lab verify`` and the test-suite."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import (FcParams, beta_coefficient, beta_ratio_term, fuss_catalan,
                            moment_sequence)
from .density import (Method, beta_weight_spec, density_grid, moment_grid, pi_1_closed_form,
                      pi_2_closed_form, pi_s_degenerate, pi_s_monte_carlo, pi_s_quadrature,
                      recover_moment, sigma_s, support_constant)
from .free import FormalPowerSeries, free_cumulants, s_transform
from .identities import cf_euler_integral, cf_hypergeometric, cf_moment_series
from .special import beta_function, make_rng, sample_beta


@dataclass
class Check:
    name: str
    passed: bool
    observed: float | str
    tolerance: float | str
    detail: str = ""

    @property
    def margin(self):
        """``tolerance - observed`` for numeric checks, positive when passing."""
        if isinstance(self.observed, (int, float)) and isinstance(self.tolerance, (int, float)):
            return float(self.tolerance) - float(self.observed)
        return None

    def to_dict(self):
        d = asdict(self)
        d["margin"] = self.margin
        return d


def check_integrality(s, k_max=20):
    bad = [k for k in range(k_max + 1)
           if math.comb(s * k + k, k) % (s * k + 1) != 0]
    return Check(f"integrality[s={s}]", not bad, f"{len(bad)} failures", "0",
                 f"k = 0..{k_max}")


def check_ratio(s, k_max=12):
    bad = []
    for k in range(k_max + 1):
        lhs = beta_coefficient(s, k + 1) / beta_coefficient(s, k)
        if lhs != beta_ratio_term(s, k):
            bad.append(k)
    return Check(f"beta-ratio[s={s}]", not bad, f"{len(bad)} mismatches", "exact",
                 f"k = 0..{k_max}")


def check_closed_form(n_points=50, lo=0.1, hi=6.4, tol=1e-5, n_nodes=64):
    xs = np.linspace(lo, hi, n_points)
    worst = max(abs(pi_s_quadrature(2, x, n_nodes)[0] / pi_2_closed_form(x) - 1) for x in xs)
    return Check("closed-form[s=2]", worst <= tol, worst, tol,
                 f"{n_points} points in [{lo}, {hi}], {n_nodes} nodes")


def check_degenerate(n_points=20, tol=1e-12):
    xs = np.linspace(0.05, 3.95, n_points)
    worst = max(abs(pi_s_degenerate(x) - pi_1_closed_form(x)) / pi_1_closed_form(x) for x in xs)
    return Check("degenerate[s=1]", worst <= tol, worst, tol, f"{n_points} points")


def check_moments(s, k_max=5, tol=0.02, n_grid=64):
    grid = moment_grid(s, n_grid)
    if s == 1:
        est = density_grid(s, grid, Method.CLOSED_FORM, x_floor=0.0)
    elif s <= 5:
        est = density_grid(s, grid, Method.QUADRATURE, x_floor=0.0)
    else:
        est = density_grid(s, grid, Method.MONTE_CARLO, resolution=2 * 10**5, x_floor=0.0)
    worst = max(abs(recover_moment(est, k) / fuss_catalan(s, k) - 1) for k in range(k_max + 1))
    return Check(f"moment-recovery[s={s}]", worst <= tol, worst, tol, f"k = 0..{k_max}")


def sigma_direct_monte_carlo(s, y, n_samples, seed=0, stream=0):
    """Monte Carlo of the symmetric-law integrand
    ``(tau K - y^2)^(1/s - 1/2) / (tau K)^(1/s)`` with its standard error."""
    K = float(support_constant(s).K)
    y2 = float(y) ** 2
    spec = beta_weight_spec(s)
    rng = make_rng(seed, stream)
    tau = np.ones(n_samples)
    for a, c in spec.pairs:
        tau *= sample_beta(float(a), float(c), rng, size=n_samples)
    r = tau * K
    g = np.where(r > y2, np.abs(r - y2) ** (1.0 / s - 0.5) / r ** (1.0 / s), 0.0)
    norm = beta_function(0.5, 0.5 + 1.0 / s)
    return g.mean() / norm, g.std(ddof=1) / math.sqrt(n_samples) / norm


def check_sigma_pi(s, n_points=10, n_samples=10**6, seed=0, n_sigma=3.0):
    """Symmetric-law integrand by Monte Carlo against the quadrature density."""
    K = float(support_constant(s).K)
    xs = np.linspace(0.05 * K, 0.95 * K, n_points)
    worst = 0.0
    algebra = 0.0
    for i, x in enumerate(xs):
        r = math.sqrt(x)
        sig, se = sigma_direct_monte_carlo(s, r, n_samples, seed, i)
        pi = pi_s_quadrature(s, x)[0]
        worst = max(worst, abs(sig / r - pi) / (se / r))
        algebra = max(algebra, abs(sigma_s(s, -r) / r - pi) / pi)
    ok = worst <= n_sigma and algebra <= 1e-12
    return Check(f"sigma-pi[s={s}]", ok, worst, n_sigma,
                 f"max |z| over {n_points} points; even-extension identity error {algebra:.2e}")


def check_stransform(s, order=8):
    S1 = s_transform(moment_sequence(FcParams(1), order + 1), order)
    Ss = s_transform(moment_sequence(FcParams(s), order + 1), order)
    binom = FormalPowerSeries([(-1) ** k * math.comb(s + k - 1, k) for k in range(order + 1)])
    ok = Ss == S1**s and Ss == binom
    return Check(f"s-transform[s={s}]", ok, "equal" if ok else "differ", "exact",
                 f"order {order}: " + ", ".join(str(c) for c in Ss))


def check_rtransform(ts=(Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3)), order=8):
    base = free_cumulants(moment_sequence(FcParams(1), order), order)
    bad = []
    for t in ts:
        kappa = free_cumulants(moment_sequence(FcParams(1, t), order), order)
        if kappa != [t * k for k in base]:
            bad.append(str(t))
    return Check("r-transform[s=1]", not bad, f"{len(bad)} mismatches", "exact",
                 "t in {" + ", ".join(str(t) for t in ts) + "}")


def check_cf_identity(s, xis=(0.3, 1.0, 2.0), tol=1e-10):
    worst = max(abs(cf_moment_series(s, xi) - cf_hypergeometric(s, xi)) for xi in xis)
    return Check(f"cf-identity[s={s}]", worst <= tol, worst, tol, f"xi in {list(xis)}")


def check_euler(s, xis=(0.3, 1.0), tol=1e-6):
    if s < 2:
        return Check(f"euler-integral[s={s}]", True, 0.0, tol, "skipped: point-mass weight")
    worst = max(abs(cf_euler_integral(s, xi) - cf_hypergeometric(s, xi)) for xi in xis)
    return Check(f"euler-integral[s={s}]", worst <= tol, worst, tol, f"xi in {list(xis)}")


def check_support(s, n_samples=10**4):
    K = float(support_constant(s).K)
    method = Method.QUADRATURE if 2 <= s <= 5 else Method.MONTE_CARLO
    resolution = n_samples if method is Method.MONTE_CARLO else None
    outside = [K * (1 + 1e-9), K * 1.01, K + 1.0, 2 * K]
    vals = []
    for x in outside:
        if s == 1:
            vals.append(pi_1_closed_form(x))
        else:
            vals.append(pi_s_monte_carlo(s, x, n_samples)[0])
            vals.append(density_grid(s, [x], method, resolution).values[0])
    inside = density_grid(s, np.linspace(0.01 * K, K, 25), method, resolution)
    ok = all(v == 0.0 for v in vals) and bool(np.all(inside.values >= 0))
    return Check(f"support[s={s}]", ok, max(vals), 0.0, "values beyond K and sign inside")


SUITES = {
    "moments": lambda s: [check_integrality(s), check_moments(s)],
    "ratio": lambda s: [check_ratio(s)],
    "closed-form": lambda s: [check_closed_form()],
    "degenerate": lambda s: [check_degenerate()],
    "sigma-pi": lambda s: [check_sigma_pi(s)] if s >= 2 else [],
    "stransform": lambda s: [check_stransform(s)],
    "rtransform": lambda s: [check_rtransform()],
    "cf-identity": lambda s: [check_cf_identity(s)],
    "euler": lambda s: [check_euler(s)],
    "support": lambda s: [check_support(s)],
}


def run_suite(name: str, s: int) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](s)]
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'") from None
    return suite(s)
