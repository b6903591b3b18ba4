"""Fuss-Catalan densities from their Beta-mixture integral representation.

For ``s >= 2`` the density on ``(0, K]``, ``K = (s+1)^(s+1) / s^s``, is

    pi_s(x) = E_F[ 1{tau K > x} (tau K - x)^(1/s - 1/2) / (sqrt(x) (tau K)^(1/s)) ]
              / B(1/2, 1/2 + 1/s),

where ``tau = t_1 ... t_s`` and the ``t_j`` are independent Beta variates
(see :func:`beta_weight_spec`). At ``s = 1`` the mixing law is a point mass
at ``t_1 = 1`` and the formula collapses to the closed form
``sqrt(4/x - 1) / (2 pi)``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.interpolate import CubicSpline

from . import _parallel
from .combinatorics import beta_ratio_params
from .special import beta_function, gauss_jacobi_rule, log_beta, make_rng, sample_beta

__all__ = [
    "Method",
    "SupportConstant",
    "BetaWeightSpec",
    "DensityEstimate",
    "support_constant",
    "beta_weight_spec",
    "pi_s_monte_carlo",
    "pi_s_quadrature",
    "pi_s_degenerate",
    "pi_1_closed_form",
    "pi_2_closed_form",
    "marchenko_pastur",
    "sigma_s",
    "density_grid",
    "moment_grid",
    "recover_moment",
    "InsufficientGridError",
]

MC_CHUNK = 1 << 20
QUADRATURE_MAX_S = 5
DEFAULT_FLOOR_FRACTION = 1e-3


class Method(str, enum.Enum):
    MONTE_CARLO = "mc"
    QUADRATURE = "quadrature"
    CLOSED_FORM = "closed"


class InsufficientGridError(ValueError):
    """The density grid is too coarse or too narrow to integrate."""


@dataclass(frozen=True)
class SupportConstant:
    s: int
    K: Fraction

    def __float__(self):
        return float(self.K)


def support_constant(s: int) -> SupportConstant:
    """Right edge of the support, ``K = (s+1)^(s+1) / s^s``."""
    return SupportConstant(s, beta_ratio_params(s).K)


@dataclass(frozen=True)
class BetaWeightSpec:
    """Independent Beta laws whose product ``tau`` mixes the density.

    ``pairs[j-1] = (a_j, b_j - a_j)`` where ``a``/``b`` are the upper/lower
    hypergeometric parameters; for ``j = 1`` that is
    ``(1/(s+1), (s-1)/(2s+2))`` and for ``j >= 2`` ``(j/(s+1), j/(s(s+1)))``.
    """

    s: int
    pairs: tuple[tuple[Fraction, Fraction], ...]
    degenerate: bool = False

    @property
    def log_normalizer(self) -> float:
        return sum(log_beta(float(a), float(c)) for a, c in self.pairs)

    @property
    def normalizer(self) -> float:
        return math.exp(self.log_normalizer)

    def log_density(self, t) -> np.ndarray:
        """Log of the joint weight at points ``t`` of shape ``(..., s)``."""
        if self.degenerate:
            raise ValueError("the s = 1 weight is a point mass at t = 1")
        t = np.asarray(t, dtype=float)
        out = -self.log_normalizer
        for j, (a, c) in enumerate(self.pairs):
            out = out + (float(a) - 1) * np.log(t[..., j]) + (float(c) - 1) * np.log1p(-t[..., j])
        return out


def beta_weight_spec(s: int) -> BetaWeightSpec:
    p = beta_ratio_params(s)
    if s == 1:
        return BetaWeightSpec(1, (), degenerate=True)
    pairs = tuple((a, b - a) for a, b in zip(p.a, p.b[:s]))
    return BetaWeightSpec(s, pairs)


def _check_x(x):
    x = float(x)
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")
    return x


def _kernel_norm(s):
    return beta_function(0.5, 0.5 + 1.0 / s)


def pi_s_monte_carlo(s: int, x: float, n_samples: int, seed: int = 0,
                     stream: int = 0) -> tuple[float, float]:
    """Plain Monte Carlo estimate of ``pi_s(x)`` with its standard error.

    Draws ``t_j`` from the Beta laws of :func:`beta_weight_spec` in chunks of
    ``2**20`` from the generator ``make_rng(seed, stream)``.
    """
    if s < 2:
        raise ValueError("Monte Carlo needs s >= 2; s = 1 has a closed form")
    x = _check_x(x)
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    K = float(support_constant(s).K)
    if x > K:
        return 0.0, 0.0
    spec = beta_weight_spec(s)
    expo = 1.0 / s - 0.5
    rng = make_rng(seed, stream)

    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n_samples:
        m = min(MC_CHUNK, n_samples - done)
        tau = np.ones(m)
        for a, c in spec.pairs:
            tau *= sample_beta(float(a), float(c), rng, size=m)
        y = tau * K
        g = np.zeros(m)
        live = y > x
        yl = y[live]
        g[live] = (yl - x) ** expo * yl ** (-1.0 / s)
        total += g.sum()
        total_sq += np.dot(g, g)
        done += m

    mean = total / n_samples
    var = max(total_sq / n_samples - mean * mean, 0.0)
    scale = 1.0 / (math.sqrt(x) * _kernel_norm(s))
    stderr = math.sqrt(var / max(n_samples - 1, 1))
    return mean * scale, stderr * scale


def _default_nodes(s):
    return {2: 64, 3: 48}.get(s, 32)


def _quadrature_value(s, x, n):
    K = float(support_constant(s).K)
    xk = x / K
    spec = beta_weight_spec(s)
    p = 1.0 / s - 0.5

    # gamma[j]: exponent of (u - x/K) carried by the level-j integral
    gammas = [p]
    for _, c in spec.pairs:
        gammas.append(gammas[-1] + float(c))
    levels = []
    for j, (a, c) in enumerate(spec.pairs, start=1):
        rule = gauss_jacobi_rule(float(c) - 1.0, gammas[j - 1], n)
        w, om, W = rule.unit_interval()
        levels.append((float(a), float(c), gammas[j - 1], gammas[j],
                       log_beta(float(a), float(c)), w, om, W))
    base = K**p * K ** (-1.0 / s)
    limit = 1 << 22

    def H(j, u):
        # H_j(u) = G_j(u) / (u - x/K)^gamma_j, G_j the level-j partial integral
        if j == 0:
            return base * u ** (-1.0 / s)
        if u.ndim and u.size * n**j > limit:
            return np.stack([H(j, ui) for ui in u])
        a, c, g_in, g_out, logb, w, om, W = levels[j - 1]
        lnL = np.log(xk / u)[..., None]
        # t = L^(1-w) spreads nodes geometrically over [L, 1]
        t = np.exp(om * lnL)
        D = np.exp(lnL) * np.expm1(-w * lnL) / w
        E = -np.expm1(om * lnL) / om
        inner = H(j - 1, u[..., None] * t)
        terms = W * (-lnL) * t**a * E ** (c - 1.0) * D**g_in * inner
        one_minus_L = -np.expm1(lnL[..., 0])
        return terms.sum(-1) * np.exp(-logb) * u ** (g_in - g_out) / one_minus_L**g_out

    h = float(H(s, np.asarray(1.0)))
    return (1.0 - xk) ** gammas[-1] * h / (math.sqrt(x) * _kernel_norm(s))


def pi_s_quadrature(s: int, x: float, n_nodes: int | None = None) -> tuple[float, float]:
    """Nested Gauss-Jacobi evaluation of ``pi_s(x)`` for ``2 <= s <= 5``.

    Each ``t_j`` integral runs only over the range where the indicator is
    active, with both endpoint singularities carried by the Jacobi weight,
    so the rule converges spectrally. Returns the value and the difference
    against the same rule at half the nodes.
    """
    if s == 1:
        raise ValueError("s = 1 has a point-mass weight; use pi_1_closed_form")
    if not 2 <= s <= QUADRATURE_MAX_S:
        raise ValueError(f"quadrature supports 2 <= s <= {QUADRATURE_MAX_S}, got s = {s}")
    x = _check_x(x)
    K = float(support_constant(s).K)
    if not x < K:
        raise ValueError(f"x must lie in (0, K) = (0, {K:.6g}), got {x}")
    n = _default_nodes(s) if n_nodes is None else int(n_nodes)
    if n < 2:
        raise ValueError("n_nodes must be >= 2")
    value = _quadrature_value(s, x, n)
    coarse = _quadrature_value(s, x, n // 2)
    return value, abs(value - coarse)


def pi_s_degenerate(x: float) -> float:
    """The integral formula at ``s = 1`` with the point-mass weight at ``t = 1``."""
    x = float(x)
    if not 0 < x <= 4:
        return 0.0
    K = 4.0
    return (K - x) ** 0.5 / (math.sqrt(x) * K * beta_function(0.5, 1.5))


def pi_1_closed_form(x: float) -> float:
    """Free Poisson density of rate one: ``sqrt(4/x - 1) / (2 pi)`` on ``(0, 4]``."""
    x = float(x)
    if not 0 < x <= 4:
        return 0.0
    return math.sqrt(4.0 / x - 1.0) / (2.0 * math.pi)


def marchenko_pastur(t: float, x: float) -> tuple[float, float]:
    """Atom at zero and continuous density of the free Poisson law of rate ``t``."""
    t = float(t)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    x = float(x)
    atom = max(1.0 - t, 0.0)
    lo = (1.0 - math.sqrt(t)) ** 2
    hi = (1.0 + math.sqrt(t)) ** 2
    if not (x > 0 and lo <= x <= hi):
        return atom, 0.0
    disc = max(4.0 * t - (x - 1.0 - t) ** 2, 0.0)
    return atom, math.sqrt(disc) / (2.0 * math.pi * x)


def pi_2_closed_form(x: float) -> float:
    """Cube-root closed form of ``pi_2`` on ``(0, 27/4]``."""
    x = float(x)
    if not 0 < x <= 6.75:
        return 0.0
    c2 = 2.0 ** (1.0 / 3.0)
    r = 27.0 + 3.0 * math.sqrt(max(81.0 - 12.0 * x, 0.0))
    num = c2 * r ** (2.0 / 3.0) - 6.0 * x ** (1.0 / 3.0)
    den = x ** (2.0 / 3.0) * r ** (1.0 / 3.0)
    return max(c2 * math.sqrt(3.0) / (12.0 * math.pi) * num / den, 0.0)


def _point_value(s, x, method, resolution, seed, stream):
    """``(value, error)`` of ``pi_s`` at one point for an explicit method."""
    K = float(support_constant(s).K)
    if x <= 0 or x > K:
        return 0.0, 0.0
    if s == 1:
        return pi_1_closed_form(x), 0.0
    if method is Method.CLOSED_FORM:
        if s != 2:
            raise ValueError(f"no closed form for s = {s}")
        return pi_2_closed_form(x), 0.0
    if method is Method.QUADRATURE:
        if x >= K:
            return 0.0, 0.0
        return pi_s_quadrature(s, x, resolution)
    n = 10**6 if resolution is None else int(resolution)
    return pi_s_monte_carlo(s, x, n, seed, stream)


def sigma_s(s: int, x: float, method: Method | str = Method.QUADRATURE,
            resolution: int | None = None, seed: int = 0) -> float:
    """Symmetric density on ``[-sqrt(K), sqrt(K)]`` with even moments ``m_k``.

    ``sigma_s(x) = |x| pi_s(x^2)``. At ``x = 0`` the value is ``1/pi`` for
    ``s = 1`` and ``inf`` otherwise.
    """
    method = Method(method)
    x = abs(float(x))
    if x == 0:
        return 1.0 / math.pi if s == 1 else math.inf
    if x * x > float(support_constant(s).K):
        return 0.0
    return x * _point_value(s, x * x, method, resolution, seed, 0)[0]


@dataclass
class DensityEstimate:
    s: int
    grid: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    method: Method
    resolution: int | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def params(self) -> dict:
        return {"s": self.s, "method": self.method.value, "resolution": self.resolution,
                "seed": self.seed, "K": str(support_constant(self.s).K), **self.extra}

    def to_csv(self, header_comment: str | None = None) -> str:
        lines = []
        if header_comment:
            lines.append(f"# {header_comment}")
        lines.append("x,value,error,method")
        for x, v, e in zip(self.grid, self.values, self.errors):
            lines.append(f"{float(x)!r},{float(v)!r},{float(e)!r},{self.method.value}")
        return "\n".join(lines) + "\n"

    def to_json(self, manifest: dict | None = None) -> str:
        doc = {
            "schema": "fc-lab/1",
            "kind": "density",
            "params": self.params(),
            "x": [float(v) for v in self.grid],
            "value": [float(v) for v in self.values],
            "error": [float(v) for v in self.errors],
        }
        if manifest is not None:
            doc["manifest"] = manifest
        return json.dumps(doc, indent=2)


def density_grid(s: int, x_grid, method: Method | str = Method.QUADRATURE,
                 resolution: int | None = None, seed: int = 0,
                 x_floor: float | None = None) -> DensityEstimate:
    """Evaluate ``pi_s`` on a sorted grid.

    Points at or beyond ``K`` and at negative ``x`` get zero density; points in
    ``[0, x_floor)`` are refused because of the integrable ``x^(-s/(s+1))``
    blow-up at the origin (default floor ``1e-3 K``). Monte Carlo point ``i``
    uses stream ``i`` of ``seed``, so results do not depend on threading.
    """
    method = Method(method)
    grid = np.asarray(x_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("x_grid must be a nonempty 1-d sequence")
    if np.any(np.diff(grid) < 0):
        raise ValueError("x_grid must be sorted")
    K = float(support_constant(s).K)
    floor = DEFAULT_FLOOR_FRACTION * K if x_floor is None else float(x_floor)
    bad = (grid >= 0) & (grid < floor) | (grid == 0)
    if np.any(bad):
        raise ValueError(f"grid points below the floor {floor:.3g} are not evaluated")
    if s == 1:
        method = Method.CLOSED_FORM
    if method is Method.QUADRATURE and s > QUADRATURE_MAX_S:
        raise ValueError(f"quadrature supports s <= {QUADRATURE_MAX_S}")

    def one(item):
        i, x = item
        return _point_value(s, x, method, resolution, seed, i)

    results = _parallel.ordered_map(one, list(enumerate(grid.tolist())))
    values = np.array([r[0] for r in results])
    errors = np.array([r[1] for r in results])
    return DensityEstimate(s, grid, values, errors, method,
                           resolution=resolution,
                           seed=seed if method is Method.MONTE_CARLO else None)


def _to_unit(s, x):
    """Map ``x in (0, K)`` to ``v in (0, 1)``; ``u = (x/K)^(1/(s+1))``, ``u = v (2 - v)``."""
    K = float(support_constant(s).K)
    u = (np.asarray(x, dtype=float) / K) ** (1.0 / (s + 1))
    return 1.0 - np.sqrt(1.0 - u)


def _from_unit(s, v):
    K = float(support_constant(s).K)
    v = np.asarray(v, dtype=float)
    u = v * (2.0 - v)
    return K * u ** (s + 1)


def moment_grid(s: int, n: int = 64) -> np.ndarray:
    """Grid uniform in the variable that makes ``pi_s(x) dx`` smooth at both ends.

    With ``x = K u^(s+1)`` the origin singularity becomes a finite limit and
    ``u = v (2 - v)`` removes the square-root edge at ``K``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    v = (np.arange(n) + 0.5) / n
    return _from_unit(s, v)


def recover_moment(estimate: DensityEstimate, k: int, full_output: bool = False):
    """``int x^k pi_s(x) dx`` from a density table.

    The table is moved to the smooth variable of :func:`moment_grid`, closed
    with the known zero at ``x = K``, and integrated as a not-a-knot cubic
    spline (extrapolated down to the origin). With ``full_output`` the
    standard error propagated from independent per-point errors is returned
    as well.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    s = estimate.s
    K = float(support_constant(s).K)
    x = np.asarray(estimate.grid, dtype=float)
    keep = (x > 0) & (x < K)
    x = x[keep]
    vals = np.asarray(estimate.values, dtype=float)[keep]
    errs = np.asarray(estimate.errors, dtype=float)[keep]
    if x.size < 40:
        raise InsufficientGridError(f"need at least 40 interior grid points, got {x.size}")
    v = _to_unit(s, x)
    if v[0] > 0.2 or v[-1] < 0.8:
        raise InsufficientGridError("grid does not reach close enough to 0 and K")
    u = v * (2.0 - v)
    jac = K * (s + 1) * u**s * 2.0 * (1.0 - v)
    factor = x**k * jac

    nodes = np.append(v, 1.0)
    basis = np.eye(nodes.size)[:, :-1]
    weights = CubicSpline(nodes, basis, bc_type="not-a-knot").integrate(0.0, 1.0)
    lin = weights * factor
    value = float(lin @ vals)
    if full_output:
        return value, float(math.sqrt(np.sum((lin * errs) ** 2)))
    return value
