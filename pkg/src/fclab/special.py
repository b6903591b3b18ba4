"""Scalar special functions, hypergeometric series and Gauss-Jacobi rules.

The float series paths are meant for moderate arguments (``|z| <= 50``).
``bessel_j`` sums its series in exact rational arithmetic, which keeps the
alternating ``0F1`` series accurate out to ``z = 30``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "ConvergenceError",
    "QuadratureError",
    "HypergeometricSpec",
    "JacobiRule",
    "log_gamma",
    "beta_function",
    "log_beta",
    "pochhammer",
    "hypergeometric_pfq",
    "hyp0f1",
    "bessel_j",
    "gauss_jacobi_rule",
    "make_rng",
    "sample_beta",
]

PFQ_MAX_ABS_Z = 50.0
PFQ_TERM_CAP = 500


class ConvergenceError(ArithmeticError):
    """A truncated series or iteration did not reach its tolerance."""


class QuadratureError(ConvergenceError):
    """Gauss-Jacobi node finding failed."""


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_beta(a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise ValueError(f"beta function requires a, b > 0, got ({a}, {b})")
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta_function(a: float, b: float) -> float:
    """Euler beta function ``Gamma(a) Gamma(b) / Gamma(a + b)``."""
    return math.exp(log_beta(float(a), float(b)))


def pochhammer(a, k: int):
    """Rising factorial ``(a)_k``; exact when ``a`` is a Fraction or int."""
    out = 1 if not isinstance(a, float) else 1.0
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple[float, ...]
    lower: tuple[float, ...]
    argument: float

    def __init__(self, upper: Sequence, lower: Sequence, argument):
        for b in lower:
            if b <= 0 and float(b).is_integer():
                raise ValueError(f"lower parameter {b} is a nonpositive integer")
        object.__setattr__(self, "upper", tuple(upper))
        object.__setattr__(self, "lower", tuple(lower))
        object.__setattr__(self, "argument", argument)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


def hypergeometric_pfq(spec: HypergeometricSpec, terms: int | None = None,
                       tol: float = 1e-12, full_output: bool = False):
    """Truncated generalized hypergeometric series ``pFq(a; b; z)``.

    Parameters
    ----------
    spec : HypergeometricSpec
        Upper and lower parameters and the argument ``z``.
    terms : int, optional
        Number of terms ``k = 0 .. terms - 1`` to sum. When omitted the series
        is summed until a term falls below ``tol`` with the term ratio below
        one, up to a hard cap of 500 terms.
    tol : float
        Absolute tolerance on the geometric bound of the discarded tail.
    full_output : bool
        Also return the tail bound and the number of terms used.

    Returns
    -------
    value : float
    tail : float
        Only if ``full_output``. Geometric bound on the discarded tail.
    n_terms : int
        Only if ``full_output``.
    """
    z = float(spec.argument)
    if spec.p > spec.q + 1 or (spec.p == spec.q + 1 and abs(z) >= 1):
        raise ValueError("series diverges for these parameters")
    if abs(z) > PFQ_MAX_ABS_Z:
        raise ValueError(f"|z| = {abs(z)} exceeds the supported range {PFQ_MAX_ABS_Z}")
    if terms is not None and terms < 1:
        raise ValueError("terms must be >= 1")
    cap = PFQ_TERM_CAP if terms is None else terms
    upper = [float(a) for a in spec.upper]
    lower = [float(b) for b in spec.lower]

    total = 0.0
    term = 1.0
    ratio = math.inf
    n = 0
    while n < cap:
        total += term
        ratio = abs(z) * math.prod(abs(a + n) for a in upper) / (
            math.prod(abs(b + n) for b in lower) * (n + 1))
        term *= z * math.prod(a + n for a in upper) / (
            math.prod(b + n for b in lower) * (n + 1))
        n += 1
        if term == 0.0:
            ratio = 0.0
            break
        if terms is None and ratio < 1.0 and abs(term) / (1.0 - ratio) < tol:
            break
    tail = abs(term) / (1.0 - ratio) if ratio < 1.0 else math.inf
    if terms is None and not tail < tol:
        raise ConvergenceError(
            f"pFq series did not converge within {cap} terms (tail bound {tail:.3g})")
    if full_output:
        return total, tail, n
    return total


def hyp0f1(b: float, z):
    """Vectorized ``0F1(; b; z)`` for real arrays with ``|z| <= 50``."""
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > PFQ_MAX_ABS_Z):
        raise ValueError("hyp0f1 argument outside the supported range")
    total = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(PFQ_TERM_CAP):
        term = term * z / ((b + k) * (k + 1))
        total += term
        if np.all(np.abs(term) < 1e-17 * np.maximum(1.0, np.abs(total))):
            return total
    raise ConvergenceError("0F1 series did not converge")


def _exact_0f1(b: Fraction, z: Fraction, tol: Fraction) -> Fraction:
    total = Fraction(0)
    term = Fraction(1)
    for k in range(PFQ_TERM_CAP):
        total += term
        term = term * z / ((b + k) * (k + 1))
        # terms decrease monotonically once k + 1 > sqrt|z|
        if (k + 1) ** 2 > abs(z) and abs(term) < tol:
            return total + term
    raise ConvergenceError("0F1 series did not converge")


def bessel_j(alpha: float, z: float) -> float:
    """Bessel function ``J_alpha(z) = (z/2)^alpha / Gamma(alpha+1) 0F1(alpha+1; -z^2/4)``.

    Valid for ``alpha > -1/2`` and ``z >= 0``.
    """
    if not alpha > -0.5:
        raise ValueError(f"bessel_j requires alpha > -1/2, got {alpha}")
    if z < 0:
        raise ValueError(f"bessel_j requires z >= 0, got {z}")
    if z == 0:
        return 1.0 if alpha == 0 else 0.0
    zq = Fraction(z)
    series = _exact_0f1(Fraction(alpha) + 1, -zq * zq / 4, Fraction(1, 10**18))
    log_pref = alpha * math.log(z / 2) - log_gamma(alpha + 1)
    return math.exp(log_pref) * float(series)


@dataclass(frozen=True)
class JacobiRule:
    """Gauss rule for the weight ``(1-u)^alpha (1+u)^beta`` on ``[-1, 1]``.

    ``one_minus`` and ``one_plus`` hold ``1 - u`` and ``1 + u`` to full
    relative precision, which matters for nodes crowding the endpoints.
    """

    alpha: float
    beta: float
    nodes: np.ndarray
    weights: np.ndarray
    one_minus: np.ndarray
    one_plus: np.ndarray

    @property
    def n(self) -> int:
        return len(self.nodes)

    def weight_mass(self) -> float:
        """Exact integral of the weight function."""
        a, b = self.alpha, self.beta
        return math.exp((a + b + 1) * math.log(2.0) + log_beta(a + 1, b + 1))

    def unit_interval(self):
        """``(w, 1 - w, weights)`` on ``[0, 1]`` for the weight ``w^beta (1-w)^alpha``."""
        scale = 2.0 ** -(self.alpha + self.beta + 1)
        return 0.5 * self.one_plus, 0.5 * self.one_minus, self.weights * scale


def _jacobi_near_endpoint(n, alpha, beta, e, d):
    """``P_n`` and ``dP_n/dx`` at ``x = e - e*d`` for ``e = +-1``.

    Written in the endpoint distance ``d`` so that nodes near ``x = e`` are
    resolved relative to ``d`` rather than to ``x``.
    """
    ld = np.longdouble
    alpha, beta, e, d = ld(alpha), ld(beta), np.asarray(e, ld), np.asarray(d, ld)
    sig = -e
    ab = alpha + beta
    p0 = np.ones_like(d)
    p1 = 0.5 * (alpha - beta + (ab + 2.0) * e) + 0.5 * (ab + 2.0) * sig * d
    pm, pn = p0, p1
    for k in range(2, n + 1):
        k = ld(k)
        c = 2 * k + ab
        a1 = 2 * k * (k + ab) * (c - 2)
        a2 = (c - 1) * (alpha * alpha - beta * beta)
        a3 = (c - 2) * (c - 1) * c
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * c
        pm, pn = pn, (((a2 + a3 * e) + a3 * sig * d) * pn - a4 * pm) / a1
    if n == 1:
        pm = p0
    c = 2 * n + ab
    one_minus_x2 = d * (2 - d)
    lin = (alpha - beta - c * e) - c * sig * d
    dp = (n * lin * pn + 2 * (n + alpha) * (n + beta) * pm) / (c * one_minus_x2)
    return pn, dp


def _golub_welsch_nodes(n, alpha, beta):
    ab = alpha + beta
    k = np.arange(n, dtype=float)
    diag = np.empty(n)
    for i in range(n):
        den = (2 * i + ab) * (2 * i + ab + 2)
        diag[i] = (beta - alpha) / (ab + 2) if i == 0 else (beta**2 - alpha**2) / den
    if n == 1:
        return diag
    k = np.arange(1, n, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        off2 = 4 * k * (k + alpha) * (k + beta) * (k + ab) / (
            (2 * k + ab) ** 2 * (2 * k + ab + 1) * (2 * k + ab - 1))
    off2[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
    return eigh_tridiagonal(diag, np.sqrt(off2), eigvals_only=True)


@lru_cache(maxsize=256)
def gauss_jacobi_rule(alpha: float, beta: float, n: int) -> JacobiRule:
    """n-point Gauss-Jacobi rule, exact through degree ``2n - 1``.

    Nodes start from the eigenvalues of the Jacobi matrix and are polished by
    Newton steps on the three-term recurrence; weights use the closed form
    ``2^(a+b+1) G(n+a+1) G(n+b+1) / (G(n+a+b+1) n! (1-x^2) P_n'(x)^2)``.
    """
    alpha = float(alpha)
    beta = float(beta)
    if not (alpha > -1 and beta > -1):
        raise ValueError(f"Jacobi exponents must exceed -1, got ({alpha}, {beta})")
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)

    x0 = _golub_welsch_nodes(n, alpha, beta)
    e = np.where(x0 >= 0, 1.0, -1.0)
    # extended precision for the polish; float64 leaves ~1e-12 in end weights
    d = np.clip(1.0 - np.abs(x0), 1e-300, 1.0).astype(np.longdouble)
    rel = math.inf
    for _ in range(60):
        p, dp = _jacobi_near_endpoint(n, alpha, beta, e, d)
        step = e * p / dp  # dx = -e dd
        d = d + step
        if np.any(d <= 0):
            raise QuadratureError(f"Newton iterate left (-1, 1) for Gauss-Jacobi({alpha}, {beta}, {n})")
        rel = float(np.max(np.abs(step) / d))
        if rel <= 1e-14:
            break
    # rounding can keep the steps of exponents near -1 hovering above 1e-14
    if not rel <= 1e-12:
        raise QuadratureError(f"Newton iteration for Gauss-Jacobi({alpha}, {beta}, {n}) stalled")
    _, dp = _jacobi_near_endpoint(n, alpha, beta, e, d)

    # Gamma-ratio constant by a product from n = 1; lgamma at large n loses ~1e-13
    ld = np.longdouble
    ratio = ld(math.exp(math.lgamma(alpha + 2) + math.lgamma(beta + 2)
                        - math.lgamma(alpha + beta + 2)))
    for k in range(2, n + 1):
        ratio *= ld(k + alpha) * ld(k + beta) / (ld(k + alpha + beta) * ld(k))
    log_c = (alpha + beta + 1) * math.log(2.0)
    const = ld(math.exp(log_c)) * ratio
    w = (const / (d * (2 - d) * dp * dp)).astype(float)
    d = d.astype(float)

    x = e * (1.0 - d)
    one_minus = np.where(e > 0, d, 2.0 - d)
    one_plus = np.where(e > 0, 2.0 - d, d)
    order = np.argsort(x, kind="stable")
    x, w, one_minus, one_plus = x[order], w[order], one_minus[order], one_plus[order]
    if not (np.all(np.diff(x) > 0) and np.all(np.abs(x) < 1) and np.all(w > 0)):
        raise QuadratureError(f"Gauss-Jacobi({alpha}, {beta}, {n}) produced invalid nodes")
    for arr in (x, w, one_minus, one_plus):
        arr.setflags(write=False)
    return JacobiRule(alpha, beta, x, w, one_minus, one_plus)


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator for stream ``key`` under a global ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def sample_beta(a: float, b: float, rng: np.random.Generator, size=None):
    """Beta(a, b) variates; shapes below one are handled by Johnk's method."""
    if not (a > 0 and b > 0):
        raise ValueError(f"Beta shapes must be positive, got ({a}, {b})")
    return rng.beta(a, b, size=size)
