"""Exact Fuss-Catalan numbers, Fuss-Catalan polynomials and the beta-ratio
parameters of the hypergeometric representation.

Everything here is integer or :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

__all__ = [
    "FcParams",
    "MomentSequence",
    "BetaRatioTerm",
    "fuss_catalan",
    "fuss_catalan_polynomial",
    "moment_sequence",
    "beta_ratio_params",
    "beta_ratio_term",
    "beta_coefficient",
]


def _check_int(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")


def _as_fraction(t) -> Fraction:
    if isinstance(t, float):
        # floats are accepted only when they hold an exact small rational
        return Fraction(t).limit_denominator(10**12)
    if isinstance(t, (Rational, str)):
        return Fraction(t)
    raise TypeError(f"expected an exact rational, got {t!r}")


@dataclass(frozen=True)
class FcParams:
    """Parameters ``(s, t)`` of the free Bessel law; ``t = 1`` is Fuss-Catalan."""

    s: int
    t: Fraction = Fraction(1)

    def __post_init__(self):
        _check_int("s", self.s, 1)
        t = _as_fraction(self.t)
        if t < 0:
            raise ValueError(f"t must be >= 0, got {t}")
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class MomentSequence:
    params: FcParams
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 1:
            raise ValueError("moment sequences start with m_0 = 1")

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)


def fuss_catalan(s: int, k: int) -> int:
    """Fuss-Catalan number ``binom((s+1)k, k) / (sk + 1)``, computed exactly.

    >>> [fuss_catalan(2, k) for k in range(6)]
    [1, 1, 3, 12, 55, 273]
    """
    _check_int("s", s, 1)
    _check_int("k", k, 0)
    num = math.comb(s * k + k, k)
    q, r = divmod(num, s * k + 1)
    if r:  # pragma: no cover - a theorem, not a runtime condition
        raise ArithmeticError(f"{s * k + 1} does not divide binom({s * k + k}, {k})")
    return q


def fuss_catalan_polynomial(s: int, k: int, t=1) -> Fraction:
    """Moment ``m_k(t)`` of the free Bessel law with parameters ``(s, t)``.

    ``m_k(t) = sum_{j=1}^{k} (1/j) binom(k-1, j-1) binom(sk, j-1) t^j`` and
    ``m_0(t) = 1``.
    """
    _check_int("s", s, 1)
    _check_int("k", k, 0)
    t = _as_fraction(t)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if k == 0:
        return Fraction(1)
    total = Fraction(0)
    tj = Fraction(1)
    for j in range(1, k + 1):
        tj *= t
        total += Fraction(math.comb(k - 1, j - 1) * math.comb(s * k, j - 1), j) * tj
    return total


def moment_sequence(params: FcParams, k_max: int) -> MomentSequence:
    """Moments ``m_0 .. m_{k_max}`` for ``params``."""
    _check_int("k_max", k_max, 0)
    if params.t == 1:
        values = tuple(Fraction(fuss_catalan(params.s, k)) for k in range(k_max + 1))
    else:
        values = tuple(
            fuss_catalan_polynomial(params.s, k, params.t) for k in range(k_max + 1)
        )
    return MomentSequence(params, values)


@dataclass(frozen=True)
class BetaRatioTerm:
    """Upper parameters ``a``, lower parameters ``b`` and edge constant ``K``.

    ``a_i = i/(s+1)`` for ``i = 1..s``; ``b_1 = 1/2`` and ``b_{i+1} = (i+1)/s``
    for ``i = 1..s``, so ``b`` has ``s + 1`` entries ending in ``1 + 1/s``.
    """

    s: int
    a: tuple[Fraction, ...] = field(repr=False)
    b: tuple[Fraction, ...] = field(repr=False)
    K: Fraction


def beta_ratio_params(s: int) -> BetaRatioTerm:
    _check_int("s", s, 1)
    a = tuple(Fraction(i, s + 1) for i in range(1, s + 1))
    b = (Fraction(1, 2),) + tuple(Fraction(i + 1, s) for i in range(1, s + 1))
    K = Fraction((s + 1) ** (s + 1), s**s)
    return BetaRatioTerm(s, a, b, K)


def beta_ratio_term(s: int, k: int) -> Fraction:
    """``(K/4) prod(k + a_i) / prod_{j<=s}(k + b_j) / (k + b_{s+1})``.

    Equals ``beta_{k+1} / beta_k`` where ``beta_k = m_k k! / (2k)!``.
    """
    _check_int("k", k, 0)
    p = beta_ratio_params(s)
    value = p.K / 4
    for ai in p.a:
        value *= k + ai
    for bj in p.b:
        value /= k + bj
    return value


def beta_coefficient(s: int, k: int) -> Fraction:
    """``beta_k = m_k k! / (2k)!``, the Taylor coefficient of the
    characteristic function in powers of ``-xi^2`` (divided by ``k!``)."""
    return Fraction(fuss_catalan(s, k) * math.factorial(k), math.factorial(2 * k))
