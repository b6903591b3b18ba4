"""Exact truncated power series and the S- and R-transforms of moment sequences.

Two standard facts are checked here at the level of coefficients:

* free multiplicative convolution multiplies S-transforms, so the S-series
  of the Fuss-Catalan law with parameter ``s`` is the ``s``-th power of the
  S-series of the free Poisson law;
* free additive convolution adds free cumulants, so the cumulants of the
  free Poisson law of rate ``t`` are ``t`` times those of rate one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import MomentSequence

__all__ = [
    "FormalPowerSeries",
    "moment_generating_series",
    "series_reversion",
    "s_transform",
    "free_cumulants",
    "moments_from_cumulants",
    "r_transform",
]


class FormalPowerSeries:
    """Power series ``c_0 + c_1 z + ... + c_n z^n + O(z^(n+1))`` over the rationals.

    Arithmetic truncates to the smaller order of the operands.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable, order: int | None = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        self.coefficients = tuple(coeffs)

    @classmethod
    def identity(cls, order: int) -> "FormalPowerSeries":
        return cls([0, 1], order)

    @classmethod
    def constant(cls, c, order: int) -> "FormalPowerSeries":
        return cls([c], order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __repr__(self):
        return f"FormalPowerSeries([{', '.join(str(c) for c in self.coefficients)}])"

    def __eq__(self, other):
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def truncate(self, order: int) -> "FormalPowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return FormalPowerSeries(self.coefficients[: order + 1])

    def _coerce(self, other):
        if isinstance(other, FormalPowerSeries):
            return other
        return FormalPowerSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return FormalPowerSeries(a + b for a, b in zip(self[: n + 1], other[: n + 1]))

    __radd__ = __add__

    def __neg__(self):
        return FormalPowerSeries(-c for c in self)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FormalPowerSeries):
            c = Fraction(other)
            return FormalPowerSeries(c * a for a in self)
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return FormalPowerSeries(
            sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = FormalPowerSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FormalPowerSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        out = [1 / a[0]]
        for k in range(1, len(a)):
            out.append(-sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0)) / a[0])
        return FormalPowerSeries(out)

    def __truediv__(self, other):
        if isinstance(other, FormalPowerSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def shift_down(self) -> "FormalPowerSeries":
        """``f(z) / z`` for a series with zero constant term (loses one order)."""
        if self.coefficients[0] != 0:
            raise ValueError("constant term must vanish to divide by z")
        if self.order == 0:
            raise ValueError("nothing left after dividing by z")
        return FormalPowerSeries(self.coefficients[1:])

    def compose(self, inner: "FormalPowerSeries") -> "FormalPowerSeries":
        """``self(inner(z))``; ``inner`` must have zero constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = FormalPowerSeries.constant(self[n], n)
        for c in reversed(self.coefficients[:n]):
            result = result * inner + c
        return result

    def __call__(self, inner):
        return self.compose(inner)


def moment_generating_series(moments: MomentSequence | Sequence, order: int) -> FormalPowerSeries:
    """``psi(z) = sum_{k>=1} m_k z^k`` truncated at ``order``."""
    values = list(moments)
    if len(values) < order + 1:
        raise ValueError(f"need moments m_0..m_{order}, got {len(values)} values")
    return FormalPowerSeries([0] + values[1: order + 1])


def series_reversion(f: FormalPowerSeries) -> FormalPowerSeries:
    """Compositional inverse ``g`` with ``f(g(z)) = z + O(z^(n+1))``.

    Newton iteration on ``f(g) - z``; each step doubles the number of correct
    coefficients.
    """
    if f[0] != 0:
        raise ValueError("reversion needs a zero constant term")
    if f.order < 1 or f[1] == 0:
        raise ValueError("reversion needs a nonzero linear coefficient")
    n = f.order
    z = FormalPowerSeries.identity(n)
    fprime = FormalPowerSeries([k * f[k] for k in range(1, n + 1)] + [0])
    g = z * (1 / f[1])
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        # g <- g - (f(g) - z) / f'(g), valid to twice the previous precision
        g = g - (f.compose(g) - z) / fprime.compose(g)
    return g


def s_transform(moments: MomentSequence | Sequence, order: int = 8) -> FormalPowerSeries:
    """S-series ``S(z) = chi(z) (1 + z) / z`` with ``chi`` the inverse of ``psi``.

    Needs moments ``m_0 .. m_{order+1}``.
    """
    values = list(moments)
    if len(values) < 2 or values[1] == 0:
        raise ValueError("S-transform needs m_1 != 0")
    psi = moment_generating_series(values, order + 1)
    chi = series_reversion(psi)
    one_plus_z = FormalPowerSeries([1, 1], order + 1)
    return (chi * one_plus_z).shift_down()


def free_cumulants(moments: MomentSequence | Sequence, order: int = 8) -> list[Fraction]:
    """Free cumulants ``kappa_1 .. kappa_order``.

    Uses ``M(z) = 1 + sum_j kappa_j z^j M(z)^j`` with ``M = 1 + sum m_n z^n``:
    the ``z^n`` coefficient gives ``m_n = kappa_n + (terms in kappa_j, j < n)``.
    """
    values = [Fraction(v) for v in moments]
    if len(values) < order + 1:
        raise ValueError(f"need moments m_0..m_{order}, got {len(values)} values")
    if values[0] != 1:
        raise ValueError("moment sequences start with m_0 = 1")
    M = FormalPowerSeries(values[: order + 1])
    powers = [FormalPowerSeries.constant(1, order)]
    for _ in range(order):
        powers.append(powers[-1] * M)
    kappa: list[Fraction] = []
    for n in range(1, order + 1):
        rest = sum((kappa[j - 1] * powers[j][n - j] for j in range(1, n)), Fraction(0))
        kappa.append(values[n] - rest)
    return kappa


def moments_from_cumulants(kappa: Sequence, order: int | None = None) -> list[Fraction]:
    """Inverse of :func:`free_cumulants`: returns ``m_0 .. m_order``."""
    kappa = [Fraction(k) for k in kappa]
    order = len(kappa) if order is None else order
    if order > len(kappa):
        raise ValueError("not enough cumulants for the requested order")
    m = [Fraction(1)]
    for n in range(1, order + 1):
        M = FormalPowerSeries(m + [0], n)
        total = Fraction(0)
        power = FormalPowerSeries.constant(1, n)
        for j in range(1, n + 1):
            power = power * M
            total += kappa[j - 1] * power[n - j]
        m.append(total)
    return m


def r_transform(moments: MomentSequence | Sequence, order: int = 8) -> FormalPowerSeries:
    """R-series ``R(z) = sum_{n>=1} kappa_n z^(n-1)`` truncated at ``z^(order-1)``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return FormalPowerSeries(free_cumulants(moments, order))
