import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fclab.combinatorics import FcParams, moment_sequence
from fclab.free import (FormalPowerSeries, free_cumulants, moment_generating_series,
                        moments_from_cumulants, r_transform, s_transform, series_reversion)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=20)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _is_noncrossing(partition):
    for A, B in itertools.permutations(partition, 2):
        for a1, a2 in itertools.combinations(sorted(A), 2):
            if any(a1 < b < a2 for b in B) and any(b < a1 or b > a2 for b in B):
                return False
    return True


def _moment_from_partitions(kappa, n):
    # m_n = sum over non-crossing partitions of prod kappa_{|block|}
    total = Fraction(0)
    for p in _set_partitions(list(range(n))):
        if _is_noncrossing(p):
            total += math.prod((kappa[len(b) - 1] for b in p), start=Fraction(1))
    return total


def test_noncrossing_counts_are_catalan():
    counts = [sum(1 for p in _set_partitions(list(range(n))) if _is_noncrossing(p))
              for n in range(1, 6)]
    assert counts == [1, 2, 5, 14, 42]


@pytest.mark.parametrize("s", [1, 2, 3])
def test_cumulants_against_partition_enumeration(s):
    m = moment_sequence(FcParams(s), 5)
    kappa = free_cumulants(m, 5)
    for n in range(1, 6):
        assert _moment_from_partitions(kappa, n) == m[n]


def test_free_poisson_cumulants():
    for t in [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3)]:
        assert free_cumulants(moment_sequence(FcParams(1, t), 8), 8) == [t] * 8


@settings(max_examples=30)
@given(st.lists(fractions, min_size=1, max_size=6))
def test_cumulant_round_trip(kappa):
    m = moments_from_cumulants(kappa)
    assert free_cumulants(m, len(kappa)) == [Fraction(k) for k in kappa]


@settings(max_examples=30)
@given(st.lists(fractions, min_size=6, max_size=6), fractions.filter(lambda c: c != 0))
def test_reversion_round_trip(tail, c1):
    f = FormalPowerSeries([0, c1] + tail)
    g = series_reversion(f)
    z = FormalPowerSeries.identity(f.order)
    assert f.compose(g) == z
    assert g.compose(f) == z


def test_series_arithmetic():
    a = FormalPowerSeries([1, 2, 3])
    b = FormalPowerSeries([1, -1], order=2)
    assert (a * b).coefficients == (1, 1, 1)
    assert (a * a.inverse()) == FormalPowerSeries.constant(1, 2)
    assert (a / a) == FormalPowerSeries.constant(1, 2)
    assert (a - a) == FormalPowerSeries([0, 0, 0])
    assert (a**3)[1] == 6
    one_minus_z = FormalPowerSeries([1, -1], order=4)
    assert one_minus_z.inverse() == FormalPowerSeries([1] * 5)
    with pytest.raises(ZeroDivisionError):
        FormalPowerSeries([0, 1]).inverse()
    with pytest.raises(ValueError):
        FormalPowerSeries([1, 1]).shift_down()
    with pytest.raises(ValueError):
        series_reversion(FormalPowerSeries([0, 0, 1]))


def test_moment_series_needs_enough_terms():
    with pytest.raises(ValueError):
        moment_generating_series([1, 1], 4)


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_s_transform_is_power(s):
    order = 8
    S1 = s_transform(moment_sequence(FcParams(1), order + 1), order)
    Ss = s_transform(moment_sequence(FcParams(s), order + 1), order)
    assert S1 == FormalPowerSeries([(-1) ** k for k in range(order + 1)])
    assert Ss == S1**s


def test_s_transform_of_free_poisson_rate():
    # S-transform of the free Poisson law with rate t is 1 / (t + z)
    t = Fraction(3, 2)
    S = s_transform(moment_sequence(FcParams(1, t), 7), 6)
    assert S == FormalPowerSeries([t, 1], order=6).inverse()


def test_r_transform():
    R = r_transform(moment_sequence(FcParams(1, Fraction(1, 2)), 4), 4)
    assert R == FormalPowerSeries([Fraction(1, 2)] * 4)
    with pytest.raises(ValueError):
        r_transform(moment_sequence(FcParams(1), 4), 0)
