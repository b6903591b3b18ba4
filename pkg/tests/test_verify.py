import pytest

from fclab.identities import cf_euler_integral, cf_hypergeometric, cf_moment_series
from fclab.verify import SUITES, run_suite


@pytest.mark.parametrize("s", [1, 3])
def test_all_suites_pass(s):
    checks = run_suite("all", s)
    assert checks and all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", 2)
    assert "sigma-pi" in SUITES


@pytest.mark.parametrize("s", [2, 4])
def test_three_routes_agree(s):
    for xi in (0.5, 1.5):
        ref = cf_hypergeometric(s, xi)
        assert cf_moment_series(s, xi, k_max=30) == pytest.approx(ref, abs=1e-12)
        assert cf_euler_integral(s, xi) == pytest.approx(ref, abs=1e-8)


def test_euler_rejects_point_mass():
    with pytest.raises(ValueError):
        cf_euler_integral(1, 1.0)
