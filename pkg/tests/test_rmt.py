import json
import os

import numpy as np
import pytest

from fclab.rmt import (HISTOGRAM_MAX_N, MemoryCapError, RmtExperimentConfig, Variant,
                       histogram_vs_density, product_matrix, product_moments, sample_ginibre)
from fclab.special import make_rng


def test_ginibre_variance():
    X = sample_ginibre(400, make_rng(0, 0))
    assert X.dtype == np.complex128
    assert np.mean(np.abs(X) ** 2) * 400 == pytest.approx(1.0, rel=0.01)
    assert abs(np.mean(X.real * X.imag)) < 1e-3


def test_config_validation():
    with pytest.raises(ValueError):
        RmtExperimentConfig(0, 10)
    with pytest.raises(ValueError):
        RmtExperimentConfig(2, 1)
    with pytest.raises(ValueError):
        RmtExperimentConfig(2, 10, variant="other")
    cfg = RmtExperimentConfig(2, 20000, memory_cap=2**20)
    with pytest.raises(MemoryCapError):
        cfg.check_memory()
    with pytest.raises(MemoryCapError):
        product_moments(cfg)


def test_power_equals_distinct_at_one_factor():
    a = product_matrix(RmtExperimentConfig(1, 30, variant="power"), 3)
    b = product_matrix(RmtExperimentConfig(1, 30, variant="distinct"), 3)
    assert np.array_equal(a, b)


def test_moments_are_reproducible_across_threads(monkeypatch):
    cfg = RmtExperimentConfig(2, 40, trials=6, seed=9)
    monkeypatch.setenv("FC_LAB_THREADS", "1")
    one = product_moments(cfg).samples
    monkeypatch.setenv("FC_LAB_THREADS", "4")
    four = product_moments(cfg).samples
    assert np.array_equal(one, four)


def test_trace_moments_match_eigenvalues():
    cfg = RmtExperimentConfig(2, 30, trials=1, k_max=3)
    W = product_matrix(cfg, 0)
    ev = np.linalg.eigvalsh(W @ W.conj().T)
    rep = product_moments(cfg)
    assert np.allclose(rep.samples[0], [np.mean(ev**k) for k in (1, 2, 3)], rtol=1e-10)


def test_report_quantities():
    rep = product_moments(RmtExperimentConfig(2, 100, trials=10, seed=1))
    assert rep.reference == [1, 3, 12]
    assert np.all(rep.relative_deviations < 0.1)
    assert np.all(rep.std_error > 0)
    assert rep.mean_trial_deviation.shape == (3,)
    doc = json.loads(rep.to_json(manifest="manifest.json"))
    assert doc["schema"] == "fc-lab/1" and doc["config"]["variant"] == "distinct"
    assert doc["reference"] == ["1", "3", "12"]


def test_per_trial_deviation_shrinks_with_N():
    small = product_moments(RmtExperimentConfig(2, 25, trials=20)).mean_trial_deviation
    large = product_moments(RmtExperimentConfig(2, 200, trials=20)).mean_trial_deviation
    assert np.all(large < small)


@pytest.mark.parametrize("s", [1, 2])
def test_histogram(s):
    table = histogram_vs_density(RmtExperimentConfig(s, 200, trials=3), bins=30)
    assert table.frequencies.sum() + table.mass_above_K == pytest.approx(1.0, abs=1e-12)
    assert table.count == 600
    inner = (table.centers > 0.2) & (table.centers < 0.8 * table.edges[-1])
    assert np.max(np.abs(table.empirical_density - table.model_density)[inner]) < 0.1
    csv = table.to_csv("hdr").splitlines()
    assert csv[1] == "bin_center,empirical_frequency,empirical_density,model_density"
    assert csv[-1].startswith("# mass_above_K=")


def test_histogram_size_limit():
    with pytest.raises(ValueError):
        histogram_vs_density(RmtExperimentConfig(2, HISTOGRAM_MAX_N + 1, trials=1))


def test_variant_enum():
    assert Variant("power") is Variant.POWER
    assert RmtExperimentConfig(2, 10, variant="power").variant is Variant.POWER
