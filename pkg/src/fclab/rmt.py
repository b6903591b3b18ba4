"""Squared singular values of products of complex Ginibre matrices.

With entries of variance ``1/N`` the normalized trace moments
``(1/N) tr (W W*)^k`` of ``W = X_1 ... X_s`` (or ``W = X^s``) converge to the
Fuss-Catalan numbers as ``N`` grows.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _parallel
from .combinatorics import fuss_catalan
from .density import density_grid, support_constant
from .special import make_rng

__all__ = [
    "Variant",
    "MemoryCapError",
    "RmtExperimentConfig",
    "RmtReport",
    "HistogramTable",
    "sample_ginibre",
    "product_matrix",
    "product_moments",
    "histogram_vs_density",
]

DEFAULT_MEMORY_CAP = 512 * 2**20
HISTOGRAM_MAX_N = 512


class Variant(str, enum.Enum):
    DISTINCT_FACTORS = "distinct"
    POWER = "power"


class MemoryCapError(MemoryError):
    pass


@dataclass(frozen=True)
class RmtExperimentConfig:
    s: int
    N: int
    trials: int = 50
    seed: int = 0
    variant: Variant = Variant.DISTINCT_FACTORS
    k_max: int = 3
    memory_cap: int = DEFAULT_MEMORY_CAP

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")

    def memory_estimate(self) -> int:
        """Peak bytes of one trial: the factors plus product, Gram matrix and power."""
        factors = self.s if self.variant is Variant.DISTINCT_FACTORS else 1
        return 16 * self.N * self.N * (factors + 4)

    def check_memory(self):
        need = self.memory_estimate()
        if need > self.memory_cap:
            raise MemoryCapError(
                f"one trial needs ~{need / 2**20:.1f} MiB, above the cap of "
                f"{self.memory_cap / 2**20:.1f} MiB")


def sample_ginibre(N: int, rng: np.random.Generator) -> np.ndarray:
    """``N x N`` complex Gaussian matrix with ``E|X_ij|^2 = 1/N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    scale = 1.0 / math.sqrt(2.0 * N)
    re = rng.standard_normal((N, N))
    im = rng.standard_normal((N, N))
    return (re + 1j * im) * scale


def product_matrix(config: RmtExperimentConfig, trial: int) -> np.ndarray:
    """``W`` for one trial; trial ``i`` draws from stream ``i`` of the seed."""
    rng = make_rng(config.seed, trial)
    if config.variant is Variant.POWER:
        X = sample_ginibre(config.N, rng)
        return np.linalg.matrix_power(X, config.s)
    W = sample_ginibre(config.N, rng)
    for _ in range(config.s - 1):
        W = W @ sample_ginibre(config.N, rng)
    return W


def _trial_moments(config, trial):
    W = product_matrix(config, trial)
    A = W @ W.conj().T
    out = np.empty(config.k_max)
    P = A
    for k in range(config.k_max):
        if k:
            P = P @ A
        out[k] = np.trace(P).real / config.N
    return out


@dataclass
class RmtReport:
    config: RmtExperimentConfig
    samples: np.ndarray  # (trials, k_max): per-trial normalized trace moments
    reference: list[int] = field(default_factory=list)

    @property
    def mean(self) -> np.ndarray:
        return self.samples.mean(axis=0)

    @property
    def std_error(self) -> np.ndarray:
        t = self.samples.shape[0]
        if t < 2:
            return np.full(self.samples.shape[1], math.nan)
        return self.samples.std(axis=0, ddof=1) / math.sqrt(t)

    @property
    def relative_deviations(self) -> np.ndarray:
        ref = np.asarray(self.reference, dtype=float)
        return np.abs(self.mean - ref) / ref

    @property
    def mean_trial_deviation(self) -> np.ndarray:
        """Average over trials of ``|m_hat_k - m_k| / m_k``."""
        ref = np.asarray(self.reference, dtype=float)
        return (np.abs(self.samples - ref) / ref).mean(axis=0)

    def empirical_moments(self):
        return [(k + 1, float(m), float(e)) for k, (m, e) in
                enumerate(zip(self.mean, self.std_error))]

    def to_dict(self, manifest: dict | None = None) -> dict:
        cfg = asdict(self.config)
        cfg["variant"] = self.config.variant.value
        doc = {
            "schema": "fc-lab/1",
            "kind": "rmt-report",
            "config": cfg,
            "empirical_moments": [
                {"k": k, "mean": m, "std_error": e} for k, m, e in self.empirical_moments()],
            "reference": [str(r) for r in self.reference],
            "relative_deviations": [float(d) for d in self.relative_deviations],
        }
        if manifest is not None:
            doc["manifest"] = manifest
        return doc

    def to_json(self, manifest: dict | None = None) -> str:
        return json.dumps(self.to_dict(manifest), indent=2)


def product_moments(config: RmtExperimentConfig) -> RmtReport:
    """Across-trial trace moments ``(1/N) tr (W W*)^k``, ``k = 1..k_max``.

    Moments come from repeated multiplication, never from an eigensolver.
    Trials may run on worker threads; the fold is in trial order.
    """
    config.check_memory()
    rows = _parallel.ordered_map(lambda i: _trial_moments(config, i), range(config.trials))
    ref = [fuss_catalan(config.s, k) for k in range(1, config.k_max + 1)]
    return RmtReport(config, np.vstack(rows), ref)


@dataclass
class HistogramTable:
    s: int
    edges: np.ndarray
    frequencies: np.ndarray   # fraction of all eigenvalues per bin on [0, K]
    model_density: np.ndarray  # pi_s at the bin centers
    mass_above_K: float
    count: int

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def empirical_density(self) -> np.ndarray:
        return self.frequencies / self.widths

    def to_csv(self, header_comment: str | None = None) -> str:
        lines = [f"# {header_comment}"] if header_comment else []
        lines.append("bin_center,empirical_frequency,empirical_density,model_density")
        for c, f, d, m in zip(self.centers, self.frequencies, self.empirical_density,
                              self.model_density):
            lines.append(f"{float(c)!r},{float(f)!r},{float(d)!r},{float(m)!r}")
        lines.append(f"# mass_above_K={self.mass_above_K!r}")
        return "\n".join(lines) + "\n"


def histogram_vs_density(config: RmtExperimentConfig, bins: int = 40) -> HistogramTable:
    """Histogram of squared singular values of ``W`` pooled over trials.

    Bins tile ``[0, K]``; eigenvalues beyond ``K`` are counted in
    ``mass_above_K`` so that the frequencies plus that mass sum to one.
    """
    if config.N > HISTOGRAM_MAX_N:
        raise ValueError(f"histograms are limited to N <= {HISTOGRAM_MAX_N}")
    config.check_memory()
    K = float(support_constant(config.s).K)

    def squared_singular_values(i):
        try:
            sv = np.linalg.svd(product_matrix(config, i), compute_uv=False)
        except np.linalg.LinAlgError as exc:
            raise ArithmeticError(f"singular value decomposition failed in trial {i}") from exc
        return sv**2

    ev = np.concatenate(_parallel.ordered_map(squared_singular_values, range(config.trials)))
    edges = np.linspace(0.0, K, bins + 1)
    counts, _ = np.histogram(ev[ev <= K], bins=edges)
    total = ev.size
    centers = 0.5 * (edges[1:] + edges[:-1])
    method = "closed" if config.s <= 2 else ("quadrature" if config.s <= 5 else "mc")
    model = density_grid(config.s, centers, method, seed=config.seed, x_floor=0.0).values
    return HistogramTable(config.s, edges, counts / total, model,
                          float(np.count_nonzero(ev > K)) / total, total)
