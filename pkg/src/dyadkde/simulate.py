"""Sampler for the two-point-attribute design and the Monte Carlo driver.

Replication r draws from a Philox counter-based stream keyed by
(seed, r), so results are reproducible and independent of how the
replications are scheduled across worker threads.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from . import _backend
from .density import fit, normal_quantile
from .errors import EmptyInput
from .oracle import NgpDesign, true_density
from .sample import DyadicSample


@dataclass(frozen=True)
class SimConfig:
    design: NgpDesign
    n_nodes: int
    h: float
    kernel: object
    replications: int
    seed: int
    alpha: float = 0.05

    def __post_init__(self):
        if self.n_nodes < 3:
            raise ValueError("need N >= 3")
        if self.replications < 1:
            raise ValueError("need at least 1 replication")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0,1)")


@dataclass(frozen=True)
class McSummary:
    median_bias: float
    robust_sd: float
    median_se: float
    coverage_iid: float
    coverage_fg: float
    mean_f_hat: float
    replications: int


def replication_rng(seed, rep):
    """Independent Philox stream for replication ``rep`` of run ``seed``."""
    key = np.array([seed, rep], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_ngp(design, n_nodes, rng):
    """Draw W_ij = A_i A_j + V_ij over all dyads.

    Attributes are -1 with probability pi, +1 otherwise; noise is standard
    normal via the inverse-CDF transform of the stream's uniforms (platform
    reproducibility over speed).
    """
    attrs = np.where(rng.random(n_nodes) < design.pi, -1.0, 1.0)
    n = n_nodes * (n_nodes - 1) // 2
    # random() can return exactly 0.0, whose normal quantile is -inf
    u = np.maximum(rng.random(n), np.finfo(np.float64).tiny)
    noise = ndtri(u)
    i_idx, j_idx = _backend.triu_indices(n_nodes)
    weights = attrs[i_idx] * attrs[j_idx] + noise
    return DyadicSample(n_nodes, weights)


def _run_one(config, rep):
    rng = replication_rng(config.seed, rep)
    sample = sample_ngp(config.design, config.n_nodes, rng)
    result = fit(sample, config.design.w, config.h, config.kernel, config.alpha)
    return result.f_hat, result.se, result.se_iid


def default_workers():
    env = os.environ.get("DYADKDE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_replications(config, workers=None):
    """Per-replication (f_hat, se, se_iid) arrays, in replication order."""
    reps = config.replications
    f_hat = np.empty(reps)
    se = np.empty(reps)
    se_iid = np.empty(reps)
    workers = workers or default_workers()
    if workers == 1:
        results = map(lambda r: _run_one(config, r), range(reps))
        for r, row in enumerate(results):
            f_hat[r], se[r], se_iid[r] = row
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for r, row in enumerate(pool.map(
                lambda r: _run_one(config, r), range(reps)
            )):
                f_hat[r], se[r], se_iid[r] = row
    return f_hat, se, se_iid


def quantile(values, p):
    """Linear-interpolation empirical quantile on the sorted sample."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise EmptyInput("quantile of an empty sequence")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0,1]")
    v = np.sort(values)
    x = p * (v.size - 1)
    lo = int(np.floor(x))
    if lo == v.size - 1:
        return float(v[lo])
    frac = x - lo
    return float(v[lo] + frac * (v[lo + 1] - v[lo]))


def summarize(config, f_hat, se, se_iid):
    f_true = true_density(config.design)
    z = normal_quantile(1.0 - config.alpha / 2.0)
    hit_fg = np.abs(f_hat - f_true) <= z * se
    hit_iid = np.abs(f_hat - f_true) <= z * se_iid
    return McSummary(
        median_bias=quantile(f_hat, 0.5) - f_true,
        robust_sd=(quantile(f_hat, 0.95) - quantile(f_hat, 0.05)) / (2 * 1.645),
        median_se=quantile(se, 0.5),
        coverage_iid=float(np.mean(hit_iid)),
        coverage_fg=float(np.mean(hit_fg)),
        mean_f_hat=float(np.mean(f_hat)),
        replications=config.replications,
    )


def run_monte_carlo(config, workers=None):
    """Run all replications and aggregate into an McSummary.

    Deterministic given config.seed, independent of worker count.
    """
    f_hat, se, se_iid = run_replications(config, workers=workers)
    return summarize(config, f_hat, se, se_iid)
