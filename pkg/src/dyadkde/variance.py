"""Dyadic-dependence-robust variance components.

sigma2_hat combines a monadic-style term omega2_hat/(n h) with the
node-level covariance term 2(N-2)/n * omega1_hat. The latter is computed
either by an explicit O(N^3) triple loop (oracle) or by an O(N^2) row-sum
reduction (default path). fg_double_sum is the O(n^2) double-sum form with
a share-a-node indicator; it equals sigma2_hat identically and is kept as
a cross-check, not a production path.
"""
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import NonPositiveBandwidth, TooFewNodes
from .sample import flat_index


@dataclass(frozen=True)
class VarianceComponents:
    omega2_tilde: float
    omega2_hat: float
    omega1_hat: float
    sigma2_hat: float
    fg_sigma2: float | None = None


def _kvals(sample, w, h, kernel):
    if h <= 0:
        raise NonPositiveBandwidth(f"bandwidth must be positive, got {h}")
    return _backend.kernel_values(sample.weights, w, h, kernel)


def omega2_tilde(sample, w, h, kernel):
    """(h/n) sum_{i<j} K_ij^2 (uncentered second-moment form)."""
    kvals = _kvals(sample, w, h, kernel)
    return float(h * np.mean(kvals * kvals))


def omega2_hat(sample, w, h, kernel):
    """h * (1/n) sum_{i<j} (K_ij - f_hat)^2 (centered form).

    Algebraically equal to omega2_tilde - h * f_hat^2; the centered form
    is used so the result is nonnegative in floating point.
    """
    kvals = _kvals(sample, w, h, kernel)
    c = kvals - np.mean(kvals)
    return float(h * np.mean(c * c))


def omega1_hat_naive(sample, w, h, kernel):
    """Ordered triple-loop form: mean over i != j != k of
    (K_ij - f_hat)(K_ik - f_hat). O(N^3); serves as the oracle for the
    fast reduction."""
    n_nodes = _require_triples(sample)
    kvals = _kvals(sample, w, h, kernel)
    f_hat = float(np.mean(kvals))

    def k(a, b):
        if a > b:
            a, b = b, a
        return kvals[flat_index(a, b, n_nodes)]

    total = 0.0
    for i in range(n_nodes):
        for j in range(n_nodes):
            if j == i:
                continue
            for m in range(n_nodes):
                if m == i or m == j:
                    continue
                total += (k(i, j) - f_hat) * (k(i, m) - f_hat)
    return total / (n_nodes * (n_nodes - 1) * (n_nodes - 2))


def omega1_hat_triples(sample, w, h, kernel):
    """Unordered-triple form: C(N,3)^{-1} sum_{i<j<k} S_ijk - f_hat^2 with
    S_ijk = (K_ij K_ik + K_ij K_jk + K_ik K_jk)/3. Equals the ordered form."""
    n_nodes = _require_triples(sample)
    kvals = _kvals(sample, w, h, kernel)
    f_hat = float(np.mean(kvals))

    def k(a, b):
        if a > b:
            a, b = b, a
        return kvals[flat_index(a, b, n_nodes)]

    total = 0.0
    count = 0
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            for m in range(j + 1, n_nodes):
                s = (
                    k(i, j) * k(i, m) + k(i, j) * k(j, m) + k(i, m) * k(j, m)
                ) / 3.0
                total += s
                count += 1
    return total / count - f_hat * f_hat


def omega1_hat_fast(sample, w, h, kernel):
    """Row-sum reduction of the triple sum; O(N^2), equals the naive form.

    With C_ij = K_ij - f_hat, R_i = sum_{j != i} C_ij and
    Q_i = sum_{j != i} C_ij^2, the ordered triple sum collapses to
    sum_i (R_i^2 - Q_i).
    """
    n_nodes = _require_triples(sample)
    kvals = _kvals(sample, w, h, kernel)
    f_hat = float(np.mean(kvals))
    total = _backend.row_moments(kvals, n_nodes, f_hat)
    return total / (n_nodes * (n_nodes - 1) * (n_nodes - 2))


def components_from_kvals(kvals, n_nodes, h):
    """Variance components from precomputed K_ij values (single pass)."""
    n = n_nodes * (n_nodes - 1) // 2
    f_hat = float(np.mean(kvals))
    om2_tilde = float(h * np.mean(kvals * kvals))
    c = kvals - f_hat
    om2 = float(h * np.mean(c * c))
    om1 = _backend.row_moments(kvals, n_nodes, f_hat) / (
        n_nodes * (n_nodes - 1) * (n_nodes - 2)
    )
    s2 = om2 / (n * h) + 2.0 * (n_nodes - 2) / n * om1
    return VarianceComponents(
        omega2_tilde=om2_tilde,
        omega2_hat=om2,
        omega1_hat=om1,
        sigma2_hat=s2,
    )


def sigma2_hat(sample, w, h, kernel, include_fg=False):
    """omega2_hat/(n h) + 2(N-2)/n * omega1_hat, with all components.

    ``include_fg`` also evaluates the O(n^2) double-sum form for
    cross-checking.
    """
    _require_triples(sample)
    kvals = _kvals(sample, w, h, kernel)
    comp = components_from_kvals(kvals, sample.n_nodes, h)
    if include_fg:
        comp = VarianceComponents(
            omega2_tilde=comp.omega2_tilde,
            omega2_hat=comp.omega2_hat,
            omega1_hat=comp.omega1_hat,
            sigma2_hat=comp.sigma2_hat,
            fg_sigma2=fg_double_sum(sample, w, h, kernel),
        )
    return comp


def fg_double_sum(sample, w, h, kernel):
    """(1/n^2) sum_{i<j} sum_{k<l} d * C_ij C_kl with d = 1 iff the dyads
    {i,j} and {k,l} share at least one node (identical dyads included).

    O(n^2); intended as a test oracle only.
    """
    n_nodes = _require_triples(sample)
    kvals = _kvals(sample, w, h, kernel)
    f_hat = float(np.mean(kvals))
    c = kvals - f_hat
    pairs = list(zip(*_backend.triu_indices(n_nodes)))
    n = len(pairs)
    total = 0.0
    for a in range(n):
        ia, ja = pairs[a]
        ca = c[a]
        for b in range(n):
            ib, jb = pairs[b]
            if ia == ib or ia == jb or ja == ib or ja == jb:
                total += ca * c[b]
    return total / (n * n)


def _require_triples(sample):
    if sample.n_nodes < 3:
        raise TooFewNodes("variance estimation needs at least 3 nodes")
    return sample.n_nodes
