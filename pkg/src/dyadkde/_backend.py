"""Backend selection: compiled extension if available, NumPy otherwise.

The environment variable ``DYADKDE_BACKEND`` forces a choice:
``compiled``, ``python`` or ``auto`` (the default).
"""
import math
import os
from functools import lru_cache

import numpy as np

try:
    from . import _speedups
except ImportError:  # pragma: no cover - depends on the build
    _speedups = None

_KIND = {"gaussian": 0, "epanechnikov": 1}

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@lru_cache(maxsize=8)
def triu_indices(n_nodes):
    """Cached (i, j) index arrays for the upper triangle, row-major i<j."""
    return np.triu_indices(n_nodes, k=1)


def _kernel_values_numpy(weights, w, h, kind):
    u = (w - weights) / h
    if kind == 0:
        return np.exp(-0.5 * u * u) / (h * _SQRT_2PI)
    out = 0.75 * (1.0 - u * u) / h
    return np.where(np.abs(u) <= 1.0, out, 0.0)


def _row_moments_numpy(kvals, n_nodes, center):
    c = kvals - center
    i_idx, j_idx = triu_indices(n_nodes)
    r = np.bincount(i_idx, weights=c, minlength=n_nodes)
    r += np.bincount(j_idx, weights=c, minlength=n_nodes)
    c2 = c * c
    q = np.bincount(i_idx, weights=c2, minlength=n_nodes)
    q += np.bincount(j_idx, weights=c2, minlength=n_nodes)
    return float(np.sum(r * r - q))


def _choose():
    choice = os.environ.get("DYADKDE_BACKEND", "auto").lower()
    if choice not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown DYADKDE_BACKEND value: {choice!r}")
    if choice == "compiled" and _speedups is None:
        raise ImportError("compiled backend requested but extension not built")
    if choice == "python" or _speedups is None:
        return "python"
    return "compiled"


_BACKEND = _choose()


def backend_name():
    return _BACKEND


def kernel_values(weights, w, h, kernel):
    """(1/h)K((w - W_ij)/h) for every dyad, as a float64 array.

    Dispatches known kernels to the selected backend; arbitrary
    KernelSpec instances are evaluated elementwise in Python.
    """
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    kind = _KIND.get(kernel.name)
    if kind is None:
        ev = kernel.evaluate
        return np.fromiter(
            (ev((w - s) / h) / h for s in weights), dtype=np.float64,
            count=weights.shape[0],
        )
    if _BACKEND == "compiled":
        return _speedups.kernel_values(weights, w, h, kind)
    return _kernel_values_numpy(weights, w, h, kind)


def row_moments(kvals, n_nodes, center):
    """sum_i (R_i^2 - Q_i) of centered kernel values; see omega1_hat_fast."""
    kvals = np.ascontiguousarray(kvals, dtype=np.float64)
    if _BACKEND == "compiled":
        return _speedups.row_moments(kvals, n_nodes, center)
    return _row_moments_numpy(kvals, n_nodes, center)
