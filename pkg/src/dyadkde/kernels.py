"""Kernel functions and their analytic moment constants."""
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import NonPositiveBandwidth

_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Integration limit standing in for the Gaussian's unbounded support when
# quadrature needs a finite interval.
GAUSSIAN_EFFECTIVE_SUPPORT = 8.0


@dataclass(frozen=True)
class KernelSpec:
    """A kernel K together with the constants entering the bias/variance
    formulas: kappa2 = int u^2 K, r2 = int K^2, sup K, and the support
    radius (inf when unbounded)."""

    name: str
    evaluate: Callable[[float], float] = field(repr=False)
    kappa2: float
    r2: float
    bound: float
    support_radius: float

    @property
    def effective_support(self):
        """Finite interval half-width for numerical quadrature."""
        if math.isinf(self.support_radius):
            return GAUSSIAN_EFFECTIVE_SUPPORT
        return self.support_radius


def _epanechnikov_eval(u):
    return 0.75 * (1.0 - u * u) if abs(u) <= 1.0 else 0.0


def _gaussian_eval(u):
    return math.exp(-0.5 * u * u) / _SQRT_2PI


def epanechnikov():
    """K(u) = 0.75(1 - u^2) on [-1, 1]; satisfies compact support."""
    return KernelSpec(
        name="epanechnikov",
        evaluate=_epanechnikov_eval,
        kappa2=0.2,
        r2=0.6,
        bound=0.75,
        support_radius=1.0,
    )


def gaussian():
    """Standard normal kernel. Unbounded support: it violates the
    compact-support assumption of the underlying theory and is admitted
    for replication purposes; quadrature truncates at |u| <= 8."""
    return KernelSpec(
        name="gaussian",
        evaluate=_gaussian_eval,
        kappa2=1.0,
        r2=1.0 / (2.0 * math.sqrt(math.pi)),
        bound=1.0 / _SQRT_2PI,
        support_radius=math.inf,
    )


_BY_NAME = {"epanechnikov": epanechnikov, "gaussian": gaussian}


def by_name(name):
    try:
        return _BY_NAME[name]()
    except KeyError:
        raise ValueError(
            f"unknown kernel {name!r}; choose from {sorted(_BY_NAME)}"
        ) from None


def scaled_eval(kernel, w, s, h):
    """(1/h) K((w - s)/h)."""
    if h <= 0:
        raise NonPositiveBandwidth(f"bandwidth must be positive, got {h}")
    return kernel.evaluate((w - s) / h) / h


def simpson_integral(func, lo, hi, panels=10_000):
    """Composite Simpson quadrature, used by the kernel contract checks."""
    if panels % 2:
        panels += 1
    step = (hi - lo) / panels
    total = func(lo) + func(hi)
    for k in range(1, panels):
        total += func(lo + k * step) * (4 if k % 2 else 2)
    return total * step / 3.0
