"""Kernel density estimation for undirected dyadic (weighted-network) data.

Estimates the marginal density of dyad weights W_ij, with variance
estimation that is robust to the dependence between dyads sharing a node,
plus an analytic oracle and a seeded Monte Carlo harness for the
two-point-attribute benchmark design.

Hot loops run in a compiled extension when available and fall back to a
NumPy implementation otherwise; see ``dyadkde.backend_name()``.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .density import (
    DensityFit,
    conditional_density_at_node,
    estimate_density,
    estimate_density_grid,
    fit,
)
from .kernels import KernelSpec, epanechnikov, gaussian, scaled_eval, simpson_integral
from .oracle import (
    DesignQuantities,
    NgpDesign,
    backsolved_bias_magnitude,
    density_second_derivative,
    mse_optimal_bandwidth,
    normal_pdf,
    design_summary,
    true_bias_coefficient,
    true_conditional_density,
    true_density,
    true_omega1,
    true_omega2,
)
from .sample import (
    DyadicSample,
    dyad_mean,
    from_edge_list,
    read_edge_list_csv,
    write_edge_list_csv,
)
from .simulate import (
    McSummary,
    SimConfig,
    quantile,
    replication_rng,
    run_monte_carlo,
    run_replications,
    sample_ngp,
    summarize,
)
from .variance import (
    VarianceComponents,
    fg_double_sum,
    omega1_hat_fast,
    omega1_hat_naive,
    omega1_hat_triples,
    omega2_hat,
    omega2_tilde,
    sigma2_hat,
)

__all__ = [
    "DensityFit",
    "DesignQuantities",
    "DyadicSample",
    "KernelSpec",
    "McSummary",
    "NgpDesign",
    "SimConfig",
    "VarianceComponents",
    "backend_name",
    "conditional_density_at_node",
    "dyad_mean",
    "epanechnikov",
    "estimate_density",
    "estimate_density_grid",
    "fg_double_sum",
    "fit",
    "from_edge_list",
    "gaussian",
    "mse_optimal_bandwidth",
    "omega1_hat_fast",
    "omega1_hat_naive",
    "omega1_hat_triples",
    "omega2_hat",
    "omega2_tilde",
    "quantile",
    "read_edge_list_csv",
    "replication_rng",
    "run_monte_carlo",
    "run_replications",
    "sample_ngp",
    "summarize",
    "scaled_eval",
    "simpson_integral",
    "sigma2_hat",
    "backsolved_bias_magnitude",
    "density_second_derivative",
    "normal_pdf",
    "design_summary",
    "true_bias_coefficient",
    "true_conditional_density",
    "true_density",
    "true_omega1",
    "true_omega2",
    "write_edge_list_csv",
]
