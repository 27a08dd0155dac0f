"""Mod-p computations for equivariant line bundles on the Drinfeld half-plane."""

from ._drinfeld import (
    CRITERION_COUNT,
    ConfigError,
    DrinfeldError,
    PreconditionError,
    ResourceError,
    WindowError,
    bundle_info,
    cohomology,
    enumerate_and_match,
    hecke_recurrence,
    jordan_holder_ok,
    lie_map_scalars,
    order_table,
    orders_match_closed_form,
    phi_tilde_lambda,
    run_acceptance,
    supersingular_quotient_dim,
    vanishing_scan,
)

__all__ = [
    "CRITERION_COUNT",
    "ConfigError",
    "DrinfeldError",
    "PreconditionError",
    "ResourceError",
    "WindowError",
    "bundle_info",
    "cohomology",
    "enumerate_and_match",
    "hecke_recurrence",
    "jordan_holder_ok",
    "lie_map_scalars",
    "order_table",
    "orders_match_closed_form",
    "phi_tilde_lambda",
    "run_acceptance",
    "supersingular_quotient_dim",
    "vanishing_scan",
]
