"""Half-axis parabolic solver with discrete transparent boundary conditions."""

from ._core import (
    KernelParams,
    TailConstants,
    certify_dissipativity,
    derive_params,
    error_table,
    iterated_erfc,
    kernel,
    run_config,
    run_example,
    u1,
    u2,
)

__all__ = [
    "KernelParams",
    "TailConstants",
    "certify_dissipativity",
    "derive_params",
    "error_table",
    "iterated_erfc",
    "kernel",
    "run_config",
    "run_example",
    "u1",
    "u2",
]
