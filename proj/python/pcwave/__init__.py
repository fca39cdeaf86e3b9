"""Quantum Langevin engine for two coupled phase-conjugated optical modes.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    ConfigError,
    NumericError,
    eig2,
    exp_moment_integral,
    expm2,
    propagate_constant_coupling,
    run_biphoton,
    run_spectra,
    sqrtm2,
    validate,
)

__all__ = [
    "ConfigError",
    "NumericError",
    "eig2",
    "exp_moment_integral",
    "expm2",
    "propagate_constant_coupling",
    "run_biphoton",
    "run_spectra",
    "sqrtm2",
    "validate",
]
