"""Exact spectral toolkit for the Bernoulli-Laplace two-urn chain."""

from ._core import (
    ModelParams,
    NeedsCanonicalizationError,
    NonConvergenceError,
    NotCanonicalizableError,
    canonicalize,
    cutoff_scan,
    delta_sq,
    distribution_at,
    eigenvector,
    kernel,
    mixing_bound,
    new_model,
    simulate,
    spectral_power,
    spectrum,
    stationary,
    tv_curve,
    verify,
)

__all__ = [
    "ModelParams",
    "NeedsCanonicalizationError",
    "NonConvergenceError",
    "NotCanonicalizableError",
    "canonicalize",
    "cutoff_scan",
    "delta_sq",
    "distribution_at",
    "eigenvector",
    "kernel",
    "mixing_bound",
    "new_model",
    "simulate",
    "spectral_power",
    "spectrum",
    "stationary",
    "tv_curve",
    "verify",
]
