"""Exact computations on tree complexes, CE and Hochschild homology, and curvature models."""

from ._mwb import (
    Tree,
    ValidationError,
    certify_trace,
    ce_homology,
    compose,
    enumerate_trees,
    hochschild_homology,
    l_homology,
    l_square_zero,
    run_cli,
    verify_one_dimensional,
)

__all__ = [
    "Tree",
    "ValidationError",
    "certify_trace",
    "ce_homology",
    "compose",
    "enumerate_trees",
    "hochschild_homology",
    "l_homology",
    "l_square_zero",
    "run_cli",
    "verify_one_dimensional",
]
