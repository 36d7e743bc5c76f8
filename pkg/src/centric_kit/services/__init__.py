"""Numerical services for centric-kit.

This package contains the algorithms behind every command:
- k-means cost, Lloyd's algorithm and the exhaustive oracle
- Centric, Gamma++ and angular transforms plus the Gamma-transformation check
- h(lambda) analysis and oracle preservation checks
- Synthetic data generation and subset sampling
- The Gamma vs Gamma++ experiment and SVG plotting
"""

from .kmeans import cost, cost_pairwise, lloyd, kmeans_ideal, clustering_error
from .transforms import (
    centric_set_transform,
    gamma_star,
    gamma_plus_plus,
    is_kleinberg_gamma_transform,
    distance_matrix,
    angular_transform,
    apply_transform,
    apply_pipeline,
)
from .analysis import (
    h_lambda,
    h_decompose,
    verify_theorem3,
    verify_centric_consistency,
    verify_lambda0_collapse,
    run_random_suite,
)
from .datagen import two_squares_3d, gaussian_blobs, sample_subset, generate
from .experiment import run_experiment, default_experiment_config
from .plotting import plot_dataset

__all__ = [
    "cost",
    "cost_pairwise",
    "lloyd",
    "kmeans_ideal",
    "clustering_error",
    "centric_set_transform",
    "gamma_star",
    "gamma_plus_plus",
    "is_kleinberg_gamma_transform",
    "distance_matrix",
    "angular_transform",
    "apply_transform",
    "apply_pipeline",
    "h_lambda",
    "h_decompose",
    "verify_theorem3",
    "verify_centric_consistency",
    "verify_lambda0_collapse",
    "run_random_suite",
    "two_squares_3d",
    "gaussian_blobs",
    "sample_subset",
    "generate",
    "run_experiment",
    "default_experiment_config",
    "plot_dataset",
]
