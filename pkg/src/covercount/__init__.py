"""Exact counts of genus-0 branched covers of the sphere, their generating
series, and brute-force cross-checks."""

from .closed_form import balanced_tree_prediction, g_alpha, h_alpha
from .partitions import Partition, Permutation, class_size, partitions_of

__all__ = [
    "Partition",
    "Permutation",
    "balanced_tree_prediction",
    "class_size",
    "g_alpha",
    "h_alpha",
    "partitions_of",
]
