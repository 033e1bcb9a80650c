"""Affine BBOB suite generation, landscape features, and clustering analysis."""

from . import analysis, bbob, cluster, doe, ela, mabbob, metrics, representations

__all__ = ["analysis", "bbob", "cluster", "doe", "ela", "mabbob", "metrics",
           "representations"]

__version__ = "0.1.0"
