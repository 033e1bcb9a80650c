"""Latin Hypercube designs and design evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from . import bbob

DEFAULT_BOUNDS = (bbob.LOWER, bbob.UPPER)


@dataclass(frozen=True)
class DesignMatrix:
    points: np.ndarray            # (n_samples, dim), in search-space units
    bounds: tuple[float, float]
    seed: int
    problem_key: tuple | None = field(default=None)

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def lhs(n_samples: int, dim: int, bounds=DEFAULT_BOUNDS, seed: int = 0,
        midpoint: bool = False) -> DesignMatrix:
    """Latin Hypercube design: one point per stratum in every dimension.

    midpoint=True places points at stratum centers (deterministic layout),
    otherwise each point gets a uniform random offset within its stratum.
    """
    if n_samples < 1 or dim < 1:
        raise ValueError("n_samples and dim must be positive")
    low, high = float(bounds[0]), float(bounds[1])
    if not high > low:
        raise ValueError("bounds must satisfy high > low")
    sampler = qmc.LatinHypercube(d=dim, scramble=not midpoint,
                                 rng=np.random.default_rng(seed))
    unit = sampler.random(n_samples)
    points = low + (high - low) * unit
    return DesignMatrix(points=points, bounds=(low, high), seed=int(seed))


def evaluate_design(problem, design: DesignMatrix) -> np.ndarray:
    """Evaluate a problem on every design row; y[k] matches row k."""
    if design.dim != problem.dim:
        raise ValueError(
            f"design dim {design.dim} != problem dim {problem.dim}")
    return problem.evaluate_many(design.points)
