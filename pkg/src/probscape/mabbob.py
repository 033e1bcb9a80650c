"""Affine recombinations of BBOB problem pairs and suite enumeration.

A blended problem multiplies the optimum-shifted values of two BBOB
instances in log space: the first operand is evaluated at x, the second
at x translated so both optima coincide at the first operand's optimum.
Both shifted values are floored at ``clamp_eps`` before the log, which
makes the blend finite everywhere and places its minimum (= clamp_eps)
at the first operand's optimum.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

import numpy as np

from . import bbob

DEFAULT_ALPHAS = (0.25, 0.5, 0.75)
DEFAULT_CLAMP_EPS = 1e-12


@lru_cache(maxsize=None)
def _cached_problem(class_id: int, instance_id: int, dim: int) -> bbob.BbobProblem:
    return bbob.make_problem(class_id, instance_id, dim)


class AffineProblem:
    """Blend of two BBOB instances with weight alpha on the first."""

    def __init__(self, first: bbob.BbobProblem, second: bbob.BbobProblem,
                 alpha: float, clamp_eps: float = DEFAULT_CLAMP_EPS,
                 _allow_test_values: bool = False):
        if first.dim != second.dim:
            raise ValueError("operands must share dim")
        if first.instance_id != second.instance_id:
            raise ValueError("operands must share the instance number")
        if not _allow_test_values:
            if first.class_id == second.class_id:
                raise ValueError("operands must come from distinct classes")
            if not 0.0 < alpha < 1.0:
                raise ValueError(f"alpha must be in (0, 1), got {alpha}")
        elif not 0.0 < alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {alpha}")
        if clamp_eps <= 0.0:
            raise ValueError("clamp_eps must be positive")
        self.first = first
        self.second = second
        self.alpha = float(alpha)
        self.clamp_eps = float(clamp_eps)
        self.dim = first.dim
        self.combo_key = (first.class_id, second.class_id)
        self.variant_key = (first.instance_id, self.alpha)

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.shape[0] != self.dim:
            raise ValueError(
                f"expected a vector of length {self.dim}, got shape {x.shape}")
        return float(self.evaluate_many(x[None, :])[0])

    def evaluate_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if xs.ndim != 2 or xs.shape[1] != self.dim:
            raise ValueError(
                f"expected an (n, {self.dim}) array, got shape {xs.shape}")
        o1 = self.first.x_opt
        o2 = self.second.x_opt
        v1 = self.first.evaluate_many(xs) - self.first.f_opt
        v2 = self.second.evaluate_many(xs - o1 + o2) - self.second.f_opt
        v1 = np.maximum(v1, self.clamp_eps)
        v2 = np.maximum(v2, self.clamp_eps)
        return np.exp(self.alpha * np.log(v1) + (1.0 - self.alpha) * np.log(v2))

    @property
    def x_opt(self) -> np.ndarray:
        """Location of the global minimum (the first operand's optimum)."""
        return self.first.x_opt

    def __repr__(self):
        return (f"AffineProblem({self.combo_key[0]}+{self.combo_key[1]}, "
                f"instance={self.first.instance_id}, alpha={self.alpha}, "
                f"dim={self.dim})")


def affine_evaluate(problem: AffineProblem, x) -> float:
    return problem.evaluate(x)


def enumerate_combos(classes) -> list[tuple[int, int]]:
    """All ordered pairs of distinct classes, lexicographic."""
    classes = sorted(set(int(c) for c in classes))
    if any(c < 1 or c > bbob.N_CLASSES for c in classes):
        raise ValueError(f"classes must be within 1..{bbob.N_CLASSES}")
    if len(classes) < 2:
        raise ValueError("need at least 2 distinct classes")
    return [(i, j) for i in classes for j in classes if i != j]


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 32-bit seed from the master seed and arbitrary key parts."""
    text = ":".join([str(master_seed)] + [repr(p) for p in parts])
    digest = hashlib.sha256(text.encode()).hexdigest()
    return int(digest[:8], 16)


def suite_records(classes, instances, alphas, dim: int,
                  master_seed: int = 42) -> list[dict]:
    """Suite manifest records, one per affine problem, in suite order.

    Ordering is lexicographic by (class_i, class_j, instance, alpha); the
    per-problem ``lhs_seed`` drives the sampling design downstream.
    """
    combos = enumerate_combos(classes)
    instances = sorted(set(int(m) for m in instances))
    if any(m < 1 for m in instances):
        raise ValueError("instances must be >= 1")
    alphas = sorted(float(a) for a in alphas)
    if any(not 0.0 < a < 1.0 for a in alphas):
        raise ValueError("suite alphas must be in (0, 1)")
    records = []
    for combo_index, (ci, cj) in enumerate(combos):
        for m in instances:
            for a in alphas:
                records.append({
                    "combo_index": combo_index,
                    "class_i": ci,
                    "class_j": cj,
                    "instance": m,
                    "alpha": a,
                    "dim": int(dim),
                    "lhs_seed": derive_seed(master_seed, combo_index, m, a),
                })
    return records


def problem_from_record(record: dict) -> AffineProblem:
    """Instantiate the affine problem a manifest record describes."""
    first = _cached_problem(record["class_i"], record["instance"], record["dim"])
    second = _cached_problem(record["class_j"], record["instance"], record["dim"])
    return AffineProblem(first, second, record["alpha"])


def generate_suite(classes, instances, alphas, dim: int) -> list[AffineProblem]:
    """All affine problems for the given configuration, in suite order."""
    return [problem_from_record(r)
            for r in suite_records(classes, instances, alphas, dim)]
