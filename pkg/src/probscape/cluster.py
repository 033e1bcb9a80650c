"""Clustering algorithms and the silhouette-driven grid search.

K-Means, Gaussian mixtures and BIRCH are implemented here directly so
the search can inspect their internals (restart inertias, EM
log-likelihood traces, CF-tree fallbacks); agglomerative clustering is
backed by scipy's linkage. All algorithms are deterministic for a fixed
seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage as scipy_linkage
from scipy.linalg import solve_triangular
from scipy.special import logsumexp

from .metrics import silhouette as silhouette_score

BIRCH_BRANCHING_FACTOR = 50

LINKAGES = ("ward", "average", "complete")
COVARIANCES = ("full", "tied", "diag")
ALGORITHMS = ("agglomerative", "birch", "gmm", "kmeans")


@dataclass(frozen=True)
class ClusteringConfig:
    algorithm: str
    k: int
    params: tuple = ()        # sorted (name, value) pairs
    seed: int = 42

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        valid = {"kmeans": {"n_init"}, "agglomerative": {"linkage"},
                 "gmm": {"covariance"}, "birch": {"threshold"}}[self.algorithm]
        bad = [name for name, _ in self.params if name not in valid]
        if bad:
            raise ValueError(f"invalid params {bad} for {self.algorithm}")

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def canonical(self) -> str:
        inner = ",".join(f"{n}={v}" for n, v in sorted(self.params))
        return f"{self.algorithm}(k={self.k},{inner})" if inner else \
            f"{self.algorithm}(k={self.k})"


def make_config(algorithm: str, k: int, seed: int = 42, **params) -> ClusteringConfig:
    return ClusteringConfig(algorithm=algorithm, k=int(k),
                            params=tuple(sorted(params.items())), seed=seed)


@dataclass
class ClusterAssignment:
    config: ClusteringConfig
    representation: str
    labels: np.ndarray
    silhouette: float | None = None
    extras: dict = field(default_factory=dict)

    @property
    def n_effective_clusters(self) -> int:
        return len(np.unique(self.labels))


# ---------------------------------------------------------------------------
# K-Means.

def _kmeanspp_centers(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[rng.integers(n)]
    d2 = np.sum((x - centers[0]) ** 2, axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total == 0.0:
            centers[c] = x[rng.integers(n)]
            continue
        centers[c] = x[rng.choice(n, p=d2 / total)]
        d2 = np.minimum(d2, np.sum((x - centers[c]) ** 2, axis=1))
    return centers


def _lloyd(x: np.ndarray, centers: np.ndarray, max_iter: int = 300):
    labels = None
    for _ in range(max_iter):
        d2 = (np.sum(x ** 2, axis=1)[:, None]
              + np.sum(centers ** 2, axis=1)[None, :] - 2.0 * x @ centers.T)
        new_labels = np.argmin(d2, axis=1)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for j in range(centers.shape[0]):
            members = labels == j
            if members.any():
                centers[j] = x[members].mean(axis=0)
            else:
                # reseed an empty cluster at the worst-fit point
                centers[j] = x[np.argmax(np.min(d2, axis=1))]
    inertia = float(np.sum((x - centers[labels]) ** 2))
    return labels, centers, inertia


def kmeans(x, k: int, n_init: int = 10, seed: int = 42) -> ClusterAssignment:
    """Best of n_init k-means++/Lloyd restarts by within-cluster SSE."""
    x = np.asarray(x, dtype=float)
    if k > x.shape[0]:
        raise ValueError(f"k={k} exceeds n={x.shape[0]}")
    best = None
    inertias = []
    for restart in range(n_init):
        rng = np.random.default_rng([seed, restart])
        centers = _kmeanspp_centers(x, k, rng)
        labels, centers, inertia = _lloyd(x, centers)
        inertias.append(inertia)
        if best is None or inertia < best[1]:
            best = (labels, inertia)
    config = make_config("kmeans", k, seed=seed, n_init=n_init)
    return ClusterAssignment(config=config, representation="", labels=best[0],
                             extras={"inertia": best[1],
                                     "restart_inertias": inertias})


# ---------------------------------------------------------------------------
# Agglomerative.

def agglomerative(x, k: int, linkage: str = "ward") -> ClusterAssignment:
    """Bottom-up merging (Lance-Williams updates via scipy), cut at k."""
    x = np.asarray(x, dtype=float)
    if linkage not in LINKAGES:
        raise ValueError(f"linkage must be one of {LINKAGES}")
    if k > x.shape[0]:
        raise ValueError(f"k={k} exceeds n={x.shape[0]}")
    merges = scipy_linkage(x, method=linkage)
    raw = fcluster(merges, t=k, criterion="maxclust")
    # normalize to 0..k-1 in order of first appearance
    _, labels = np.unique(raw, return_inverse=True)
    config = make_config("agglomerative", max(k, 2), linkage=linkage)
    assignment = ClusterAssignment(config=config, representation="",
                                   labels=labels, extras={"merges": merges})
    return assignment


# ---------------------------------------------------------------------------
# Gaussian mixture via EM.

def _estimate_gaussians(x, resp, covariance, floor=1e-6):
    nk = resp.sum(axis=0) + 1e-300
    means = (resp.T @ x) / nk[:, None]
    k, d = means.shape
    if covariance == "diag":
        avg_x2 = (resp.T @ (x ** 2)) / nk[:, None]
        covs = avg_x2 - means ** 2 + floor
    else:
        covs = np.empty((k, d, d))
        for j in range(k):
            diff = x - means[j]
            covs[j] = (resp[:, j][:, None] * diff).T @ diff / nk[j]
            covs[j][np.diag_indices(d)] += floor
        if covariance == "tied":
            covs = np.broadcast_to(
                np.einsum("k,kij->ij", nk / nk.sum(), covs), (k, d, d)).copy()
    weights = nk / nk.sum()
    return weights, means, covs


def _log_prob(x, weights, means, covs, covariance):
    n, d = x.shape
    k = means.shape[0]
    out = np.empty((n, k))
    if covariance == "diag":
        for j in range(k):
            diff = x - means[j]
            out[:, j] = -0.5 * (d * np.log(2 * np.pi)
                                + np.sum(np.log(covs[j]))
                                + np.sum(diff ** 2 / covs[j], axis=1))
    else:
        for j in range(k):
            chol = np.linalg.cholesky(covs[j])
            diff = solve_triangular(chol, (x - means[j]).T, lower=True)
            out[:, j] = -0.5 * (d * np.log(2 * np.pi)
                                + 2.0 * np.sum(np.log(np.diag(chol)))
                                + np.sum(diff ** 2, axis=0))
    return out + np.log(weights)


def gmm(x, k: int, covariance: str = "full", seed: int = 42,
        tol: float = 1e-4, max_iter: int = 200) -> ClusterAssignment:
    """EM-fitted Gaussian mixture; labels by maximum responsibility."""
    x = np.asarray(x, dtype=float)
    if covariance not in COVARIANCES:
        raise ValueError(f"covariance must be one of {COVARIANCES}")
    if k > x.shape[0]:
        raise ValueError(f"k={k} exceeds n={x.shape[0]}")
    last_err = None
    for attempt in range(3):
        try:
            labels, ll_history = _gmm_once(x, k, covariance, seed + attempt,
                                           tol, max_iter)
            config = make_config("gmm", k, seed=seed, covariance=covariance)
            return ClusterAssignment(config=config, representation="",
                                     labels=labels,
                                     extras={"log_likelihoods": ll_history,
                                             "attempts": attempt + 1})
        except np.linalg.LinAlgError as err:
            last_err = err
    raise RuntimeError(f"GMM failed after 3 restarts: {last_err}")


def _gmm_once(x, k, covariance, seed, tol, max_iter):
    n = x.shape[0]
    init = kmeans(x, k, n_init=1, seed=seed)
    resp = np.zeros((n, k))
    resp[np.arange(n), init.labels] = 1.0
    ll_history = []
    prev_ll = -np.inf
    for _ in range(max_iter):
        weights, means, covs = _estimate_gaussians(x, resp, covariance)
        log_p = _log_prob(x, weights, means, covs, covariance)
        norm = logsumexp(log_p, axis=1)
        ll = float(norm.mean())
        ll_history.append(ll)
        resp = np.exp(log_p - norm[:, None])
        if abs(ll - prev_ll) < tol:
            break
        prev_ll = ll
    return np.argmax(resp, axis=1), ll_history


# ---------------------------------------------------------------------------
# BIRCH.

class _CFEntry:
    __slots__ = ("count", "ls", "ss", "child")

    def __init__(self, point=None, child=None):
        if point is not None:
            self.count = 1
            self.ls = point.copy()
            self.ss = float(point @ point)
        else:
            self.count = 0
            self.ls = None
            self.ss = 0.0
        self.child = child
        if child is not None:
            for e in child.entries:
                self.absorb(e)

    @property
    def centroid(self):
        return self.ls / self.count

    def absorb(self, other: "_CFEntry"):
        if self.ls is None:
            self.count, self.ls, self.ss = other.count, other.ls.copy(), other.ss
        else:
            self.count += other.count
            self.ls = self.ls + other.ls
            self.ss += other.ss

    def merged_radius(self, other: "_CFEntry") -> float:
        count = self.count + other.count
        ls = self.ls + other.ls
        ss = self.ss + other.ss
        var = ss / count - float(ls @ ls) / count ** 2
        return float(np.sqrt(max(var, 0.0)))


class _CFNode:
    __slots__ = ("entries", "is_leaf")

    def __init__(self, is_leaf: bool):
        self.entries: list[_CFEntry] = []
        self.is_leaf = is_leaf


def _closest_entry(node: _CFNode, point: np.ndarray) -> int:
    d = [float(np.sum((e.centroid - point) ** 2)) for e in node.entries]
    return int(np.argmin(d))


def _split_node(node: _CFNode) -> tuple[_CFNode, _CFNode]:
    cents = np.array([e.centroid for e in node.entries])
    d = np.sum((cents[:, None, :] - cents[None, :, :]) ** 2, axis=2)
    i, j = np.unravel_index(np.argmax(d), d.shape)
    left, right = _CFNode(node.is_leaf), _CFNode(node.is_leaf)
    for idx, e in enumerate(node.entries):
        (left if d[idx, i] <= d[idx, j] else right).entries.append(e)
    return left, right


def _insert(node: _CFNode, entry: _CFEntry, threshold: float):
    """Insert a single-point entry; returns a split pair or None."""
    if node.is_leaf:
        if node.entries:
            idx = _closest_entry(node, entry.centroid)
            if node.entries[idx].merged_radius(entry) <= threshold:
                node.entries[idx].absorb(entry)
                return None
        node.entries.append(entry)
    else:
        idx = _closest_entry(node, entry.centroid)
        picked = node.entries[idx]
        split = _insert(picked.child, entry, threshold)
        if split is None:
            picked.absorb(entry)
        else:
            node.entries.pop(idx)
            node.entries.append(_CFEntry(child=split[0]))
            node.entries.append(_CFEntry(child=split[1]))
    if len(node.entries) > BIRCH_BRANCHING_FACTOR:
        return _split_node(node)
    return None


def _leaf_entries(node: _CFNode) -> list[_CFEntry]:
    if node.is_leaf:
        return list(node.entries)
    out = []
    for e in node.entries:
        out.extend(_leaf_entries(e.child))
    return out


def birch(x, k: int, threshold: float = 0.5) -> ClusterAssignment:
    """CF-tree condensation plus agglomerative refinement of leaf centroids."""
    x = np.asarray(x, dtype=float)
    if k > x.shape[0]:
        raise ValueError(f"k={k} exceeds n={x.shape[0]}")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    root = _CFNode(is_leaf=True)
    for point in x:
        split = _insert(root, _CFEntry(point=point), threshold)
        if split is not None:
            new_root = _CFNode(is_leaf=False)
            new_root.entries = [_CFEntry(child=split[0]), _CFEntry(child=split[1])]
            root = new_root

    leaves = _leaf_entries(root)
    centroids = np.array([e.centroid for e in leaves])
    counts = np.array([e.count for e in leaves], dtype=float)
    k_effective = min(k, len(leaves))
    if k_effective < 2:
        group = np.zeros(len(leaves), dtype=int)
    else:
        merges = scipy_linkage(centroids, method="ward")
        group = np.unique(fcluster(merges, t=k_effective, criterion="maxclust"),
                          return_inverse=True)[1]
    refined = np.array([
        np.average(centroids[group == g], axis=0, weights=counts[group == g])
        for g in range(group.max() + 1)])
    d2 = (np.sum(x ** 2, axis=1)[:, None]
          + np.sum(refined ** 2, axis=1)[None, :] - 2.0 * x @ refined.T)
    labels = np.argmin(d2, axis=1)
    config = make_config("birch", max(k, 2), threshold=threshold)
    extras = {"n_leaves": len(leaves)}
    if k_effective < k:
        extras["k_fallback"] = k_effective
    return ClusterAssignment(config=config, representation="", labels=labels,
                             extras=extras)


# ---------------------------------------------------------------------------
# Grid search.

_RUNNERS = {
    "kmeans": lambda x, c: kmeans(x, c.k, seed=c.seed, **c.param_dict),
    "agglomerative": lambda x, c: agglomerative(x, c.k, **c.param_dict),
    "gmm": lambda x, c: gmm(x, c.k, seed=c.seed, **c.param_dict),
    "birch": lambda x, c: birch(x, c.k, **c.param_dict),
}


def run_config(x, config: ClusteringConfig, representation: str = "") -> ClusterAssignment:
    assignment = _RUNNERS[config.algorithm](x, config)
    assignment = ClusterAssignment(config=config, representation=representation,
                                   labels=assignment.labels,
                                   extras=assignment.extras)
    assignment.silhouette = silhouette_score(x, assignment.labels)
    return assignment


def default_grid(k_values, algorithms=ALGORITHMS, seed: int = 42) -> list[ClusteringConfig]:
    """The hyperparameter grid: every k crossed with algorithm settings."""
    grid = []
    for algo in sorted(algorithms):
        for k in k_values:
            if algo == "kmeans":
                grid += [make_config("kmeans", k, seed=seed, n_init=n)
                         for n in (10, 20)]
            elif algo == "agglomerative":
                grid += [make_config("agglomerative", k, linkage=lk)
                         for lk in LINKAGES]
            elif algo == "gmm":
                grid += [make_config("gmm", k, seed=seed, covariance=cv)
                         for cv in COVARIANCES]
            elif algo == "birch":
                grid += [make_config("birch", k, threshold=t)
                         for t in (0.5, 1.0)]
    return grid


def grid_search(x, grid: list[ClusteringConfig],
                representation: str = "") -> tuple[ClusterAssignment, list[dict]]:
    """Evaluate every config; best by silhouette, ties to smaller k then name.

    Failures are recorded and skipped; the search only errors if every
    cell fails.
    """
    if not grid:
        raise ValueError("grid must be non-empty")
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    scored = []
    best = None
    best_key = None
    for config in grid:
        row = {"representation": representation, "algorithm": config.algorithm,
               "params": config.canonical(), "k": config.k,
               "silhouette": "", "n_effective_clusters": "",
               "wall_time_ms": "", "status": ""}
        if config.k >= n:
            row["status"] = f"failed: k={config.k} must be < n={n}"
            scored.append(row)
            continue
        t0 = time.perf_counter()
        try:
            assignment = run_config(x, config, representation)
        except Exception as err:  # noqa: BLE001 - isolated grid cells may fail
            row["status"] = f"failed: {err}"
            scored.append(row)
            continue
        row["wall_time_ms"] = round(1000 * (time.perf_counter() - t0), 3)
        row["silhouette"] = assignment.silhouette
        row["n_effective_clusters"] = assignment.n_effective_clusters
        row["status"] = "ok"
        scored.append(row)
        key = (-assignment.silhouette, config.k, config.algorithm,
               config.canonical())
        if best is None or key < best_key:
            best, best_key = assignment, key
    if best is None:
        raise RuntimeError("every grid configuration failed")
    return best, scored
