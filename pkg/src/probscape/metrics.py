"""Clustering evaluation measures: silhouette, H/C/V, cosine similarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class HcvScores:
    homogeneity: float
    completeness: float
    v_measure: float


def silhouette(x, labels, sample_cap: int | None = None, seed: int = 0) -> float:
    """Mean silhouette coefficient with Euclidean distance.

    Singleton-cluster points score 0. With ``sample_cap`` set and more
    points than the cap, the mean is taken over a seeded uniform
    subsample of points; each point is still scored against the cluster
    structure restricted to the subsample.
    """
    x = np.asarray(x, dtype=float)
    labels = np.asarray(labels)
    if len(labels) != x.shape[0]:
        raise ValueError("labels length must match the data")
    if sample_cap is not None and x.shape[0] > sample_cap:
        idx = np.random.default_rng(seed).choice(
            x.shape[0], size=sample_cap, replace=False)
        idx.sort()
        x, labels = x[idx], labels[idx]
    uniq, inv = np.unique(labels, return_inverse=True)
    k = len(uniq)
    if k < 2:
        raise ValueError("silhouette requires at least 2 distinct labels")
    n = x.shape[0]
    counts = np.bincount(inv, minlength=k)
    onehot = np.zeros((n, k))
    onehot[np.arange(n), inv] = 1.0

    scores = np.empty(n)
    sq = np.sum(x ** 2, axis=1)
    chunk = 1024
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        d2 = sq[start:stop, None] + sq[None, :] - 2.0 * (x[start:stop] @ x.T)
        d = np.sqrt(np.maximum(d2, 0.0))
        sums = d @ onehot  # (chunk, k) summed distance to each cluster
        own = inv[start:stop]
        own_count = counts[own]
        with np.errstate(invalid="ignore", divide="ignore"):
            a = sums[np.arange(stop - start), own] / np.maximum(own_count - 1, 1)
            mean_other = sums / counts
            mean_other[np.arange(stop - start), own] = np.inf
            b = mean_other.min(axis=1)
            s = (b - a) / np.maximum(a, b)
        s[own_count == 1] = 0.0
        scores[start:stop] = s
    return float(scores.mean())


def _entropy(counts: np.ndarray) -> float:
    p = counts[counts > 0] / counts.sum()
    return float(-np.sum(p * np.log(p)))


def hcv(labels_true, labels_pred) -> HcvScores:
    """Homogeneity, completeness and V-measure from the contingency table."""
    labels_true = np.asarray(labels_true)
    labels_pred = np.asarray(labels_pred)
    if labels_true.shape != labels_pred.shape or labels_true.ndim != 1:
        raise ValueError("label vectors must be 1-D and of equal length")
    if len(labels_true) == 0:
        raise ValueError("label vectors must be non-empty")
    _, ti = np.unique(labels_true, return_inverse=True)
    _, pi = np.unique(labels_pred, return_inverse=True)
    n_t, n_p = ti.max() + 1, pi.max() + 1
    table = np.zeros((n_t, n_p))
    np.add.at(table, (ti, pi), 1.0)
    n = table.sum()

    h_true = _entropy(table.sum(axis=1))
    h_pred = _entropy(table.sum(axis=0))
    # conditional entropies from the joint table
    joint = table[table > 0] / n
    h_joint = float(-np.sum(joint * np.log(joint)))
    h_true_given_pred = h_joint - h_pred
    h_pred_given_true = h_joint - h_true

    h = 1.0 if h_true == 0.0 else 1.0 - h_true_given_pred / h_true
    c = 1.0 if h_pred == 0.0 else 1.0 - h_pred_given_true / h_pred
    v = 0.0 if h + c == 0.0 else 2.0 * h * c / (h + c)
    return HcvScores(homogeneity=h, completeness=c, v_measure=v)


def cosine(u, v) -> float:
    """Cosine similarity; 0 by convention when either vector is zero."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError("vectors must be 1-D and of equal length")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))
