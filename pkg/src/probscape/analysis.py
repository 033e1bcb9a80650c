"""Coverage matrices, cross-representation similarity, performance alignment.

A clustering of the suite induces, for each ordered class pair, a count
vector over clusters (how its instance/alpha variants distribute). The
columns of that coverage matrix act as cluster meta-vectors; cosine
between meta-vectors from two representations measures how much of the
same problem mass two clusters capture.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.cluster.hierarchy import leaves_list, linkage as scipy_linkage
from scipy.spatial.distance import squareform

from .metrics import HcvScores, cosine, hcv

log = logging.getLogger(__name__)


@dataclass
class CoverageMatrix:
    representation: str
    combos: list[tuple[int, int]]    # ordered class pairs, manifest order
    clusters: list[int]
    counts: np.ndarray               # (n_combos, k) non-negative integers

    def meta_vector(self, cluster_id: int) -> np.ndarray:
        """A coverage column: the cluster's profile over class pairs."""
        return self.counts[:, self.clusters.index(cluster_id)]


@dataclass
class SimilarityMatrix:
    rep_a: str
    rep_b: str
    clusters_a: list[int]
    clusters_b: list[int]
    values: np.ndarray               # (k_a, k_b) cosines in [0, 1]
    row_order: list[int] = field(default_factory=list)
    col_order: list[int] = field(default_factory=list)
    row_merges: list | None = None
    col_merges: list | None = None


@dataclass
class PerformanceTable:
    portfolio: str
    config_ids: list[str]            # exactly 5 configuration names
    keys: list[tuple]                # (class_i, class_j, instance, alpha)
    scores: np.ndarray               # (n, 5), lower is better by default
    higher_is_better: bool = False

    def __post_init__(self):
        if len(self.config_ids) != 5:
            raise ValueError("a portfolio holds exactly 5 configurations")
        if self.scores.shape != (len(self.keys), 5):
            raise ValueError("scores must be (n_rows, 5)")

    @property
    def best_config(self) -> np.ndarray:
        """Index of the best configuration per row; ties to lowest index."""
        oriented = -self.scores if self.higher_is_better else self.scores
        best = np.argmin(oriented, axis=1)
        tied = np.sum(oriented == oriented.min(axis=1, keepdims=True), axis=1) > 1
        if tied.any():
            log.info("%s: %d rows with tied best scores (lowest index kept)",
                     self.portfolio, int(tied.sum()))
        return best


def coverage(assignment, manifest_records: list[dict]) -> CoverageMatrix:
    """Count, per ordered class pair, how its variants spread over clusters."""
    labels = np.asarray(assignment.labels)
    if len(labels) != len(manifest_records):
        raise ValueError(
            f"assignment has {len(labels)} rows but manifest has "
            f"{len(manifest_records)}")
    combos: list[tuple[int, int]] = []
    combo_index: dict[tuple[int, int], int] = {}
    for rec in manifest_records:
        pair = (int(rec["class_i"]), int(rec["class_j"]))
        if pair not in combo_index:
            combo_index[pair] = len(combos)
            combos.append(pair)
    clusters = sorted(int(c) for c in np.unique(labels))
    col = {c: j for j, c in enumerate(clusters)}
    counts = np.zeros((len(combos), len(clusters)), dtype=int)
    for rec, label in zip(manifest_records, labels):
        pair = (int(rec["class_i"]), int(rec["class_j"]))
        counts[combo_index[pair], col[int(label)]] += 1
    return CoverageMatrix(representation=assignment.representation,
                          combos=combos, clusters=clusters, counts=counts)


def cross_similarity(cov_a: CoverageMatrix, cov_b: CoverageMatrix,
                     ordered: bool = True) -> SimilarityMatrix:
    """Cosine between every meta-vector pair of two coverage matrices."""
    if cov_a.combos != cov_b.combos:
        raise ValueError("coverage matrices index different class pairs")
    values = np.empty((len(cov_a.clusters), len(cov_b.clusters)))
    for j in range(values.shape[0]):
        for l in range(values.shape[1]):
            values[j, l] = cosine(cov_a.counts[:, j], cov_b.counts[:, l])
    s = SimilarityMatrix(rep_a=cov_a.representation, rep_b=cov_b.representation,
                         clusters_a=list(cov_a.clusters),
                         clusters_b=list(cov_b.clusters), values=values)
    if ordered:
        dendrogram_order(s)
    return s


def _profile_order(profiles: np.ndarray):
    """Average-linkage leaf order over rows of a profile matrix."""
    k = profiles.shape[0]
    if k == 1:
        return [0], []
    norms = np.linalg.norm(profiles, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    unit = profiles / safe[:, None]
    sim = np.clip(unit @ unit.T, -1.0, 1.0)
    sim[norms == 0.0, :] = 0.0
    sim[:, norms == 0.0] = 0.0
    np.fill_diagonal(sim, 1.0)
    dist = squareform(1.0 - sim, checks=False)
    merges = scipy_linkage(dist, method="average")
    return [int(i) for i in leaves_list(merges)], merges.tolist()


def dendrogram_order(s: SimilarityMatrix) -> SimilarityMatrix:
    """Attach leaf orders for heatmap display.

    Rows (and columns) are grouped by average linkage on 1 - cosine of
    their similarity profiles, so clusters with alike cross-profiles end
    up adjacent.
    """
    s.row_order, s.row_merges = _profile_order(s.values)
    s.col_order, s.col_merges = _profile_order(s.values.T)
    return s


def overlap_report(s: SimilarityMatrix, cov_a: CoverageMatrix,
                   cov_b: CoverageMatrix, threshold: float = 0.5,
                   top_m: int = 5) -> list[dict]:
    """Which class pairs drive each high-similarity cluster pair.

    For cluster pairs at or above the similarity threshold, the dot
    product of their meta-vectors is decomposed per class pair; the
    top_m contributors are reported with their share of the total.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")
    report = []
    for j, ca in enumerate(s.clusters_a):
        for l, cb in enumerate(s.clusters_b):
            if s.values[j, l] < threshold:
                continue
            contrib = cov_a.counts[:, j].astype(float) * cov_b.counts[:, l]
            total = contrib.sum()
            top = np.argsort(-contrib, kind="stable")[:top_m]
            top = [int(i) for i in top if contrib[i] > 0]
            report.append({
                "cluster_a": ca, "cluster_b": cb,
                "similarity": float(s.values[j, l]),
                "contributors": [
                    {"class_i": cov_a.combos[i][0],
                     "class_j": cov_a.combos[i][1],
                     "contribution": float(contrib[i]),
                     "share": float(contrib[i] / total)}
                    for i in top],
            })
    return report


def perf_alignment(assignment, perf: PerformanceTable,
                   manifest_records: list[dict]) -> HcvScores:
    """H/C/V between per-instance best configurations and cluster labels."""
    labels = np.asarray(assignment.labels)
    if len(labels) != len(manifest_records):
        raise ValueError("assignment and manifest row counts differ")
    row = {k: i for i, k in enumerate(perf.keys)}
    missing = []
    order = []
    for rec in manifest_records:
        key = (int(rec["class_i"]), int(rec["class_j"]),
               int(rec["instance"]), float(rec["alpha"]))
        if key not in row:
            missing.append(key)
        else:
            order.append(row[key])
    if missing:
        raise ValueError(
            f"performance table missing {len(missing)} rows, first few: "
            f"{missing[:5]}")
    best = perf.best_config[order]
    return hcv(best, labels)
