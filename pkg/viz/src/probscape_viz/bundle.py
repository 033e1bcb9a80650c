"""Reader for exported analysis bundles.

A bundle directory holds bundle.json plus the CSV/JSON artifacts the
pipeline exported: the suite manifest, one feature matrix and one label
file per representation, and per-pair similarity matrices with their
leaf-order sidecars. This component only reads those files; it never
recomputes clustering, similarity, or orderings.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

KEY_COLUMNS = ("class_i", "class_j", "instance", "alpha")


@dataclass
class Representation:
    name: str
    keys: list[tuple]               # (class_i, class_j, instance, alpha)
    feature_names: list[str]
    values: np.ndarray
    labels: np.ndarray | None = None


@dataclass
class Similarity:
    rep_a: str
    rep_b: str
    values: np.ndarray
    clusters_a: list[str]
    clusters_b: list[str]
    row_order: list[int] | None = None
    col_order: list[int] | None = None
    row_merges: np.ndarray | None = None
    col_merges: np.ndarray | None = None


@dataclass
class VizBundle:
    path: Path
    n_problems: int
    manifest_hash: str
    representations: dict[str, Representation] = field(default_factory=dict)
    similarities: dict[tuple[str, str], Similarity] = field(default_factory=dict)


def _read_rows(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _row_key(row: dict) -> tuple:
    return (int(row["class_i"]), int(row["class_j"]),
            int(row["instance"]), float(row["alpha"]))


def load_bundle(path) -> VizBundle:
    path = Path(path)
    index_path = path / "bundle.json"
    if not index_path.exists():
        raise FileNotFoundError(f"no bundle.json under {path}")
    with open(index_path) as fh:
        index = json.load(fh)
    bundle = VizBundle(path=path, n_problems=int(index["n_problems"]),
                       manifest_hash=index["manifest_hash"])

    labels = {}
    for name in index["files"].get("labels", []):
        rep_name = Path(name).stem.replace("labels_", "")
        rows = _read_rows(path / name)
        labels[rep_name] = {_row_key(r): int(r["cluster"]) for r in rows}

    for name in index["files"].get("representations", []):
        rep_name = Path(name).stem.replace("features_", "")
        rows = _read_rows(path / name)
        if len(rows) != bundle.n_problems:
            raise ValueError(
                f"{name}: {len(rows)} rows but bundle lists "
                f"{bundle.n_problems} problems")
        feature_names = [c for c in rows[0] if c not in KEY_COLUMNS]
        keys = [_row_key(r) for r in rows]
        values = np.array([[float(r[c]) for c in feature_names]
                           for r in rows])
        rep = Representation(name=rep_name, keys=keys,
                             feature_names=feature_names, values=values)
        if rep_name in labels:
            rep.labels = np.array([labels[rep_name][k] for k in keys])
        bundle.representations[rep_name] = rep

    for name in index["files"].get("similarity", []):
        if not name.endswith(".csv"):
            continue
        stem = Path(name).stem.replace("similarity_", "")
        rep_a, rep_b = stem.split("__")
        rows = _read_rows(path / name)
        cols = [c for c in rows[0] if c != "cluster_a"]
        sim = Similarity(
            rep_a=rep_a, rep_b=rep_b,
            values=np.array([[float(r[c]) for c in cols] for r in rows]),
            clusters_a=[r["cluster_a"] for r in rows], clusters_b=cols)
        order_path = path / f"similarity_{stem}.order.json"
        if order_path.exists():
            with open(order_path) as fh:
                order = json.load(fh)
            sim.row_order = order["row_order"]
            sim.col_order = order["col_order"]
            if order.get("row_merges"):
                sim.row_merges = np.array(order["row_merges"])
            if order.get("col_merges"):
                sim.col_merges = np.array(order["col_merges"])
        bundle.similarities[(rep_a, rep_b)] = sim
    return bundle
