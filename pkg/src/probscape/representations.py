"""Named representation matrices aligned to the suite manifest.

A representation is an (n problems) x (d_r features) table keyed by
(class_i, class_j, instance, alpha). Locally computed feature tables and
externally produced vector files go through the same alignment and
preprocessing path before clustering.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)

KEY_COLUMNS = ("class_i", "class_j", "instance", "alpha")

Key = tuple[int, int, int, float]


def record_key(record: dict) -> Key:
    return (int(record["class_i"]), int(record["class_j"]),
            int(record["instance"]), float(record["alpha"]))


@dataclass
class RepresentationMatrix:
    name: str
    keys: list[Key]                  # manifest order
    feature_names: list[str]
    values: np.ndarray               # (n, d_r)
    preprocessing: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


def ingest_csv(path, name: str, manifest_records: list[dict]) -> RepresentationMatrix:
    """Load a representation CSV and reorder its rows to manifest order.

    The file needs the key columns class_i, class_j, instance, alpha;
    every remaining column is read as a numeric feature.
    """
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing_cols = [c for c in KEY_COLUMNS if c not in header]
        if missing_cols:
            raise ValueError(f"{path}: missing key columns {missing_cols}")
        feature_names = [c for c in header if c not in KEY_COLUMNS
                         and c != "combo_index"]
        if not feature_names:
            raise ValueError(f"{path}: no feature columns")
        rows: dict[Key, list[float]] = {}
        for line_no, row in enumerate(reader, start=2):
            key = record_key(row)
            if key in rows:
                raise ValueError(f"{path}: duplicate key {key} at line {line_no}")
            vals = []
            for col in feature_names:
                try:
                    vals.append(float(row[col]))
                except (TypeError, ValueError):
                    raise ValueError(
                        f"{path}: non-numeric value {row[col]!r} in column "
                        f"{col!r} at line {line_no}") from None
            rows[key] = vals

    manifest_keys = [record_key(r) for r in manifest_records]
    absent = [k for k in manifest_keys if k not in rows]
    if absent:
        raise ValueError(
            f"{path}: missing {len(absent)} manifest problems, first few: "
            f"{absent[:5]}")
    values = np.array([rows[k] for k in manifest_keys], dtype=float)
    return RepresentationMatrix(name=name, keys=manifest_keys,
                                feature_names=feature_names, values=values)


def preprocess(m: RepresentationMatrix, impute: str = "median",
               standardize: bool = False) -> RepresentationMatrix:
    """Impute degenerate cells, optionally standardize, drop dead columns.

    The applied transform is recorded on the result and can be replayed
    bit-for-bit with apply_preprocessing.
    """
    if impute not in ("median",):
        raise ValueError(f"unknown imputation policy {impute!r}")
    values = m.values.copy()
    record: dict = {"impute": impute, "standardize": bool(standardize),
                    "medians": {}, "dropped": [], "means": {}, "stds": {}}

    keep = []
    for j, col_name in enumerate(m.feature_names):
        col = values[:, j]
        bad = ~np.isfinite(col)
        if bad.all():
            record["dropped"].append(col_name)
            log.warning("%s: column %s dropped (all cells degenerate)",
                        m.name, col_name)
            continue
        if bad.any():
            med = float(np.median(col[~bad]))
            col[bad] = med
            record["medians"][col_name] = med
        if np.ptp(col) == 0.0:
            record["dropped"].append(col_name)
            log.warning("%s: column %s dropped (zero variance)", m.name, col_name)
            continue
        keep.append(j)

    names = [m.feature_names[j] for j in keep]
    values = values[:, keep]
    if standardize:
        means = values.mean(axis=0)
        stds = values.std(axis=0)
        values = (values - means) / stds
        record["means"] = {n: float(v) for n, v in zip(names, means)}
        record["stds"] = {n: float(v) for n, v in zip(names, stds)}
    return RepresentationMatrix(name=m.name, keys=list(m.keys),
                                feature_names=names, values=values,
                                preprocessing=record)


def apply_preprocessing(m: RepresentationMatrix, record: dict) -> RepresentationMatrix:
    """Replay a recorded preprocessing transform on raw input."""
    values = m.values.copy()
    keep, names = [], []
    for j, col_name in enumerate(m.feature_names):
        if col_name in record["dropped"]:
            continue
        col = values[:, j]
        if col_name in record["medians"]:
            col[~np.isfinite(col)] = record["medians"][col_name]
        keep.append(j)
        names.append(col_name)
    values = values[:, keep]
    if record["standardize"]:
        means = np.array([record["means"][n] for n in names])
        stds = np.array([record["stds"][n] for n in names])
        values = (values - means) / stds
    return RepresentationMatrix(name=m.name, keys=list(m.keys),
                                feature_names=names, values=values,
                                preprocessing=record)


def align(matrices: list[RepresentationMatrix],
          manifest_records: list[dict]) -> list[RepresentationMatrix]:
    """Verify all matrices cover the manifest; normalize row order to it."""
    if len(matrices) < 2:
        raise ValueError("need at least 2 matrices to align")
    manifest_keys = [record_key(r) for r in manifest_records]
    want = set(manifest_keys)
    out = []
    for m in matrices:
        have = set(m.keys)
        if have != want:
            diff = sorted(want.symmetric_difference(have))
            raise ValueError(
                f"representation {m.name!r}: key mismatch with manifest, "
                f"symmetric difference {diff[:5]} ({len(diff)} keys)")
        if m.keys == manifest_keys:
            out.append(m)
        else:
            index = {k: i for i, k in enumerate(m.keys)}
            order = [index[k] for k in manifest_keys]
            out.append(RepresentationMatrix(
                name=m.name, keys=list(manifest_keys),
                feature_names=list(m.feature_names),
                values=m.values[order], preprocessing=dict(m.preprocessing)))
    return out
