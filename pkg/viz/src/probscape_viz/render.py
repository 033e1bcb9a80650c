"""t-SNE scatter and clustered-heatmap rendering from a loaded bundle."""

from __future__ import annotations

import csv
import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from scipy.cluster.hierarchy import dendrogram
from sklearn.manifold import TSNE

from .bundle import VizBundle

log = logging.getLogger(__name__)

DEFAULT_PERPLEXITY = 30.0


def compute_embedding(values: np.ndarray, dims: int,
                      perplexity: float, seed: int) -> np.ndarray:
    n = values.shape[0]
    if dims not in (2, 3):
        raise ValueError("dims must be 2 or 3")
    if perplexity >= n / 3:
        raise ValueError(
            f"perplexity {perplexity} too large for n={n}; choose a value "
            f"below n/3 = {n / 3:.1f}")
    tsne = TSNE(n_components=dims, perplexity=perplexity, random_state=seed,
                init="pca")
    return tsne.fit_transform(values)


def _scatter(coords: np.ndarray, colors, title: str, path: Path, dpi: int):
    dims = coords.shape[1]
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d" if dims == 3 else None)
    args = [coords[:, j] for j in range(dims)]
    scatter = ax.scatter(*args, c=colors, cmap="tab20", s=18)
    ax.set_title(title)
    fig.colorbar(scatter, ax=ax, shrink=0.75)
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)


def tsne_plot(bundle: VizBundle, representation: str, out_dir,
              dims: int = 2, perplexity: float = DEFAULT_PERPLEXITY,
              seed: int = 42, dpi: int = 150) -> list[Path]:
    """Embed one representation; write a coordinate CSV and two figures
    (colored by exported cluster label and by ground-truth class pair)."""
    if representation not in bundle.representations:
        raise KeyError(f"representation {representation!r} not in bundle; "
                       f"have {sorted(bundle.representations)}")
    rep = bundle.representations[representation]
    coords = compute_embedding(rep.values, dims, perplexity, seed)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / f"tsne_{representation}_{dims}d.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["class_i", "class_j", "instance", "alpha"]
                        + [f"t{j + 1}" for j in range(dims)]
                        + (["cluster"] if rep.labels is not None else []))
        for i, key in enumerate(rep.keys):
            row = list(key) + [repr(float(v)) for v in coords[i]]
            if rep.labels is not None:
                row.append(int(rep.labels[i]))
            writer.writerow(row)

    written = [csv_path]
    combos = [(k[0], k[1]) for k in rep.keys]
    combo_ids = {c: i for i, c in enumerate(sorted(set(combos)))}
    truth = [combo_ids[c] for c in combos]
    meta = {"perplexity": perplexity, "seed": seed}
    if rep.labels is not None:
        fig_path = out_dir / f"tsne_{representation}_{dims}d_clusters.png"
        _scatter(coords, rep.labels,
                 f"{representation}: t-SNE by cluster {meta}", fig_path, dpi)
        written.append(fig_path)
    fig_path = out_dir / f"tsne_{representation}_{dims}d_truth.png"
    _scatter(coords, truth,
             f"{representation}: t-SNE by class pair {meta}", fig_path, dpi)
    written.append(fig_path)
    return written


def heatmap_plot(bundle: VizBundle, rep_a: str, rep_b: str, out_dir,
                 dpi: int = 150) -> Path:
    """Similarity heatmap permuted by the exported leaf orders, with
    dendrograms drawn from the exported merge trees."""
    key = (rep_a, rep_b)
    if key not in bundle.similarities:
        raise KeyError(f"no similarity matrix for {rep_a} x {rep_b}; have "
                       f"{sorted(bundle.similarities)}")
    sim = bundle.similarities[key]
    values = sim.values
    row_order = sim.row_order
    col_order = sim.col_order
    if row_order is None or col_order is None:
        log.warning("%s x %s: no exported ordering, rendering unordered",
                    rep_a, rep_b)
        row_order = list(range(values.shape[0]))
        col_order = list(range(values.shape[1]))
    ordered = values[np.ix_(row_order, col_order)]

    fig = plt.figure(figsize=(8, 7))
    grid = fig.add_gridspec(2, 2, width_ratios=(1, 5), height_ratios=(1, 5),
                            wspace=0.02, hspace=0.02)
    ax_top = fig.add_subplot(grid[0, 1])
    ax_left = fig.add_subplot(grid[1, 0])
    ax_heat = fig.add_subplot(grid[1, 1])
    if sim.col_merges is not None and len(sim.col_merges):
        dendrogram(sim.col_merges, ax=ax_top, no_labels=True,
                   color_threshold=0.0, link_color_func=lambda _: "k")
    if sim.row_merges is not None and len(sim.row_merges):
        dendrogram(sim.row_merges, ax=ax_left, orientation="left",
                   no_labels=True, color_threshold=0.0,
                   link_color_func=lambda _: "k")
        ax_left.invert_yaxis()
    for ax in (ax_top, ax_left):
        ax.set_axis_off()
    image = ax_heat.imshow(ordered, vmin=0.0, vmax=1.0, aspect="auto",
                           cmap="viridis")
    ax_heat.set_xticks(range(len(col_order)),
                       [sim.clusters_b[j] for j in col_order],
                       rotation=90, fontsize=6)
    ax_heat.set_yticks(range(len(row_order)),
                       [sim.clusters_a[j] for j in row_order], fontsize=6)
    ax_heat.set_xlabel(rep_b)
    ax_heat.set_ylabel(rep_a)
    fig.colorbar(image, ax=ax_heat, shrink=0.8)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"heatmap_{rep_a}__{rep_b}.png"
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return path
