"""Sample-based landscape features from an evaluated design (X, y).

All groups use only the given sample; no additional function evaluations
are performed. Degenerate statistics (constant y, singular fits) are
flagged, never silently propagated as NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.stats import gaussian_kde, kurtosis, skew

from .doe import DesignMatrix

MIN_SAMPLES = 30

_DISP_QUANTILES = (0.02, 0.05, 0.10, 0.25)

GROUPS = ("ela_distr", "ela_meta", "disp", "nbc", "ic", "pca")


def _catalog_entries():
    entries = [
        ("ela_distr", "skewness", "sample skewness of y"),
        ("ela_distr", "kurtosis", "excess kurtosis of y"),
        ("ela_distr", "number_of_peaks",
         "local maxima of a Gaussian KDE of y (Silverman bandwidth)"),
        ("ela_meta", "lin_r2", "R^2 of the linear model y ~ X"),
        ("ela_meta", "lin_adj_r2", "adjusted R^2 of the linear model"),
        ("ela_meta", "lin_intercept", "intercept of the linear model"),
        ("ela_meta", "lin_coef_min", "smallest |coefficient| of the linear model"),
        ("ela_meta", "lin_coef_max", "largest |coefficient| of the linear model"),
        ("ela_meta", "lin_coef_max_by_min", "ratio of largest to smallest |coefficient|"),
        ("ela_meta", "quad_r2", "R^2 of the quadratic model y ~ X + X^2"),
        ("ela_meta", "quad_adj_r2", "adjusted R^2 of the quadratic model"),
        ("ela_meta", "quad_cond",
         "ratio of largest to smallest |quadratic-term coefficient|"),
    ]
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        entries.append(("disp", f"ratio_mean_{tag}",
                        f"mean pairwise distance of best-{tag}% points / all points"))
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        entries.append(("disp", f"ratio_median_{tag}",
                        f"median pairwise distance of best-{tag}% points / all points"))
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        entries.append(("disp", f"diff_mean_{tag}",
                        f"mean pairwise distance of best-{tag}% points - all points"))
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        entries.append(("disp", f"diff_median_{tag}",
                        f"median pairwise distance of best-{tag}% points - all points"))
    entries += [
        ("nbc", "nn_nb_sd_ratio",
         "sd of nearest-neighbor distances / sd of nearest-better distances"),
        ("nbc", "nn_nb_mean_ratio",
         "mean nearest-neighbor distance / mean nearest-better distance"),
        ("nbc", "nn_nb_cor",
         "correlation of nearest-neighbor and nearest-better distances"),
        ("nbc", "dist_ratio_coeff_var",
         "coefficient of variation of the nn/nb distance ratios"),
        ("nbc", "nb_fitness_cor", "correlation of nearest-better distance and y"),
        ("ic", "h_max", "maximum information content (normalized entropy, in [0, 1])"),
        ("ic", "eps_s", "log10 of the settling sensitivity threshold"),
        ("ic", "eps_max", "log10 of the threshold maximizing information content"),
        ("ic", "m0", "partial information content at threshold 0"),
        ("pca", "expl_var_cov_x",
         "share of covariance PCs of X needed for 90% variance"),
        ("pca", "expl_var_cor_x",
         "share of correlation PCs of X needed for 90% variance"),
        ("pca", "expl_var_cov_init",
         "share of covariance PCs of [X|y] needed for 90% variance"),
        ("pca", "expl_var_cor_init",
         "share of correlation PCs of [X|y] needed for 90% variance"),
        ("pca", "expl_var_pc1_cov_x", "first covariance-PC variance fraction of X"),
        ("pca", "expl_var_pc1_cor_x", "first correlation-PC variance fraction of X"),
        ("pca", "expl_var_pc1_cov_init", "first covariance-PC variance fraction of [X|y]"),
        ("pca", "expl_var_pc1_cor_init", "first correlation-PC variance fraction of [X|y]"),
    ]
    return entries


FEATURE_CATALOG = _catalog_entries()


def catalog(groups=GROUPS) -> list[dict]:
    """Catalog of features in fixed extraction order."""
    return [{"group": g, "name": f"{g}.{n}", "definition": d}
            for g, n, d in FEATURE_CATALOG if g in groups]


@dataclass
class FeatureVector:
    names: list[str]
    values: np.ndarray
    flags: list[str]  # "ok" | "degenerate"

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.values))


class _Collector:
    def __init__(self):
        self.names, self.values, self.flags = [], [], []

    def add(self, group, name, value):
        self.names.append(f"{group}.{name}")
        v = float(value)
        if np.isfinite(v):
            self.values.append(v)
            self.flags.append("ok")
        else:
            self.values.append(np.nan)
            self.flags.append("degenerate")


# ---------------------------------------------------------------------------
# Feature groups.

def _distr(out: _Collector, y: np.ndarray):
    if np.ptp(y) == 0.0:
        for name in ("skewness", "kurtosis", "number_of_peaks"):
            out.add("ela_distr", name, np.nan)
        return
    out.add("ela_distr", "skewness", skew(y))
    out.add("ela_distr", "kurtosis", kurtosis(y))
    try:
        kde = gaussian_kde(y, bw_method="silverman")
        grid = np.linspace(y.min(), y.max(), 512)
        dens = kde(grid)
        interior = (dens[1:-1] > dens[:-2]) & (dens[1:-1] > dens[2:])
        n_peaks = int(np.sum(interior))
        n_peaks += int(dens[0] > dens[1]) + int(dens[-1] > dens[-2])
        out.add("ela_distr", "number_of_peaks", n_peaks)
    except np.linalg.LinAlgError:
        out.add("ela_distr", "number_of_peaks", np.nan)


def _fit(design_cols: np.ndarray, y: np.ndarray):
    coefs, _, _, _ = np.linalg.lstsq(design_cols, y, rcond=None)
    resid = y - design_cols @ coefs
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return coefs, np.nan, np.nan
    n, p = design_cols.shape
    r2 = 1.0 - ss_res / ss_tot
    adj = 1.0 - (1.0 - r2) * (n - 1) / (n - p)
    return coefs, r2, adj


def _meta(out: _Collector, x: np.ndarray, y: np.ndarray):
    n = x.shape[0]
    ones = np.ones((n, 1))
    lin_cols = np.hstack([ones, x])
    coefs, r2, adj = _fit(lin_cols, y)
    out.add("ela_meta", "lin_r2", r2)
    out.add("ela_meta", "lin_adj_r2", adj)
    out.add("ela_meta", "lin_intercept", coefs[0] if np.isfinite(r2) else np.nan)
    betas = np.abs(coefs[1:])
    if np.isfinite(r2) and betas.min() > 0:
        out.add("ela_meta", "lin_coef_min", betas.min())
        out.add("ela_meta", "lin_coef_max", betas.max())
        out.add("ela_meta", "lin_coef_max_by_min", betas.max() / betas.min())
    else:
        for name in ("lin_coef_min", "lin_coef_max", "lin_coef_max_by_min"):
            out.add("ela_meta", name, np.nan)
    quad_cols = np.hstack([ones, x, x ** 2])
    qcoefs, qr2, qadj = _fit(quad_cols, y)
    out.add("ela_meta", "quad_r2", qr2)
    out.add("ela_meta", "quad_adj_r2", qadj)
    qbetas = np.abs(qcoefs[1 + x.shape[1]:])
    if np.isfinite(qr2) and qbetas.min() > 0:
        out.add("ela_meta", "quad_cond", qbetas.max() / qbetas.min())
    else:
        out.add("ela_meta", "quad_cond", np.nan)


def _disp(out: _Collector, dist: np.ndarray, y: np.ndarray):
    n = len(y)
    iu = np.triu_indices(n, k=1)
    all_d = dist[iu]
    mean_all, median_all = all_d.mean(), np.median(all_d)
    stats = {}
    for q in _DISP_QUANTILES:
        best = y <= np.quantile(y, q)
        if best.sum() < 2:
            stats[q] = (np.nan, np.nan)
            continue
        sub = dist[np.ix_(best, best)]
        sub_d = sub[np.triu_indices(best.sum(), k=1)]
        stats[q] = (sub_d.mean(), np.median(sub_d))
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        out.add("disp", f"ratio_mean_{tag}", stats[q][0] / mean_all)
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        out.add("disp", f"ratio_median_{tag}", stats[q][1] / median_all)
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        out.add("disp", f"diff_mean_{tag}", stats[q][0] - mean_all)
    for q in _DISP_QUANTILES:
        tag = f"{int(round(100 * q)):02d}"
        out.add("disp", f"diff_median_{tag}", stats[q][1] - median_all)


def _safe_cor(a: np.ndarray, b: np.ndarray) -> float:
    if np.std(a) == 0.0 or np.std(b) == 0.0:
        return np.nan
    return float(np.corrcoef(a, b)[0, 1])


def _nbc(out: _Collector, dist: np.ndarray, y: np.ndarray):
    n = len(y)
    d = dist.copy()
    np.fill_diagonal(d, np.inf)
    nn = d.min(axis=1)
    nb = np.empty(n)
    for i in range(n):
        better = y < y[i]
        if better.any():
            nb[i] = d[i, better].min()
        else:
            # global best: fall back to the farthest other point
            nb[i] = dist[i].max()
    out.add("nbc", "nn_nb_sd_ratio",
            np.std(nn) / np.std(nb) if np.std(nb) > 0 else np.nan)
    out.add("nbc", "nn_nb_mean_ratio",
            nn.mean() / nb.mean() if nb.mean() > 0 else np.nan)
    out.add("nbc", "nn_nb_cor", _safe_cor(nn, nb))
    ratio = nn / nb
    out.add("nbc", "dist_ratio_coeff_var",
            np.std(ratio) / ratio.mean() if ratio.mean() > 0 else np.nan)
    out.add("nbc", "nb_fitness_cor", _safe_cor(nb, y))


def _nn_tour(dist: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Greedy nearest-neighbor tour starting at the best point.

    Depends only on geometry and y, so it is invariant to row order.
    """
    n = len(y)
    visited = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=int)
    cur = int(np.argmin(y))
    for step in range(n):
        order[step] = cur
        visited[cur] = True
        if step == n - 1:
            break
        row = np.where(visited, np.inf, dist[cur])
        cur = int(np.argmin(row))
    return order


def _ic(out: _Collector, dist: np.ndarray, x: np.ndarray, y: np.ndarray):
    if np.ptp(y) == 0.0:
        for name in ("h_max", "eps_s", "eps_max", "m0"):
            out.add("ic", name, np.nan)
        return
    order = _nn_tour(dist, y)
    dy = np.diff(y[order])
    dx = np.sqrt(np.sum(np.diff(x[order], axis=0) ** 2, axis=1))
    dx[dx == 0.0] = 1e-300
    ratios = dy / dx

    def entropy(eps: float) -> float:
        s = np.sign(ratios) * (np.abs(ratios) > eps)
        pairs = s[:-1] * 3 + s[1:]  # unique code per (s_i, s_{i+1})
        # blocks with unequal consecutive symbols
        mask = s[:-1] != s[1:]
        if not mask.any():
            return 0.0
        codes, counts = np.unique(pairs[mask], return_counts=True)
        p = counts / len(pairs)
        # base-6 logs: six distinct transition types bound the entropy by 1
        return float(-np.sum(p * (np.log(p) / np.log(6.0))))

    def partial_info(eps: float) -> float:
        s = np.sign(ratios) * (np.abs(ratios) > eps)
        s = s[s != 0]
        if len(s) == 0:
            return 0.0
        changes = 1 + int(np.sum(s[:-1] != s[1:]))
        return changes / len(ratios)

    eps_grid = 10.0 ** np.linspace(-5.0, 15.0, 200)
    h = np.array([entropy(e) for e in eps_grid])
    out.add("ic", "h_max", float(h.max()))
    below = np.where(h < 0.05)[0]
    # smallest threshold from which information content has settled below 0.05
    settle = np.nan
    for i in below:
        if np.all(h[i:] < 0.05):
            settle = np.log10(eps_grid[i])
            break
    out.add("ic", "eps_s", settle)
    out.add("ic", "eps_max", float(np.log10(eps_grid[int(np.argmax(h))])))
    out.add("ic", "m0", partial_info(0.0))


def _explained(eigvals: np.ndarray) -> tuple[float, float]:
    frac = np.maximum(eigvals, 0.0)
    frac = np.sort(frac)[::-1]
    frac = frac / frac.sum()
    cum = np.cumsum(frac)
    needed = int(np.searchsorted(cum, 0.9) + 1)
    return needed / len(frac), float(frac[0])


def _pca(out: _Collector, x: np.ndarray, y: np.ndarray):
    init = np.hstack([x, y[:, None]])
    results = {}
    for key, data, use_cor in (("cov_x", x, False), ("cor_x", x, True),
                               ("cov_init", init, False), ("cor_init", init, True)):
        stds = data.std(axis=0)
        if use_cor and np.any(stds == 0.0):
            results[key] = (np.nan, np.nan)
            continue
        mat = np.corrcoef(data, rowvar=False) if use_cor else np.cov(data, rowvar=False)
        results[key] = _explained(np.linalg.eigvalsh(mat))
    for key in ("cov_x", "cor_x", "cov_init", "cor_init"):
        out.add("pca", f"expl_var_{key}", results[key][0])
    for key in ("cov_x", "cor_x", "cov_init", "cor_init"):
        out.add("pca", f"expl_var_pc1_{key}", results[key][1])


# ---------------------------------------------------------------------------

def compute_features(design: DesignMatrix, y, groups=GROUPS) -> FeatureVector:
    """Features of all requested groups, in fixed catalog order."""
    y = np.asarray(y, dtype=float)
    x = design.points
    if len(y) != design.n_samples:
        raise ValueError("y length must match the design")
    if design.n_samples < MIN_SAMPLES:
        raise ValueError(
            f"need at least {MIN_SAMPLES} samples, got {design.n_samples}")
    unknown = set(groups) - set(GROUPS)
    if unknown:
        raise ValueError(f"unknown feature groups: {sorted(unknown)}")

    out = _Collector()
    need_dist = any(g in groups for g in ("disp", "nbc", "ic"))
    dist = squareform(pdist(x)) if need_dist else None
    for group in GROUPS:
        if group not in groups:
            continue
        if group == "ela_distr":
            _distr(out, y)
        elif group == "ela_meta":
            _meta(out, x, y)
        elif group == "disp":
            _disp(out, dist, y)
        elif group == "nbc":
            _nbc(out, dist, y)
        elif group == "ic":
            _ic(out, dist, x, y)
        elif group == "pca":
            _pca(out, x, y)

    expected = [c["name"] for c in catalog(groups)]
    if out.names != expected:
        raise RuntimeError("extractor emitted a feature set differing from the catalog")
    return FeatureVector(names=out.names, values=np.array(out.values),
                         flags=out.flags)
