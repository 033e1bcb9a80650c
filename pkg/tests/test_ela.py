"""Tests for the landscape feature extractor."""

import numpy as np
import pytest
from scipy.spatial.distance import pdist
from scipy.stats import kurtosis, skew

from probscape import bbob, doe, ela
from probscape.doe import DesignMatrix


def make_design(points):
    points = np.asarray(points, dtype=float)
    return DesignMatrix(points=points, bounds=(points.min(), points.max() + 1),
                        seed=0)


def random_sample(n=120, dim=4, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-5, 5, size=(n, dim))
    y = np.sum(x ** 2, axis=1) + rng.normal(0, 0.1, n)
    return make_design(x), y


def test_catalog_size_and_uniqueness():
    entries = ela.catalog()
    assert len(entries) == 45
    names = [e["name"] for e in entries]
    assert len(set(names)) == len(names)
    assert all(e["name"].startswith(e["group"] + ".") for e in entries)


def test_feature_vector_matches_catalog_order():
    design, y = random_sample()
    fv = ela.compute_features(design, y)
    assert fv.names == [e["name"] for e in ela.catalog()]
    assert len(fv.values) == len(fv.names) == len(fv.flags)


def test_too_few_samples_rejected():
    design, y = random_sample(n=29)
    with pytest.raises(ValueError):
        ela.compute_features(design, y)


def test_unknown_group_rejected():
    design, y = random_sample()
    with pytest.raises(ValueError):
        ela.compute_features(design, y, groups=("ela_distr", "nope"))


def test_constant_y_flags_degenerate_not_error():
    design, _ = random_sample()
    fv = ela.compute_features(design, np.full(design.n_samples, 3.0))
    d = dict(zip(fv.names, fv.flags))
    assert d["ela_distr.skewness"] == "degenerate"
    assert d["ela_meta.lin_r2"] == "degenerate"
    assert d["ic.h_max"] == "degenerate"
    # geometry-only features still come out fine
    assert d["pca.expl_var_cov_x"] == "ok"


def test_skew_kurtosis_against_scipy():
    design, y = random_sample(seed=5)
    fv = ela.compute_features(design, y, groups=("ela_distr",)).as_dict()
    assert fv["ela_distr.skewness"] == pytest.approx(skew(y), abs=1e-12)
    assert fv["ela_distr.kurtosis"] == pytest.approx(kurtosis(y), abs=1e-12)


def test_symmetric_y_has_zero_skewness():
    rng = np.random.default_rng(2)
    x = rng.uniform(-5, 5, size=(100, 3))
    half = rng.normal(0, 1, 50)
    y = np.concatenate([half, -half])  # exactly symmetric around 0
    fv = ela.compute_features(make_design(x), y, groups=("ela_distr",))
    assert abs(fv.as_dict()["ela_distr.skewness"]) < 1e-9


def test_linear_y_perfect_fit():
    rng = np.random.default_rng(3)
    x = rng.uniform(-5, 5, size=(80, 4))
    y = 2.0 + x @ np.array([1.0, -2.0, 0.5, 3.0])
    fv = ela.compute_features(make_design(x), y, groups=("ela_meta",)).as_dict()
    assert fv["ela_meta.lin_r2"] == pytest.approx(1.0, abs=1e-9)
    assert fv["ela_meta.lin_adj_r2"] == pytest.approx(1.0, abs=1e-9)
    assert fv["ela_meta.lin_intercept"] == pytest.approx(2.0, abs=1e-6)
    assert fv["ela_meta.lin_coef_max_by_min"] == pytest.approx(6.0, rel=1e-6)


def test_quadratic_y_perfect_quad_fit():
    rng = np.random.default_rng(4)
    x = rng.uniform(-5, 5, size=(90, 3))
    y = np.sum(x ** 2, axis=1)
    fv = ela.compute_features(make_design(x), y, groups=("ela_meta",)).as_dict()
    assert fv["ela_meta.quad_r2"] == pytest.approx(1.0, abs=1e-9)
    assert fv["ela_meta.quad_adj_r2"] == pytest.approx(1.0, abs=1e-9)


def test_dispersion_against_brute_force():
    # tight cluster of best points inside a broad cloud
    rng = np.random.default_rng(6)
    x = np.vstack([rng.normal(0, 0.05, size=(10, 3)),
                   rng.normal(0, 5.0, size=(190, 3))])
    y = np.concatenate([np.zeros(10), np.ones(190) + rng.random(190)])
    fv = ela.compute_features(make_design(x), y, groups=("disp",)).as_dict()
    best = y <= np.quantile(y, 0.05)
    want = pdist(x[best]).mean() / pdist(x).mean()
    assert fv["disp.ratio_mean_05"] == pytest.approx(want, rel=1e-9)
    assert fv["disp.ratio_mean_05"] < 1.0
    for q in ("02", "05", "10", "25"):
        assert fv[f"disp.ratio_mean_{q}"] > 0
        assert fv[f"disp.ratio_median_{q}"] > 0


def test_nbc_unimodal_vs_flat_noise():
    rng = np.random.default_rng(8)
    x = rng.uniform(-5, 5, size=(150, 2))
    fv_uni = ela.compute_features(
        make_design(x), np.sum(x ** 2, axis=1), groups=("nbc",)).as_dict()
    fv_rand = ela.compute_features(
        make_design(x), rng.random(150), groups=("nbc",)).as_dict()
    # distance to better points tracks fitness on the unimodal bowl
    assert fv_uni["nbc.nb_fitness_cor"] > fv_rand["nbc.nb_fitness_cor"]


def test_ic_ranges():
    design, y = random_sample(seed=9)
    fv = ela.compute_features(design, y, groups=("ic",)).as_dict()
    assert 0.0 <= fv["ic.h_max"] <= 1.0
    assert 0.0 <= fv["ic.m0"] <= 1.0
    assert fv["ic.eps_s"] >= fv["ic.eps_max"] - 20  # both on the log10 grid


def test_pca_explained_variance():
    rng = np.random.default_rng(10)
    # one dominant axis: a single PC reaches 90%
    x = np.empty((100, 4))
    x[:, 0] = rng.normal(0, 10, 100)
    x[:, 1:] = rng.normal(0, 0.01, (100, 3))
    y = rng.random(100)
    fv = ela.compute_features(make_design(x), y, groups=("pca",)).as_dict()
    assert fv["pca.expl_var_cov_x"] == pytest.approx(0.25, abs=1e-12)
    assert fv["pca.expl_var_pc1_cov_x"] > 0.99
    # isotropic data: correlation eigenvalues near 1, needs most PCs
    x_iso = rng.normal(size=(200, 4))
    fv_iso = ela.compute_features(make_design(x_iso), rng.random(200),
                                  groups=("pca",)).as_dict()
    assert fv_iso["pca.expl_var_cor_x"] >= 0.75


def test_row_permutation_invariance():
    problem = bbob.make_problem(8, 1, 5)
    design = doe.lhs(100, 5, seed=13)
    y = doe.evaluate_design(problem, design)
    fv = ela.compute_features(design, y)
    perm = np.random.default_rng(14).permutation(100)
    shuffled = DesignMatrix(points=design.points[perm], bounds=design.bounds,
                            seed=design.seed)
    fv2 = ela.compute_features(shuffled, y[perm])
    both_ok = [i for i in range(len(fv.values))
               if fv.flags[i] == "ok" and fv2.flags[i] == "ok"]
    assert fv.flags == fv2.flags
    assert np.allclose(fv.values[both_ok], fv2.values[both_ok], atol=1e-9)


def test_on_real_problem_all_finite_or_flagged():
    problem = bbob.make_problem(21, 2, 10)
    design = doe.lhs(500, 10, seed=99)
    y = doe.evaluate_design(problem, design)
    fv = ela.compute_features(design, y)
    for value, flag in zip(fv.values, fv.flags):
        assert np.isfinite(value) or flag == "degenerate"
