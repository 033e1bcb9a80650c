"""Tests for the command-line pipeline and artifact plumbing."""

import numpy as np
import pytest

from probscape import cli, io
from probscape.cli import parse_grid_spec


def run(argv):
    return cli.main(argv)


@pytest.fixture()
def suite_dir(tmp_path):
    out = tmp_path / "run"
    assert run(["generate", "--out-dir", str(out), "--classes", "1,2,3",
                "--instances", "1", "--alphas", "0.5", "--dim", "2"]) == 0
    return out


def test_generate_counts(suite_dir):
    rows = io.read_csv(suite_dir / "suite_manifest.csv")
    assert len(rows) == 6  # 3 classes -> 6 ordered pairs x 1 instance x 1 alpha
    manifest = io.read_json(suite_dir / "run_manifest.json")
    assert "suite_manifest.csv" in manifest["artifacts"]


def test_generate_reduced_six_class_count(tmp_path):
    out = tmp_path / "r"
    assert run(["generate", "--out-dir", str(out), "--classes", "1..6",
                "--instances", "1,2", "--alphas", "0.5"]) == 0
    assert len(io.read_csv(out / "suite_manifest.csv")) == 60


def test_generate_determinism(tmp_path):
    hashes = []
    for sub in ("a", "b"):
        out = tmp_path / sub
        run(["generate", "--out-dir", str(out), "--classes", "1..5",
             "--instances", "1,2", "--alphas", "0.25,0.75"])
        hashes.append(io.sha256_file(out / "suite_manifest.csv"))
    assert hashes[0] == hashes[1]


def test_generate_invalid_classes(tmp_path):
    assert run(["generate", "--out-dir", str(tmp_path / "x"),
                "--classes", "1,99"]) == cli.EXIT_DATA


def test_resume_skips_existing(suite_dir, capsys):
    assert run(["generate", "--out-dir", str(suite_dir), "--classes",
                "1,2,3", "--instances", "1", "--alphas", "0.5",
                "--dim", "2"]) == 0
    assert "reusing existing" in capsys.readouterr().out


def test_features_row_count_and_rerun_hash(suite_dir):
    assert run(["features", "--out-dir", str(suite_dir)]) == 0
    path = suite_dir / "features_ela.csv"
    rows = io.read_csv(path)
    assert len(rows) == 6
    first = io.sha256_file(path)
    assert run(["features", "--out-dir", str(suite_dir), "--force"]) == 0
    assert io.sha256_file(path) == first


def test_features_match_direct_module_calls(suite_dir):
    run(["features", "--out-dir", str(suite_dir)])
    from probscape import doe, ela, mabbob
    rows = io.read_csv(suite_dir / "features_ela.csv")
    rec = {"class_i": 1, "class_j": 2, "instance": 1, "alpha": 0.5, "dim": 2,
           "lhs_seed": int(rows[0]["class_i"]) * 0}  # placeholder, set below
    manifest_rows = io.read_csv(suite_dir / "suite_manifest.csv")
    rec["lhs_seed"] = int(manifest_rows[0]["lhs_seed"])
    design = doe.lhs(100, 2, seed=rec["lhs_seed"])
    y = doe.evaluate_design(mabbob.problem_from_record(rec), design)
    fv = ela.compute_features(design, y)
    for name, value in zip(fv.names, fv.values):
        got = float(rows[0][name])
        if np.isfinite(value):
            assert got == pytest.approx(value, rel=1e-12)


def test_grid_spec_paper_count():
    grid = parse_grid_spec("kmeans k=5..500:5 n_init=10,20")
    assert len(grid) == 200
    ks = sorted({c.k for c in grid})
    assert ks == list(range(5, 501, 5))


def test_grid_spec_multi_clause():
    grid = parse_grid_spec(
        "kmeans k=2,3 n_init=10; agglomerative k=2 linkage=ward,average;"
        " gmm k=4 covariance=diag; birch k=2 threshold=0.5,1.0")
    algos = [c.algorithm for c in grid]
    assert algos.count("kmeans") == 2
    assert algos.count("agglomerative") == 2
    assert algos.count("gmm") == 1
    assert algos.count("birch") == 2


def test_grid_spec_errors():
    with pytest.raises(cli.UsageError):
        parse_grid_spec("dbscan k=3")
    with pytest.raises(cli.UsageError):
        parse_grid_spec("kmeans n_init=10")
    with pytest.raises(cli.UsageError):
        parse_grid_spec("")
    with pytest.raises(cli.UsageError):
        parse_grid_spec("kmeans k=3 linkage=ward")


def test_cluster_and_analyze_end_to_end(suite_dir):
    run(["features", "--out-dir", str(suite_dir)])
    assert run(["cluster", "--out-dir", str(suite_dir),
                "--representation", str(suite_dir / "features_ela.csv"),
                "--name", "ela", "--grid", "kmeans k=2,3 n_init=10"]) == 0
    labels = io.read_csv(suite_dir / "labels_ela.csv")
    assert len(labels) == 6
    scores = io.read_csv(suite_dir / "cluster_scores_ela.csv")
    assert len(scores) == 2
    assert all(row["status"] == "ok" for row in scores)
    assert (suite_dir / "preprocessing_ela.json").exists()

    assert run(["analyze", "--out-dir", str(suite_dir),
                "--labels", str(suite_dir / "labels_ela.csv")]) == 0
    cov = io.read_csv(suite_dir / "coverage_ela.csv")
    assert len(cov) == 6
    summary = io.read_csv(suite_dir / "hcv_summary.csv")
    assert summary[0]["representation"] == "ela"
    # single representation: no similarity files
    assert not list(suite_dir.glob("similarity_*"))


def test_analyze_pairwise_similarity_counts(suite_dir, tmp_path):
    run(["features", "--out-dir", str(suite_dir)])
    # fabricate four labelings to get C(4,2) = 6 similarity matrices
    rows = io.read_csv(suite_dir / "suite_manifest.csv")
    rng = np.random.default_rng(0)
    label_files = []
    for name in ("r1", "r2", "r3", "r4"):
        path = suite_dir / f"labels_{name}.csv"
        io.write_csv(path, ["class_i", "class_j", "instance", "alpha",
                            "cluster"],
                     [[r["class_i"], r["class_j"], r["instance"], r["alpha"],
                       int(rng.integers(0, 2))] for r in rows])
        label_files.append(str(path))
    assert run(["analyze", "--out-dir", str(suite_dir),
                "--labels"] + label_files) == 0
    assert len(list(suite_dir.glob("similarity_*.csv"))) == 6
    assert len(list(suite_dir.glob("similarity_*.order.json"))) == 6
    assert len(list(suite_dir.glob("overlap_*.json"))) == 6


def test_export_viz_bundle(suite_dir):
    run(["features", "--out-dir", str(suite_dir)])
    run(["cluster", "--out-dir", str(suite_dir),
         "--representation", str(suite_dir / "features_ela.csv"),
         "--name", "ela", "--grid", "kmeans k=2 n_init=10"])
    run(["analyze", "--out-dir", str(suite_dir),
         "--labels", str(suite_dir / "labels_ela.csv")])
    assert run(["export-viz", "--out-dir", str(suite_dir)]) == 0
    bundle = suite_dir / "viz_bundle"
    index = io.read_json(bundle / "bundle.json")
    assert index["n_problems"] == 6
    assert index["files"]["labels"] == ["labels_ela.csv"]
    for group in index["files"].values():
        for name in group:
            assert (bundle / name).exists()


def test_export_viz_missing_artifacts(tmp_path):
    out = tmp_path / "empty"
    run(["generate", "--out-dir", str(out), "--classes", "1,2",
         "--instances", "1", "--alphas", "0.5", "--dim", "2"])
    assert run(["export-viz", "--out-dir", str(out)]) == cli.EXIT_DATA


def test_usage_errors():
    assert run(["no-such-verb"]) == cli.EXIT_USAGE
    assert run(["cluster", "--representation", "x.csv",
                "--grid", "bogus k=2"]) == cli.EXIT_USAGE


def test_missing_manifest_is_data_error(tmp_path):
    assert run(["features", "--out-dir", str(tmp_path / "void")]) == cli.EXIT_DATA


def test_sample_dump(suite_dir):
    assert run(["sample", "--out-dir", str(suite_dir)]) == 0
    files = sorted((suite_dir / "samples").glob("*.csv"))
    assert len(files) == 6
    rows = io.read_csv(files[0])
    assert len(rows) == 100  # 50d at d=2
    assert list(rows[0].keys()) == ["x1", "x2", "y"]
