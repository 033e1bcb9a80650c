"""Command-line driver for the pipeline.

Verbs: generate, sample, features, ingest, cluster, analyze, export-viz.
Every artifact is CSV (tables) or JSON (structure) under --out-dir, with
content hashes accumulated in run_manifest.json so replays can be
verified bit for bit.
"""

from __future__ import annotations

import argparse
import logging
import shutil
import sys
import time
from pathlib import Path

import numpy as np

from . import analysis, cluster as cl, doe, ela, io, mabbob, representations

log = logging.getLogger("probscape")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

SUITE_MANIFEST = "suite_manifest.csv"
SUITE_COLUMNS = ("combo_index", "class_i", "class_j", "instance", "alpha",
                 "dim", "lhs_seed")


class UsageError(Exception):
    pass


def _parse_int_list(text: str) -> list[int]:
    """Comma list with a..b ranges, e.g. '1,3,5..8'."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if ".." in tok:
            lo, hi = tok.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(tok))
    return out


def _load_suite(out_dir: Path) -> list[dict]:
    path = out_dir / SUITE_MANIFEST
    if not path.exists():
        raise FileNotFoundError(f"no suite manifest at {path}; run generate")
    records = []
    for row in io.read_csv(path):
        records.append({
            "combo_index": int(row["combo_index"]),
            "class_i": int(row["class_i"]), "class_j": int(row["class_j"]),
            "instance": int(row["instance"]), "alpha": float(row["alpha"]),
            "dim": int(row["dim"]), "lhs_seed": int(row["lhs_seed"]),
        })
    return records


def _design_for(record: dict) -> doe.DesignMatrix:
    n = 50 * record["dim"]
    return doe.lhs(n, record["dim"], seed=record["lhs_seed"])


def _skip_or_go(path: Path, force: bool) -> bool:
    """True when an existing artifact should be reused."""
    if path.exists() and not force:
        print(f"reusing existing {path} (pass --force to rebuild)")
        return True
    return False


# ---------------------------------------------------------------------------
# Commands.

def cmd_generate(args) -> int:
    out_dir = Path(args.out_dir)
    manifest = io.RunManifest(out_dir)
    path = out_dir / SUITE_MANIFEST
    if _skip_or_go(path, args.force):
        return EXIT_OK
    classes = _parse_int_list(args.classes)
    instances = _parse_int_list(args.instances)
    alphas = [float(a) for a in args.alphas.split(",")]
    records = mabbob.suite_records(classes, instances, alphas, args.dim,
                                   master_seed=args.seed)
    io.write_csv(path, list(SUITE_COLUMNS),
                 [[r[c] for c in SUITE_COLUMNS] for r in records])
    manifest.set_config("suite", {
        "classes": classes, "instances": instances, "alphas": alphas,
        "dim": args.dim, "master_seed": args.seed,
        "bounds": list(doe.DEFAULT_BOUNDS), "design_rule": "50d",
    })
    manifest.record_artifact(path)
    n_combos = len({(r["class_i"], r["class_j"]) for r in records})
    print(f"wrote {path}: {len(records)} problems over {n_combos} combinations")
    return EXIT_OK


def cmd_sample(args) -> int:
    out_dir = Path(args.out_dir)
    manifest = io.RunManifest(out_dir)
    records = _load_suite(out_dir)
    sample_dir = out_dir / "samples"
    written = 0
    for rec in records:
        name = (f"sample_c{rec['class_i']:02d}_c{rec['class_j']:02d}"
                f"_i{rec['instance']}_a{rec['alpha']}.csv")
        path = sample_dir / name
        if _skip_or_go(path, args.force):
            continue
        design = _design_for(rec)
        problem = mabbob.problem_from_record(rec)
        y = doe.evaluate_design(problem, design)
        header = [f"x{j + 1}" for j in range(rec["dim"])] + ["y"]
        rows = [list(map(float, design.points[i])) + [float(y[i])]
                for i in range(design.n_samples)]
        io.write_csv(path, header, rows)
        manifest.record_artifact(path)
        written += 1
    print(f"wrote {written} sample files under {sample_dir}")
    return EXIT_OK


def cmd_features(args) -> int:
    out_dir = Path(args.out_dir)
    manifest = io.RunManifest(out_dir)
    path = out_dir / "features_ela.csv"
    if _skip_or_go(path, args.force):
        return EXIT_OK
    records = _load_suite(out_dir)
    groups = tuple(args.groups.split(",")) if args.groups else ela.GROUPS
    names = [e["name"] for e in ela.catalog(groups)]
    rows = []
    degenerate = 0
    t0 = time.perf_counter()
    for idx, rec in enumerate(records):
        design = _design_for(rec)
        problem = mabbob.problem_from_record(rec)
        y = doe.evaluate_design(problem, design)
        fv = ela.compute_features(design, y, groups)
        degenerate += sum(1 for f in fv.flags if f == "degenerate")
        rows.append([rec[c] for c in representations.KEY_COLUMNS]
                    + [float(v) for v in fv.values])
        if (idx + 1) % 50 == 0 or idx + 1 == len(records):
            print(f"  features {idx + 1}/{len(records)} "
                  f"({time.perf_counter() - t0:.1f}s)")
    io.write_csv(path, list(representations.KEY_COLUMNS) + names, rows)
    manifest.set_config("features", {"groups": list(groups)})
    manifest.record_artifact(path)
    print(f"wrote {path}: {len(rows)} rows x {len(names)} features, "
          f"{degenerate} degenerate cells")
    return EXIT_OK


def cmd_ingest(args) -> int:
    out_dir = Path(args.out_dir)
    manifest = io.RunManifest(out_dir)
    records = _load_suite(out_dir)
    path = out_dir / f"features_{args.name}.csv"
    if _skip_or_go(path, args.force):
        return EXIT_OK
    m = representations.ingest_csv(args.path, args.name, records)
    header = list(representations.KEY_COLUMNS) + m.feature_names
    rows = [list(key) + [float(v) for v in m.values[i]]
            for i, key in enumerate(m.keys)]
    io.write_csv(path, header, rows)
    manifest.record_artifact(path)
    print(f"ingested {args.path} -> {path}: {m.n} rows x {m.d} features")
    return EXIT_OK


def parse_grid_spec(spec: str, seed: int = 42) -> list[cl.ClusteringConfig]:
    """Parse e.g. 'kmeans k=5..25:5 n_init=10,20; birch k=5 threshold=0.5'.

    Clauses are semicolon-separated: an algorithm name followed by
    key=value tokens. k accepts lo..hi:step ranges; every other value is
    a comma list. The grid is the cross product within each clause.
    """
    grid = []
    for clause in spec.split(";"):
        tokens = clause.split()
        if not tokens:
            continue
        algo = tokens[0]
        if algo not in cl.ALGORITHMS:
            raise UsageError(f"unknown algorithm {algo!r} in grid spec")
        k_values: list[int] = []
        params: dict[str, list] = {}
        for tok in tokens[1:]:
            if "=" not in tok:
                raise UsageError(f"malformed grid token {tok!r}")
            key, value = tok.split("=", 1)
            if key == "k":
                for part in value.split(","):
                    if ".." in part:
                        lo, rest = part.split("..")
                        hi, _, step = rest.partition(":")
                        k_values.extend(range(int(lo), int(hi) + 1,
                                              int(step or 1)))
                    else:
                        k_values.append(int(part))
            else:
                parsed = []
                for part in value.split(","):
                    try:
                        parsed.append(int(part))
                    except ValueError:
                        try:
                            parsed.append(float(part))
                        except ValueError:
                            parsed.append(part)
                params[key] = parsed
        if not k_values:
            raise UsageError(f"grid clause {clause!r} sets no k")
        combos = [{}]
        for key, values in params.items():
            combos = [{**c, key: v} for c in combos for v in values]
        for k in k_values:
            for c in combos:
                try:
                    grid.append(cl.make_config(algo, k, seed=seed, **c))
                except ValueError as err:
                    raise UsageError(str(err)) from None
    if not grid:
        raise UsageError("empty grid spec")
    return grid


def _load_representation(path: Path, name: str,
                         records: list[dict]) -> representations.RepresentationMatrix:
    return representations.ingest_csv(path, name, records)


def cmd_cluster(args) -> int:
    grid = parse_grid_spec(args.grid, seed=args.seed)
    out_dir = Path(args.out_dir)
    manifest = io.RunManifest(out_dir)
    records = _load_suite(out_dir)
    name = args.name or Path(args.representation).stem.replace("features_", "")
    scores_path = out_dir / f"cluster_scores_{name}.csv"
    labels_path = out_dir / f"labels_{name}.csv"
    if labels_path.exists() and scores_path.exists() and not args.force:
        print(f"reusing existing {labels_path} (pass --force to rebuild)")
        return EXIT_OK
    raw = _load_representation(Path(args.representation), name, records)
    # locally computed features mix scales; learned vectors arrive scaled
    standardize = args.standardize if args.standardize is not None \
        else name == "ela"
    m = representations.preprocess(raw, standardize=standardize)
    print(f"grid search over {len(grid)} configurations on {name} "
          f"({m.n} x {m.d})")
    best, scored = cl.grid_search(m.values, grid, representation=name)
    # timings go to an unhashed sidecar so replayed score tables stay
    # bit-identical
    io.write_csv(scores_path,
                 ["representation", "algorithm", "params", "k", "silhouette",
                  "n_effective_clusters", "status"],
                 [[row[c] for c in ("representation", "algorithm", "params",
                                    "k", "silhouette", "n_effective_clusters",
                                    "status")]
                  for row in scored])
    io.write_json(out_dir / f"cluster_timings_{name}.json",
                  [{"params": row["params"], "k": row["k"],
                    "wall_time_ms": row["wall_time_ms"]} for row in scored])
    io.write_csv(labels_path,
                 list(representations.KEY_COLUMNS) + ["cluster"],
                 [list(key) + [int(best.labels[i])]
                  for i, key in enumerate(m.keys)])
    prep_path = out_dir / f"preprocessing_{name}.json"
    io.write_json(prep_path, m.preprocessing)
    manifest.set_config(f"cluster_{name}", {
        "grid": args.grid, "standardize": standardize,
        "seed": args.seed, "best": best.config.canonical(),
        "best_silhouette": best.silhouette,
    })
    manifest.record_artifact(scores_path)
    manifest.record_artifact(labels_path)
    manifest.record_artifact(prep_path)
    print(f"best: {best.config.canonical()} silhouette={best.silhouette:.6f}")
    return EXIT_OK


def _load_labels(path: Path, records: list[dict]) -> np.ndarray:
    rows = io.read_csv(path)
    got = {representations.record_key(r): int(r["cluster"]) for r in rows}
    want = [representations.record_key(r) for r in records]
    missing = [k for k in want if k not in got]
    if missing:
        raise ValueError(f"{path}: labels missing {len(missing)} manifest "
                         f"rows, first few: {missing[:5]}")
    return np.array([got[k] for k in want], dtype=int)


def _load_perf(path: Path) -> analysis.PerformanceTable:
    rows = io.read_csv(path)
    if not rows:
        raise ValueError(f"{path}: empty performance table")
    key_cols = set(representations.KEY_COLUMNS) | {"combo_index", "portfolio"}
    config_ids = [c for c in rows[0] if c not in key_cols]
    keys, scores = [], []
    for row in rows:
        keys.append(representations.record_key(row))
        scores.append([float(row[c]) for c in config_ids])
    return analysis.PerformanceTable(
        portfolio=rows[0].get("portfolio", Path(path).stem),
        config_ids=config_ids, keys=keys,
        scores=np.array(scores, dtype=float))


def cmd_analyze(args) -> int:
    out_dir = Path(args.out_dir)
    manifest = io.RunManifest(out_dir)
    records = _load_suite(out_dir)
    label_paths = [Path(p) for p in args.labels]
    if not label_paths:
        raise UsageError("analyze needs at least one labels file")

    covs = {}
    for path in label_paths:
        name = path.stem.replace("labels_", "")
        labels = _load_labels(path, records)
        assignment = cl.ClusterAssignment(
            config=cl.make_config("kmeans", max(2, len(np.unique(labels)))),
            representation=name, labels=labels)
        cov = analysis.coverage(assignment, records)
        covs[name] = (assignment, cov)
        cov_path = out_dir / f"coverage_{name}.csv"
        io.write_csv(cov_path,
                     ["class_i", "class_j"] + [f"cluster_{c}" for c in cov.clusters],
                     [[ci, cj] + list(map(int, cov.counts[i]))
                      for i, (ci, cj) in enumerate(cov.combos)])
        manifest.record_artifact(cov_path)

    names = sorted(covs)
    summary_rows = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            s = analysis.cross_similarity(covs[a][1], covs[b][1])
            sim_path = out_dir / f"similarity_{a}__{b}.csv"
            io.write_csv(sim_path,
                         ["cluster_a"] + [f"cluster_{c}" for c in s.clusters_b],
                         [[s.clusters_a[j]] + [float(v) for v in s.values[j]]
                          for j in range(len(s.clusters_a))])
            order_path = out_dir / f"similarity_{a}__{b}.order.json"
            io.write_json(order_path, {
                "rep_a": a, "rep_b": b,
                "row_order": s.row_order, "col_order": s.col_order,
                "row_merges": s.row_merges, "col_merges": s.col_merges,
            })
            overlap_path = out_dir / f"overlap_{a}__{b}.json"
            io.write_json(overlap_path, analysis.overlap_report(
                s, covs[a][1], covs[b][1], threshold=args.threshold,
                top_m=args.top_m))
            for p in (sim_path, order_path, overlap_path):
                manifest.record_artifact(p)

    perf_tables = [_load_perf(Path(p)) for p in (args.perf or [])]
    for name in names:
        assignment, _ = covs[name]
        true_combo = np.array([r["combo_index"] for r in records])
        combo_hcv = analysis.hcv(true_combo, assignment.labels)
        summary_rows.append([name, "combination", combo_hcv.homogeneity,
                             combo_hcv.completeness, combo_hcv.v_measure])
        for perf in perf_tables:
            scores = analysis.perf_alignment(assignment, perf, records)
            summary_rows.append([name, perf.portfolio, scores.homogeneity,
                                 scores.completeness, scores.v_measure])
    summary_path = out_dir / "hcv_summary.csv"
    io.write_csv(summary_path,
                 ["representation", "reference", "homogeneity",
                  "completeness", "v_measure"], summary_rows)
    manifest.record_artifact(summary_path)
    print(f"analyzed {len(names)} representations; summary at {summary_path}")
    return EXIT_OK


def cmd_export_viz(args) -> int:
    out_dir = Path(args.out_dir)
    manifest = io.RunManifest(out_dir)
    bundle_dir = Path(args.bundle or out_dir / "viz_bundle")
    records = _load_suite(out_dir)

    wanted = {"suite": [out_dir / SUITE_MANIFEST]}
    for path in sorted(out_dir.glob("features_*.csv")):
        wanted.setdefault("representations", []).append(path)
    for path in sorted(out_dir.glob("labels_*.csv")):
        wanted.setdefault("labels", []).append(path)
    for path in sorted(out_dir.glob("similarity_*")):
        wanted.setdefault("similarity", []).append(path)
    missing = [str(p) for group in ("suite", "labels")
               for p in wanted.get(group, []) if not p.exists()]
    if not wanted.get("labels"):
        missing.append(str(out_dir / "labels_*.csv"))
    if missing:
        raise FileNotFoundError(
            "missing analysis artifacts: " + ", ".join(missing))

    bundle_dir.mkdir(parents=True, exist_ok=True)
    files = {}
    for group, paths in wanted.items():
        for src in paths:
            dst = bundle_dir / src.name
            shutil.copyfile(src, dst)
            files.setdefault(group, []).append(src.name)
    index = {
        "n_problems": len(records),
        "manifest_hash": io.sha256_file(out_dir / SUITE_MANIFEST),
        "files": files,
    }
    index_path = bundle_dir / "bundle.json"
    io.write_json(index_path, index)
    if index_path.is_relative_to(out_dir):
        manifest.record_artifact(index_path)
    print(f"exported viz bundle to {bundle_dir} "
          f"({sum(len(v) for v in files.values())} files)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point.

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="probscape",
                     description="Affine benchmark suite, landscape features, "
                                 "clustering and cross-representation analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out-dir", default="runs/default")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--force", action="store_true")

    p = sub.add_parser("generate", help="write the suite manifest")
    common(p)
    p.add_argument("--classes", default="1..24")
    p.add_argument("--instances", default="1..5")
    p.add_argument("--alphas", default="0.25,0.5,0.75")
    p.add_argument("--dim", type=int, default=10)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sample", help="dump raw LHS samples per problem")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("features", help="compute the landscape feature table")
    common(p)
    p.add_argument("--groups", default="")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("ingest", help="align an external representation CSV")
    common(p)
    p.add_argument("--path", required=True)
    p.add_argument("--name", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("cluster", help="grid-search clusterings")
    common(p)
    p.add_argument("--representation", required=True)
    p.add_argument("--name", default="")
    p.add_argument("--grid", required=True)
    p.add_argument("--standardize", action=argparse.BooleanOptionalAction,
                   default=None)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("analyze", help="coverage, similarity, HCV, alignment")
    common(p)
    p.add_argument("--labels", nargs="+", required=True)
    p.add_argument("--perf", nargs="*", default=[])
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--top-m", type=int, default=5)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export-viz", help="bundle artifacts for rendering")
    common(p)
    p.add_argument("--bundle", default="")
    p.set_defaults(func=cmd_export_viz)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, FileNotFoundError, KeyError) as err:
        print(f"data error: {err}", file=sys.stderr)
        return EXIT_DATA
    except Exception as err:  # noqa: BLE001 - last-resort exit code mapping
        print(f"internal error: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
