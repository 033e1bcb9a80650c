"""Tests for coverage, cross-similarity, overlap, and performance alignment."""

import numpy as np
import pytest

from probscape import analysis, cluster as cl, mabbob
from probscape.metrics import cosine


def make_assignment(labels, name="r"):
    labels = np.asarray(labels)
    k = max(2, len(np.unique(labels)))
    return cl.ClusterAssignment(config=cl.make_config("kmeans", k),
                                representation=name, labels=labels)


def small_manifest():
    # 2 combinations x 3 variants each
    return [{"class_i": ci, "class_j": cj, "instance": m, "alpha": 0.5}
            for ci, cj in ((1, 2), (2, 1)) for m in (1, 2, 3)]


def test_coverage_hand_fixture():
    records = small_manifest()
    cov = analysis.coverage(make_assignment([0, 0, 1, 1, 1, 0]), records)
    assert cov.combos == [(1, 2), (2, 1)]
    assert cov.clusters == [0, 1]
    assert np.array_equal(cov.counts, [[2, 1], [1, 2]])
    assert np.array_equal(cov.meta_vector(1), [1, 2])


def test_coverage_single_cluster():
    records = small_manifest()
    cov = analysis.coverage(make_assignment([0] * 6), records)
    assert cov.counts.shape == (2, 1)
    assert np.array_equal(cov.counts[:, 0], [3, 3])


def test_coverage_conservation_full_suite_shape():
    records = mabbob.suite_records(range(1, 25), range(1, 6),
                                   (0.25, 0.5, 0.75), dim=10)
    rng = np.random.default_rng(0)
    labels = rng.integers(0, 7, len(records))
    cov = analysis.coverage(make_assignment(labels), records)
    assert cov.counts.shape == (552, 7)
    assert np.all(cov.counts.sum(axis=1) == 15)
    assert np.array_equal(cov.counts.sum(axis=0), np.bincount(labels))
    assert cov.counts.sum() == 8280


def test_coverage_misalignment_rejected():
    with pytest.raises(ValueError):
        analysis.coverage(make_assignment([0, 1]), small_manifest())


def test_cross_similarity_self():
    records = small_manifest()
    cov = analysis.coverage(make_assignment([0, 0, 1, 1, 1, 0]), records)
    s = analysis.cross_similarity(cov, cov)
    assert np.allclose(np.diag(s.values), 1.0)
    assert np.all(s.values <= 1.0 + 1e-12)


def test_cross_similarity_disjoint_supports():
    a = analysis.CoverageMatrix("a", [(1, 2), (2, 1)], [0, 1],
                                np.array([[3, 0], [0, 3]]))
    b = analysis.CoverageMatrix("b", [(1, 2), (2, 1)], [0, 1],
                                np.array([[0, 3], [3, 0]]))
    s = analysis.cross_similarity(a, b, ordered=False)
    assert np.allclose(np.diag(s.values), 0.0)


def test_cross_similarity_hand_arithmetic():
    a = analysis.CoverageMatrix("a", [(1, 2), (2, 1), (3, 1)], [0, 1, 2],
                                np.array([[1, 0, 2], [2, 1, 0], [0, 3, 1]]))
    b = analysis.CoverageMatrix("b", [(1, 2), (2, 1), (3, 1)], [0, 1],
                                np.array([[1, 1], [0, 2], [2, 0]]))
    s = analysis.cross_similarity(a, b, ordered=False)
    assert s.values.shape == (3, 2)
    for j in range(3):
        for l in range(2):
            assert s.values[j, l] == pytest.approx(
                cosine(a.counts[:, j], b.counts[:, l]), abs=1e-12)


def test_cross_similarity_transpose_property():
    rng = np.random.default_rng(1)
    combos = [(1, 2), (2, 1), (1, 3), (3, 1)]
    a = analysis.CoverageMatrix("a", combos, [0, 1, 2],
                                rng.integers(0, 6, (4, 3)))
    b = analysis.CoverageMatrix("b", combos, [0, 1],
                                rng.integers(0, 6, (4, 2)))
    ab = analysis.cross_similarity(a, b, ordered=False)
    ba = analysis.cross_similarity(b, a, ordered=False)
    assert np.allclose(ab.values, ba.values.T, atol=1e-12)


def test_cross_similarity_relabel_permutes_values():
    records = small_manifest()
    labels = np.array([0, 1, 1, 0, 2, 2])
    perm = np.array([2, 0, 1])
    cov1 = analysis.coverage(make_assignment(labels), records)
    cov2 = analysis.coverage(make_assignment(perm[labels]), records)
    base = analysis.coverage(make_assignment([0, 0, 0, 1, 1, 1]), records)
    s1 = analysis.cross_similarity(cov1, base, ordered=False)
    s2 = analysis.cross_similarity(cov2, base, ordered=False)
    assert sorted(np.round(s1.values.ravel(), 12)) == \
        sorted(np.round(s2.values.ravel(), 12))


def test_cross_similarity_row_mismatch():
    a = analysis.CoverageMatrix("a", [(1, 2)], [0], np.array([[3]]))
    b = analysis.CoverageMatrix("b", [(2, 1)], [0], np.array([[3]]))
    with pytest.raises(ValueError):
        analysis.cross_similarity(a, b)


def block_similarity():
    values = np.array([
        [1.0, 0.9, 0.0, 0.1],
        [0.0, 0.1, 0.9, 1.0],
        [0.9, 1.0, 0.1, 0.0],
        [0.1, 0.0, 1.0, 0.9],
    ])
    return analysis.SimilarityMatrix("a", "b", [0, 1, 2, 3], [0, 1, 2, 3],
                                     values)


def test_dendrogram_order_groups_blocks():
    s = analysis.dendrogram_order(block_similarity())
    assert sorted(s.row_order) == [0, 1, 2, 3]
    assert sorted(s.col_order) == [0, 1, 2, 3]
    # rows 0 and 2 share a profile block, rows 1 and 3 the other
    pos = {r: i for i, r in enumerate(s.row_order)}
    assert abs(pos[0] - pos[2]) == 1
    assert abs(pos[1] - pos[3]) == 1


def test_dendrogram_order_single_leaf():
    s = analysis.SimilarityMatrix("a", "b", [0], [0], np.array([[1.0]]))
    analysis.dendrogram_order(s)
    assert s.row_order == [0] and s.col_order == [0]
    assert s.row_merges == []


def test_overlap_report_cases():
    combos = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (1, 4), (4, 1)]
    counts_a = np.zeros((8, 1), dtype=int)
    counts_b = np.zeros((8, 1), dtype=int)
    counts_a[[3, 7], 0] = (5, 10)
    counts_b[[3, 7], 0] = (10, 5)
    a = analysis.CoverageMatrix("a", combos, [0], counts_a)
    b = analysis.CoverageMatrix("b", combos, [0], counts_b)
    s = analysis.cross_similarity(a, b, ordered=False)
    report = analysis.overlap_report(s, a, b, threshold=0.5, top_m=5)
    assert len(report) == 1
    contribs = report[0]["contributors"]
    assert {c["contribution"] for c in contribs} == {50.0}
    assert all(c["share"] == pytest.approx(0.5) for c in contribs)

    # single shared combination: sole contributor with share 1
    counts_b2 = np.zeros((8, 1), dtype=int)
    counts_b2[[3, 0], 0] = (4, 9)
    b2 = analysis.CoverageMatrix("b", combos, [0], counts_b2)
    s2 = analysis.cross_similarity(a, b2, ordered=False)
    report2 = analysis.overlap_report(s2, a, b2, threshold=1e-6, top_m=3)
    assert len(report2[0]["contributors"]) == 1
    assert report2[0]["contributors"][0]["share"] == 1.0

    # threshold 1 with non-identical columns: empty
    assert analysis.overlap_report(s2, a, b2, threshold=1.0, top_m=3) == []
    with pytest.raises(ValueError):
        analysis.overlap_report(s, a, b, threshold=0.0, top_m=3)


def perf_fixture(scores, portfolio="DE"):
    records = small_manifest()
    keys = [(r["class_i"], r["class_j"], r["instance"], r["alpha"])
            for r in records]
    return records, analysis.PerformanceTable(
        portfolio=portfolio, config_ids=[f"c{j}" for j in range(5)],
        keys=keys, scores=np.asarray(scores, dtype=float))


def test_perf_table_validation():
    records = small_manifest()
    keys = [(r["class_i"], r["class_j"], r["instance"], r["alpha"])
            for r in records]
    with pytest.raises(ValueError):
        analysis.PerformanceTable("DE", ["a", "b"], keys, np.zeros((6, 2)))
    with pytest.raises(ValueError):
        analysis.PerformanceTable("DE", list("abcde"), keys, np.zeros((5, 5)))


def test_perf_alignment_perfect():
    scores = np.ones((6, 5))
    scores[:3, 0] = 0.0  # first combo's variants all prefer config 0
    scores[3:, 2] = 0.0
    records, perf = perf_fixture(scores)
    out = analysis.perf_alignment(make_assignment([0, 0, 0, 1, 1, 1]),
                                  perf, records)
    assert (out.homogeneity, out.completeness, out.v_measure) == (1, 1, 1)


def test_perf_alignment_hand_fixture():
    from probscape.metrics import hcv
    rng = np.random.default_rng(5)
    scores = rng.random((6, 5))
    records, perf = perf_fixture(scores)
    labels = np.array([0, 1, 0, 1, 0, 1])
    got = analysis.perf_alignment(make_assignment(labels), perf, records)
    want = hcv(np.argmin(scores, axis=1), labels)
    assert got == want


def test_perf_alignment_monotone_invariance():
    rng = np.random.default_rng(6)
    scores = rng.random((6, 5))
    records, perf = perf_fixture(scores)
    _, perf_exp = perf_fixture(np.exp(7 * scores))
    labels = np.array([0, 0, 1, 1, 2, 2])
    a = analysis.perf_alignment(make_assignment(labels), perf, records)
    b = analysis.perf_alignment(make_assignment(labels), perf_exp, records)
    assert a == b


def test_perf_alignment_missing_rows():
    records, perf = perf_fixture(np.random.default_rng(7).random((6, 5)))
    short = analysis.PerformanceTable("DE", perf.config_ids, perf.keys[:-1],
                                      perf.scores[:-1])
    with pytest.raises(ValueError, match="missing"):
        analysis.perf_alignment(make_assignment([0, 1] * 3), short, records)


def test_best_config_tie_breaking_and_orientation():
    records = small_manifest()
    keys = [(r["class_i"], r["class_j"], r["instance"], r["alpha"])
            for r in records]
    scores = np.ones((6, 5))
    scores[:, 2] = 1.0  # ties everywhere: lowest index wins
    perf = analysis.PerformanceTable("PSO", list("abcde"), keys, scores)
    assert np.all(perf.best_config == 0)
    oriented = analysis.PerformanceTable("PSO", list("abcde"), keys,
                                         np.tile([1, 5, 2, 3, 4], (6, 1)),
                                         higher_is_better=True)
    assert np.all(oriented.best_config == 1)
