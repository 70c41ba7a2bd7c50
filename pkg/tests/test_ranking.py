"""NDCG, classification metrics, rater agreement, rankers, and evaluation."""

from __future__ import annotations

import hashlib
import math

import numpy as np
import pytest

from conftest import make_record, make_store
from modq.ranking.agreement import krippendorff_alpha
from modq.ranking.evaluate import evaluate_articles, render_reports
from modq.ranking.metrics import (
    classification_at_threshold,
    classification_metrics,
    dcg,
    ndcg_at_k,
)
from modq.ranking.ranker import (
    BaselineRanker,
    RandomRanker,
    rank_article,
    rank_comments,
)


class FixedRanker:
    """Test double scoring comments from a lookup table."""

    name = "fixed"
    classify_threshold = 0.5

    def __init__(self, table: dict[str, float]):
        self.table = table

    def scores(self, comment_ids):
        return np.array([self.table[c] for c in comment_ids], dtype=np.float64)


class TestDCG:
    def test_counts_only_relevant_positions(self):
        assert dcg([1, 1, 0], k=3) == 1.0 + 1.0 / math.log2(3)

    def test_position_discount(self):
        assert dcg([0, 1], k=2) == 1.0 / math.log2(3)

    def test_truncates_at_k(self):
        assert dcg([1, 1, 1], k=1) == 1.0


class TestNDCG:
    def test_perfect_ranking(self):
        assert ndcg_at_k([1, 1, 0, 0], k=4) == 1.0

    def test_single_relevant_last(self):
        # relevant at rank 3 of 3: DCG = 1/log2(4), ideal = 1
        assert ndcg_at_k([0, 0, 1], k=3) == pytest.approx(0.5, rel=1e-12)

    def test_two_relevant_at_ranks_one_and_four(self):
        expected = (1.0 + 1.0 / math.log2(5)) / (1.0 + 1.0 / math.log2(3))
        got = ndcg_at_k([1, 0, 0, 1, 0], k=5)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(0.87722, abs=5e-6)

    def test_no_relevant_returns_none(self):
        assert ndcg_at_k([0, 0, 0], k=3) is None
        assert ndcg_at_k([], k=3) is None

    def test_ideal_caps_at_relevant_count(self):
        # both relevant items in the top 2: perfect even though k > count
        assert ndcg_at_k([1, 1, 0, 0], k=2) == 1.0

    def test_k_shorter_than_list(self):
        # relevant item falls outside the window
        assert ndcg_at_k([0, 1], k=1) == 0.0

    def test_k_longer_than_list(self):
        assert ndcg_at_k([1], k=10) == 1.0

    def test_invalid_k(self):
        with pytest.raises(ValueError):
            ndcg_at_k([1, 0], k=0)


class TestClassificationMetrics:
    def test_reference_counts(self):
        # TP=2 FP=2 FN=6 -> precision 0.5, recall 0.25, F1 1/3
        y_true = [1, 1, 0, 0, 1, 1, 1, 1, 1, 1]
        y_pred = [1, 1, 1, 1, 0, 0, 0, 0, 0, 0]
        m = classification_metrics(y_true, y_pred)
        assert (m.tp, m.fp, m.fn, m.tn) == (2, 2, 6, 0)
        assert m.precision == 0.5
        assert m.recall == 0.25
        assert m.f1 == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_f1_is_harmonic_mean(self):
        m = classification_metrics([1, 0, 1, 1, 0, 1], [1, 1, 0, 1, 0, 0])
        expected = 2 * m.precision * m.recall / (m.precision + m.recall)
        assert abs(m.f1 - expected) < 1e-12

    def test_zero_conventions(self):
        m = classification_metrics([1, 1, 0], [0, 0, 0])
        assert m.precision == 0.0
        assert m.recall == 0.0
        assert m.f1 == 0.0
        assert m.accuracy == pytest.approx(1.0 / 3.0)

    def test_all_correct(self):
        m = classification_metrics([1, 0, 1], [1, 0, 1])
        assert (m.precision, m.recall, m.f1, m.accuracy) == (1.0, 1.0, 1.0, 1.0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            classification_metrics([1, 0], [1])

    def test_threshold_wrapper_is_strict(self):
        m = classification_at_threshold([0.6, 0.5, 0.4], [1, 1, 0], threshold=0.5)
        assert (m.tp, m.fp, m.fn, m.tn) == (1, 0, 1, 1)
        assert m.precision == 1.0
        assert m.recall == 0.5

    def test_json_dict(self):
        m = classification_metrics([1], [1])
        d = m.to_json_dict()
        assert d["tp"] == 1 and d["f1"] == 1.0


class TestKrippendorffAlpha:
    FIXTURE = [(1, 1), (0, 0), (1, 0), (0, 0)]

    def test_reference_fixture(self):
        alpha = krippendorff_alpha(self.FIXTURE)
        assert alpha == pytest.approx(16.0 / 30.0, abs=1e-12)
        assert alpha == pytest.approx(0.53333, abs=1e-4)

    def test_perfect_agreement(self):
        assert krippendorff_alpha([(1, 1), (0, 0), (1, 1)]) == 1.0

    def test_single_category_everywhere(self):
        # expected disagreement 0: agreement is trivially perfect
        assert krippendorff_alpha([(1, 1), (1, 1)]) == 1.0

    def test_unratable_units_return_none(self):
        assert krippendorff_alpha([]) is None
        assert krippendorff_alpha([(1,), (0,), (None, 1)]) is None

    def test_missing_ratings_ignored(self):
        padded = [(1, 1, None), (0, None, 0), (1, 0, None), (None, 0, 0)]
        assert krippendorff_alpha(padded) == pytest.approx(16.0 / 30.0, abs=1e-12)

    def test_underfilled_units_do_not_contribute(self):
        extended = list(self.FIXTURE) + [(1,), (None, None), (0,)]
        assert krippendorff_alpha(extended) == pytest.approx(
            krippendorff_alpha(self.FIXTURE), abs=1e-15
        )

    def test_invariance_under_unit_and_rater_order(self):
        base = krippendorff_alpha(self.FIXTURE)
        reordered_units = krippendorff_alpha(list(reversed(self.FIXTURE)))
        swapped_raters = krippendorff_alpha([(b, a) for a, b in self.FIXTURE])
        assert reordered_units == pytest.approx(base, abs=1e-15)
        assert swapped_raters == pytest.approx(base, abs=1e-15)

    def test_systematic_disagreement_is_negative(self):
        alpha = krippendorff_alpha([(1, 0), (0, 1), (1, 0), (0, 1)])
        assert alpha is not None and alpha < 0.0


class TestRankComments:
    def test_orders_by_score_descending(self):
        got = rank_comments(["a", "b", "c"], np.array([0.1, 0.9, 0.5]))
        assert got == ["b", "c", "a"]

    def test_ties_break_on_comment_id(self):
        got = rank_comments(["b", "a", "c"], np.array([0.5, 0.5, 0.9]))
        assert got == ["c", "a", "b"]

    def test_k_truncates(self):
        got = rank_comments(["a", "b", "c"], np.array([0.1, 0.9, 0.5]), k=2)
        assert got == ["b", "c"]

    def test_k_beyond_length(self):
        got = rank_comments(["a", "b"], np.array([0.2, 0.1]), k=10)
        assert got == ["a", "b"]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            rank_comments(["a"], np.array([0.1, 0.2]))


class TestRankArticle:
    def make_article_store(self):
        return make_store(
            [
                make_record("c1", created_at="2021-03-01T09:00:00Z"),
                make_record("c2", created_at="2021-03-01T09:05:00Z"),
                make_record("c3", created_at="2021-03-01T09:10:00Z"),
            ]
        )

    def test_entries_sorted_and_truncated(self):
        store = self.make_article_store()
        ranker = FixedRanker({"c1": 0.2, "c2": 0.9, "c3": 0.5})
        rec = rank_article(store, ranker, "a1", k=2)
        assert rec.article_id == "a1"
        assert rec.k == 2
        assert [cid for cid, _ in rec.entries] == ["c2", "c3"]
        assert [p for _, p in rec.entries] == [0.9, 0.5]

    def test_json_dict(self):
        store = self.make_article_store()
        rec = rank_article(store, FixedRanker({"c1": 0.2, "c2": 0.9, "c3": 0.5}),
                           "a1", k=3)
        d = rec.to_json_dict()
        assert d["article_id"] == "a1"
        assert d["entries"][0] == {"comment_id": "c2", "probability": 0.9}


class TestRandomRanker:
    def test_matches_hash_formula(self):
        r = RandomRanker(seed=7)
        digest = hashlib.sha256(b"7:c42").digest()
        expected = int.from_bytes(digest[:8], "big") / 2**64
        assert r.scores(["c42"])[0] == expected

    def test_score_depends_only_on_seed_and_id(self):
        r = RandomRanker(seed=3)
        a = r.scores(["x", "y", "z"])
        b = r.scores(["z", "x", "y"])
        assert a[0] == b[1] and a[1] == b[2] and a[2] == b[0]

    def test_seed_changes_scores(self):
        a = RandomRanker(seed=0).scores(["x", "y"])
        b = RandomRanker(seed=1).scores(["x", "y"])
        assert not np.array_equal(a, b)

    def test_scores_in_unit_interval(self):
        ids = [f"c{i}" for i in range(500)]
        s = RandomRanker(seed=2).scores(ids)
        assert np.all(s >= 0.0) and np.all(s < 1.0)
        # uniform-ish spread, coarse sanity bound
        assert 0.4 < s.mean() < 0.6


class TestBaselineRanker:
    def test_scores_and_threshold(self):
        store = make_store(
            [
                make_record("c1", user_key="u1", created_at="2021-03-01T09:00:00Z",
                            status="featured"),
                make_record("c2", user_key="u1", created_at="2021-03-01T10:00:00Z"),
                make_record("c3", user_key="u2", created_at="2021-03-01T10:00:00Z"),
            ]
        )
        ranker = BaselineRanker(store)
        assert ranker.name == "baseline"
        assert ranker.classify_threshold == 0.03
        assert ranker.scores(["c2", "c3"]).tolist() == [1.0, 0.0]


class TestEvaluateArticles:
    def make_two_article_store(self):
        return make_store(
            [
                make_record("c1", article_id="a1", status="featured",
                            created_at="2021-03-01T09:00:00Z"),
                make_record("c2", article_id="a1",
                            created_at="2021-03-01T09:05:00Z"),
                make_record("c3", article_id="a1",
                            created_at="2021-03-01T09:10:00Z"),
                make_record("d1", article_id="a2",
                            created_at="2021-03-01T09:00:00Z"),
                make_record("d2", article_id="a2",
                            created_at="2021-03-01T09:05:00Z"),
            ]
        )

    def test_perfect_ranker(self):
        store = self.make_two_article_store()
        ranker = FixedRanker(
            {"c1": 0.9, "c2": 0.4, "c3": 0.1, "d1": 0.8, "d2": 0.2}
        )
        report = evaluate_articles(store, ["a1", "a2"], ranker, ks=(1, 3))
        assert report.n_articles == 2
        assert report.n_ranked_articles == 1
        assert report.skipped_articles == 1
        assert report.n_comments == 5
        assert report.mean_ndcg == {1: 1.0, 3: 1.0}
        m = report.classification
        assert (m.tp, m.fp, m.fn, m.tn) == (1, 1, 0, 3)
        assert m.precision == 0.5 and m.recall == 1.0

    def test_worst_ranker(self):
        store = self.make_two_article_store()
        ranker = FixedRanker(
            {"c1": 0.1, "c2": 0.9, "c3": 0.4, "d1": 0.8, "d2": 0.2}
        )
        report = evaluate_articles(store, ["a1", "a2"], ranker, ks=(3,))
        # featured comment ranked last of three: 1/log2(4)
        assert report.mean_ndcg[3] == pytest.approx(0.5, rel=1e-12)

    def test_no_rankable_articles(self):
        store = self.make_two_article_store()
        ranker = FixedRanker({"d1": 0.8, "d2": 0.2})
        report = evaluate_articles(store, ["a2"], ranker, ks=(3,))
        assert report.n_ranked_articles == 0
        assert report.mean_ndcg[3] is None

    def test_json_dict_has_skip_count(self):
        store = self.make_two_article_store()
        ranker = FixedRanker(
            {"c1": 0.9, "c2": 0.4, "c3": 0.1, "d1": 0.8, "d2": 0.2}
        )
        d = evaluate_articles(store, ["a1", "a2"], ranker).to_json_dict()
        assert d["skipped_articles"] == 1
        assert d["mean_ndcg"]["3"] == 1.0


class TestRenderReports:
    def test_table_contents(self):
        store = TestEvaluateArticles().make_two_article_store()
        good = FixedRanker({"c1": 0.9, "c2": 0.4, "c3": 0.1, "d1": 0.8, "d2": 0.2})
        reports = [
            evaluate_articles(store, ["a1", "a2"], good, ks=(3,)),
            evaluate_articles(store, ["a2"], FixedRanker({"d1": 0.8, "d2": 0.2}),
                              ks=(3,)),
        ]
        text = render_reports(reports)
        assert "ndcg@3" in text
        assert "fixed" in text
        assert "skipped=1" in text
        assert "n/a" in render_reports(reports[1:])

    def test_empty(self):
        assert render_reports([]) == "(no reports)\n"
