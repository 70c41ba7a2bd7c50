"""Corpus layer: record validation, store canonicalization, splits, synth."""

from __future__ import annotations

import json

import pytest

from modq.corpus.records import (
    Status,
    format_timestamp,
    parse_timestamp,
    record_from_dict,
)
from modq.corpus.splits import (
    DOWNSAMPLE_PRESETS,
    SplitSpec,
    chronological_split,
    downsample,
    proportional_allocation,
    train_val_test_split,
)
from modq.corpus.store import ingest_comments, write_jsonl
from modq.corpus.synth import SynthConfig, synth_generate
from modq.errors import CorpusError

from conftest import T0, make_record, make_store


class TestTimestamps:
    def test_z_suffix_and_minute_truncation(self):
        ts = parse_timestamp("2021-03-01T08:04:59Z")
        assert format_timestamp(ts) == "2021-03-01T08:04:00Z"

    def test_offset_normalized_to_utc(self):
        ts = parse_timestamp("2021-03-01T10:30:00+02:00")
        assert format_timestamp(ts) == "2021-03-01T08:30:00Z"

    def test_naive_taken_as_utc(self):
        ts = parse_timestamp("2021-03-01T08:30:00")
        assert format_timestamp(ts) == "2021-03-01T08:30:00Z"

    def test_garbage_rejected(self):
        with pytest.raises(CorpusError):
            parse_timestamp("yesterday")


class TestRecordValidation:
    def base(self) -> dict:
        return make_record("c1").to_json_dict()

    def test_round_trip(self):
        obj = self.base()
        assert record_from_dict(obj).to_json_dict() == obj

    @pytest.mark.parametrize("field", ["comment_id", "status", "created_at", "text"])
    def test_missing_field_rejected(self, field):
        obj = self.base()
        del obj[field]
        with pytest.raises(CorpusError):
            record_from_dict(obj)

    def test_negative_respect_rejected(self):
        obj = self.base() | {"respect_count": -1}
        with pytest.raises(CorpusError):
            record_from_dict(obj)

    def test_boolean_respect_rejected(self):
        obj = self.base() | {"respect_count": True}
        with pytest.raises(CorpusError):
            record_from_dict(obj)

    def test_unknown_status_rejected(self):
        obj = self.base() | {"status": "promoted"}
        with pytest.raises(CorpusError):
            record_from_dict(obj)

    def test_comment_before_article_rejected(self):
        obj = self.base() | {"created_at": "2021-02-28T23:59:00Z"}
        with pytest.raises(CorpusError):
            record_from_dict(obj)


class TestStore:
    def test_input_order_does_not_matter(self):
        recs = [
            make_record("c1", created_at="2021-03-01T09:00:00Z"),
            make_record("c2", created_at="2021-03-01T08:30:00Z"),
            make_record("c3", created_at="2021-03-01T10:00:00Z"),
        ]
        a = make_store(recs)
        b = make_store(reversed(recs))
        assert a.content_digest() == b.content_digest()
        assert [r.comment_id for r in a.comments] == ["c2", "c1", "c3"]

    def test_duplicate_comment_id_fatal(self):
        with pytest.raises(CorpusError, match="duplicate"):
            make_store([make_record("c1"), make_record("c1")])

    def test_unresolved_parent_normalized(self):
        store = make_store([make_record("c1", parent_id="ghost")])
        assert store.comment("c1").parent_id is None
        assert store.manifest.unresolved_parents == 1

    def test_cross_article_parent_normalized(self):
        recs = [
            make_record("c1", article_id="a1"),
            make_record(
                "c2",
                article_id="a2",
                parent_id="c1",
                created_at="2021-03-01T09:30:00Z",
            ),
        ]
        store = make_store(recs)
        assert store.comment("c2").parent_id is None

    def test_reply_count_direct_only(self):
        recs = [
            make_record("c1"),
            make_record("c2", parent_id="c1", created_at="2021-03-01T09:10:00Z"),
            make_record("c3", parent_id="c2", created_at="2021-03-01T09:20:00Z"),
        ]
        store = make_store(recs)
        assert store.reply_count("c1") == 1
        assert store.reply_count("c2") == 1
        assert store.reply_count("c3") == 0

    def test_article_published_at_is_min_observed(self, ts):
        recs = [
            make_record("c1", article_published_at="2021-03-01T08:05:00Z"),
            make_record("c2", article_published_at=T0),
        ]
        store = make_store(recs)
        assert store.articles["a1"].published_at == ts(T0)

    def test_articles_ordered_by_publication(self):
        recs = [
            make_record("c1", article_id="b", article_published_at="2021-03-02T08:00:00Z",
                        created_at="2021-03-02T09:00:00Z"),
            make_record("c2", article_id="a", article_published_at=T0),
        ]
        store = make_store(recs)
        assert store.article_ids() == ("a", "b")


class TestIngestion:
    def test_round_trip_digest(self, tmp_path, synth_store):
        path = tmp_path / "corpus.jsonl"
        write_jsonl(synth_store, path)
        again = ingest_comments(path)
        assert again.content_digest() == synth_store.content_digest()

    def test_malformed_lines_counted_not_fatal(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        good = json.dumps(make_record("c1").to_json_dict())
        lines = [good, "not json at all", json.dumps({"comment_id": "x"}), ""]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        store = ingest_comments(path)
        assert len(store) == 1
        assert store.manifest.rejected_records == 2
        assert store.manifest.valid_records == 1

    def test_empty_file_fatal(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text("junk\n", encoding="utf-8")
        with pytest.raises(CorpusError):
            ingest_comments(path)

    def test_unknown_format_rejected(self, tmp_path):
        path = tmp_path / "corpus.xml"
        path.write_text("<xml/>", encoding="utf-8")
        with pytest.raises(CorpusError):
            ingest_comments(path, fmt="xml")


class TestChronologicalSplit:
    def test_ceiling_rule_on_odd_count(self):
        recs = [
            make_record(f"c{i}", article_id=f"a{i}",
                        article_published_at=f"2021-03-0{i + 1}T08:00:00Z",
                        created_at=f"2021-03-0{i + 1}T09:00:00Z")
            for i in range(3)
        ]
        first, second = chronological_split(make_store(recs), SplitSpec())
        assert first == ("a0", "a1")
        assert second == ("a2",)

    def test_even_split(self, synth_store):
        first, second = chronological_split(synth_store, SplitSpec())
        assert len(first) == 8 and len(second) == 8
        last_first = synth_store.articles[first[-1]].published_at
        first_second = synth_store.articles[second[0]].published_at
        assert last_first <= first_second


class TestProportionalAllocation:
    def test_exact(self):
        assert proportional_allocation(10, (0.8, 0.1, 0.1)) == (8, 1, 1)

    def test_largest_remainder(self):
        assert proportional_allocation(5, (0.5, 0.25, 0.25)) == (3, 1, 1)

    def test_sums_to_n(self):
        for n in range(1, 50):
            assert sum(proportional_allocation(n, (0.8, 0.1, 0.1))) == n

    def test_reproduces_reference_corpus_totals(self):
        # the stratified 80/10/10 split of 321,217 comments must land on
        # 256,973 / 32,122 / 32,122 with per-class exactness for 3,047 featured
        total, featured = 321_217, 3_047
        f_alloc = proportional_allocation(featured, (0.8, 0.1, 0.1))
        o_alloc = proportional_allocation(total - featured, (0.8, 0.1, 0.1))
        sizes = tuple(f + o for f, o in zip(f_alloc, o_alloc))
        assert sizes == (256_973, 32_122, 32_122)
        for got, exact in zip(f_alloc, (featured * 0.8, featured * 0.1, featured * 0.1)):
            assert abs(got - exact) <= 1

    def test_spec_validation(self):
        with pytest.raises(CorpusError):
            SplitSpec(train_fraction=0.5, val_fraction=0.2, test_fraction=0.2)
        with pytest.raises(CorpusError):
            SplitSpec(chrono_fraction=1.5)


class TestTrainValTest:
    def test_partition_and_stratification(self, synth_store):
        spec = SplitSpec(seed=3)
        first, _ = chronological_split(synth_store, spec)
        train, val, test = train_val_test_split(synth_store, first, spec)
        all_ids = set(train) | set(val) | set(test)
        pool = {r.comment_id for r in synth_store.comments_for_articles(first)}
        assert all_ids == pool
        assert len(train) + len(val) + len(test) == len(pool)
        assert not set(train) & set(val)
        assert not set(train) & set(test)
        assert not set(val) & set(test)

        def featured(ids):
            return sum(
                1 for c in ids if synth_store.comment(c).status is Status.FEATURED
            )

        total_featured = featured(pool)
        assert abs(featured(train) - 0.8 * total_featured) <= 1
        assert abs(featured(val) - 0.1 * total_featured) <= 1

    def test_deterministic_and_seed_sensitive(self, synth_store):
        first, _ = chronological_split(synth_store, SplitSpec())
        a = train_val_test_split(synth_store, first, SplitSpec(seed=1))
        b = train_val_test_split(synth_store, first, SplitSpec(seed=1))
        c = train_val_test_split(synth_store, first, SplitSpec(seed=2))
        assert a == b
        assert a != c

    def test_chronological_order_within_split(self, synth_store):
        first, _ = chronological_split(synth_store, SplitSpec())
        train, _, _ = train_val_test_split(synth_store, first, SplitSpec())
        times = [synth_store.comment(c).created_at for c in train]
        assert times == sorted(times)


class TestDownsample:
    def build(self, n_featured: int, n_other: int):
        recs = []
        for i in range(n_featured + n_other):
            status = "featured" if i < n_featured else "published"
            minute = i % 60
            hour = 9 + (i // 60) % 12
            day = 1 + i // (60 * 12)
            recs.append(
                make_record(
                    f"c{i:06d}",
                    created_at=f"2021-03-{day:02d}T{hour:02d}:{minute:02d}:00Z",
                    article_published_at="2021-03-01T08:00:00Z",
                    status=status,
                )
            )
        return make_store(recs), [r.comment_id for r in recs]

    def test_exact_formula(self):
        store, ids = self.build(50, 2000)
        kept = downsample(store, ids, 0.05, seed=0)
        kept_featured = [c for c in kept if store.comment(c).status is Status.FEATURED]
        assert len(kept_featured) == 50
        assert len(kept) - 50 == int(50 * 0.95 / 0.05)  # 950

    def test_all_featured_kept_and_order_chronological(self):
        store, ids = self.build(20, 400)
        kept = downsample(store, ids, 0.10, seed=1)
        featured = {c for c in ids if store.comment(c).status is Status.FEATURED}
        assert featured <= set(kept)
        times = [(store.comment(c).created_at, c) for c in kept]
        assert times == sorted(times)

    def test_shortage_warns_and_keeps_all(self):
        store, ids = self.build(50, 100)
        with pytest.warns(RuntimeWarning):
            kept = downsample(store, ids, 0.05, seed=0)
        assert len(kept) == 150

    def test_presets_shape(self):
        assert DOWNSAMPLE_PRESETS == (0.01, 0.05, 0.10, 0.15, 0.20, 0.25)

    def test_invalid_ratio(self):
        store, ids = self.build(5, 5)
        with pytest.raises(CorpusError):
            downsample(store, ids, 0.0, seed=0)


class TestSynth:
    def test_byte_identical_given_seed(self, tmp_path):
        cfg = SynthConfig(n_articles=6, n_users=15)
        p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        write_jsonl(synth_generate(cfg, seed=9), p1)
        write_jsonl(synth_generate(cfg, seed=9), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_seed_changes_output(self):
        cfg = SynthConfig(n_articles=6, n_users=15)
        a = synth_generate(cfg, seed=1).content_digest()
        b = synth_generate(cfg, seed=2).content_digest()
        assert a != b

    def test_counts_and_validity(self, synth_store):
        assert len(synth_store.articles) == 16
        statuses = {r.status for r in synth_store.comments}
        assert Status.FEATURED in statuses and Status.REJECTED in statuses
        # every record passes its own validation on round trip
        for rec in synth_store.comments:
            assert rec.created_at >= rec.article_published_at

    def test_featured_never_rejected(self, synth_store):
        for rec in synth_store.comments:
            assert rec.status in (Status.FEATURED, Status.PUBLISHED, Status.REJECTED)

    def test_zero_signal_degenerates_to_noise(self):
        cfg = SynthConfig(
            n_articles=8,
            n_users=20,
            signal_quality=0.0,
            signal_wordcount=0.0,
            signal_likes=0.0,
            signal_text=0.0,
        )
        store = synth_generate(cfg, seed=4)
        featured = [r for r in store.comments if r.status is Status.FEATURED]
        assert featured  # labels still exist, just uninformative

    def test_degenerate_config_rejected(self):
        with pytest.raises(CorpusError):
            SynthConfig(n_articles=0)
        with pytest.raises(CorpusError):
            SynthConfig(mean_comments=-1)
