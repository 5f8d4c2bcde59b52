"""Workspace artifacts, staleness tracking, and deterministic writers."""

import pytest

from ratingsift import (
    CorpusStats,
    DEFAULT_TAXONOMY,
    FeatureTaxonomy,
    StaleWorkspaceError,
    Workspace,
    WorkspaceLockedError,
)
from ratingsift.sentiment import CohortScores, TopicProfile
from ratingsift.taxonomy import RankEntry

from conftest import make_business, make_review


@pytest.fixture
def ws(tmp_path):
    workspace = Workspace(tmp_path / "ws")
    workspace.root.mkdir()
    return workspace


class TestLock:
    def test_lock_excludes_second_holder(self, ws):
        with ws.lock():
            with pytest.raises(WorkspaceLockedError):
                with ws.lock():
                    pass

    def test_lock_released_on_exception(self, ws):
        with pytest.raises(RuntimeError):
            with ws.lock():
                raise RuntimeError("boom")
        with ws.lock():
            pass

    def test_locked_error_is_stale_error(self):
        assert issubclass(WorkspaceLockedError, StaleWorkspaceError)


class TestStages:
    def test_require_stage_missing(self, ws):
        with pytest.raises(StaleWorkspaceError):
            ws.require_stage("ingest")

    def test_record_then_require(self, ws):
        ws.record_stage("ingest", {"businesses": 3})
        manifest = ws.require_stage("ingest")
        assert manifest["stages"]["ingest"] == {"businesses": 3}

    def test_recording_early_stage_clears_later_ones(self, ws):
        ws.record_stage("ingest", {})
        ws.record_stage("rank", {})
        ws.record_stage("score", {})
        ws.record_stage("ingest", {})
        manifest = ws.load_manifest()
        assert "rank" not in manifest["stages"]
        assert "score" not in manifest["stages"]

    def test_recording_clears_downstream_artifacts(self, ws):
        ws.write_ranked([RankEntry("b1", 2, 1.4)])
        ws.write_corpus_stats(CorpusStats(n_docs=1, df={"pasta": 1}))
        ws.record_stage("ingest", {})
        assert not ws.ranked_path.exists()
        assert not ws.corpus_stats_path.exists()

    def test_rank_rerun_clears_score_artifacts_only(self, ws):
        ws.write_businesses([make_business("b1", {"wifi"})])
        ws.write_corpus_stats(CorpusStats(n_docs=1, df={}))
        ws.record_stage("rank", {})
        assert ws.businesses_path.exists()
        assert not ws.corpus_stats_path.exists()


class TestTaxonomyHash:
    def test_matching_hash_passes(self, ws):
        ws.write_taxonomy(DEFAULT_TAXONOMY)
        manifest = {"config_hash": DEFAULT_TAXONOMY.config_hash()}
        loaded = ws.verify_taxonomy_hash(manifest)
        assert isinstance(loaded, FeatureTaxonomy)

    def test_edited_file_detected(self, ws):
        ws.write_taxonomy(DEFAULT_TAXONOMY)
        manifest = {"config_hash": DEFAULT_TAXONOMY.config_hash()}
        text = ws.taxonomy_path.read_text(encoding="utf-8")
        ws.taxonomy_path.write_text(
            text.replace("weight = 0.700000", "weight = 0.710000"),
            encoding="utf-8",
        )
        with pytest.raises(StaleWorkspaceError):
            ws.verify_taxonomy_hash(manifest)

    def test_missing_file_detected(self, ws):
        with pytest.raises(StaleWorkspaceError):
            ws.verify_taxonomy_hash({"config_hash": "whatever"})


class TestRoundTrips:
    def test_businesses(self, ws):
        records = [make_business("b1", {"wifi", "dinner"}), make_business("b2", set())]
        ws.write_businesses(records)
        loaded = ws.read_businesses()
        assert set(loaded) == {"b1", "b2"}
        assert loaded["b1"].features == {"wifi", "dinner"}

    def test_reviews(self, ws):
        reviews = [make_review("r1", "b1", 4, "nice"), make_review("r2", "b1", 1, "bad")]
        ws.write_reviews(reviews)
        assert ws.read_reviews() == reviews

    def test_ranked(self, ws):
        entries = [RankEntry("b1", 12, 8.4), RankEntry("b2", 3, 2.1)]
        ws.write_ranked(entries)
        assert ws.read_ranked() == entries

    def test_corpus_stats(self, ws):
        stats = CorpusStats(n_docs=4, df={"pasta": 2, "wine": 1})
        ws.write_corpus_stats(stats)
        loaded = ws.read_corpus_stats()
        assert loaded.n_docs == 4
        assert loaded.df == {"pasta": 2, "wine": 1}

    def test_ingest_summary(self, ws):
        ws.write_ingest_summary({"businesses": {"parsed": 2}})
        assert ws.read_ingest_summary() == {"businesses": {"parsed": 2}}


class TestDeterministicWriters:
    def test_same_content_same_bytes(self, ws, tmp_path):
        other = Workspace(tmp_path / "other")
        other.root.mkdir()
        entries = [RankEntry("b1", 5, 3.5), RankEntry("b2", 2, 1.2)]
        for target in (ws, other):
            target.write_ranked(entries)
            target.write_frequency({"wifi": 3, "lot": 3, "hastv": 1})
            target.write_taxonomy(DEFAULT_TAXONOMY)
            target.write_cohort_scores(
                CohortScores(combined={1: -3, 5: 9}, average={1: -1.5, 5: 4.5},
                             populated_counts={1: 2, 5: 2})
            )
            target.write_topics([
                TopicProfile("b1", 5, (("pasta", 1.5), ("wine", 0.7)), 3),
            ])
        for name in ("ranked.csv", "feature_frequency.csv", "taxonomy.cfg",
                     "cohort_scores.csv", "topics.tsv"):
            assert (ws.root / name).read_bytes() == (other.root / name).read_bytes()

    def test_frequency_sorted_by_count_then_name(self, ws):
        ws.write_frequency({"wifi": 1, "lot": 3, "hastv": 3})
        lines = ws.frequency_path.read_text(encoding="utf-8").splitlines()
        assert lines == ["feature,frequency", "hastv,3", "lot,3", "wifi,1"]

    def test_unix_line_endings(self, ws):
        ws.write_ranked([RankEntry("b1", 1, 0.7)])
        assert b"\r" not in ws.ranked_path.read_bytes()

    def test_no_timestamps_in_manifest(self, ws):
        ws.record_stage("ingest", {"businesses": 1})
        text = ws.manifest_path.read_text(encoding="utf-8")
        again = Workspace(ws.root)
        again.record_stage("ingest", {"businesses": 1})
        assert ws.manifest_path.read_text(encoding="utf-8") == text
