"""On-disk workspace for the staged pipeline.

Each pipeline stage (ingest, rank, score) writes its artifacts here plus a
manifest entry; later stages refuse to run on a stale workspace instead of
silently using mismatched artifacts. All writers are deterministic: fixed
key order, fixed six-decimal formatting for rationals, "\n" line endings,
and no timestamps, so identical inputs produce byte-identical files.
"""

import csv
import json
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Mapping

from .ingest import BusinessRecord, ReviewRecord
from .sentiment import CohortScores, CorpusStats, TopicProfile
from .taxonomy import FeatureTaxonomy, RankEntry

# Pipeline order; a stage implicitly invalidates everything after it.
STAGES = ("ingest", "rank", "score")

_DOWNSTREAM_ARTIFACTS = {
    "ingest": (
        "ranked.csv", "feature_frequency.csv", "taxonomy.cfg",
        "topics.tsv", "cohort_scores.csv", "corpus_stats.json",
    ),
    "rank": ("topics.tsv", "cohort_scores.csv", "corpus_stats.json"),
    "score": (),
}


class StaleWorkspaceError(Exception):
    """The workspace is missing a stage or holds artifacts from another config."""


class WorkspaceLockedError(StaleWorkspaceError):
    """Another command currently holds the workspace's advisory lock."""


class Workspace:
    """Handle to one workspace directory; see module docstring."""

    def __init__(self, root):
        self.root = Path(root)

    # artifact paths ----------------------------------------------------

    @property
    def businesses_path(self) -> Path:
        return self.root / "businesses.jsonl"

    @property
    def reviews_path(self) -> Path:
        return self.root / "reviews.jsonl"

    @property
    def ingest_summary_path(self) -> Path:
        return self.root / "ingest_summary.json"

    @property
    def taxonomy_path(self) -> Path:
        return self.root / "taxonomy.cfg"

    @property
    def ranked_path(self) -> Path:
        return self.root / "ranked.csv"

    @property
    def frequency_path(self) -> Path:
        return self.root / "feature_frequency.csv"

    @property
    def topics_path(self) -> Path:
        return self.root / "topics.tsv"

    @property
    def cohort_scores_path(self) -> Path:
        return self.root / "cohort_scores.csv"

    @property
    def corpus_stats_path(self) -> Path:
        return self.root / "corpus_stats.json"

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    @property
    def lock_path(self) -> Path:
        return self.root / ".lock"

    # locking -----------------------------------------------------------

    @contextmanager
    def lock(self):
        """Advisory per-workspace lock; one command at a time."""
        self.root.mkdir(parents=True, exist_ok=True)
        try:
            fd = os.open(self.lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise WorkspaceLockedError(
                f"workspace {self.root} is locked by another command "
                f"(remove {self.lock_path} if that command crashed)"
            ) from None
        os.close(fd)
        try:
            yield self
        finally:
            self.lock_path.unlink(missing_ok=True)

    # manifest and stages -----------------------------------------------

    def load_manifest(self) -> dict:
        if not self.manifest_path.exists():
            return {"tool_version": None, "config_hash": None, "cutoff": None,
                    "k": None, "lexicon_path": None, "stages": {}}
        with open(self.manifest_path, "r", encoding="utf-8") as handle:
            return json.load(handle)

    def save_manifest(self, manifest: dict) -> None:
        _write_json(self.manifest_path, manifest)

    def record_stage(self, stage: str, info: dict, manifest: dict | None = None) -> dict:
        """Mark a stage complete, clearing later stages and their artifacts."""
        if manifest is None:
            manifest = self.load_manifest()
        stages = manifest.setdefault("stages", {})
        stages[stage] = info
        for later in STAGES[STAGES.index(stage) + 1:]:
            stages.pop(later, None)
        for name in _DOWNSTREAM_ARTIFACTS[stage]:
            (self.root / name).unlink(missing_ok=True)
        self.save_manifest(manifest)
        return manifest

    def require_stage(self, stage: str, manifest: dict | None = None) -> dict:
        if manifest is None:
            manifest = self.load_manifest()
        if stage not in manifest.get("stages", {}):
            raise StaleWorkspaceError(
                f"workspace {self.root} has no completed {stage!r} stage; "
                f"run the {stage} command first"
            )
        return manifest

    def verify_taxonomy_hash(self, manifest: dict) -> FeatureTaxonomy:
        """Load the workspace taxonomy, checking it still matches the manifest."""
        if not self.taxonomy_path.exists():
            raise StaleWorkspaceError(f"workspace {self.root} has no taxonomy.cfg")
        taxonomy = FeatureTaxonomy.load(self.taxonomy_path)
        expected = manifest.get("config_hash")
        if taxonomy.config_hash() != expected:
            raise StaleWorkspaceError(
                "taxonomy.cfg does not match the manifest config hash; "
                "re-run the rank command"
            )
        return taxonomy

    # record files ------------------------------------------------------

    def write_businesses(self, records: Iterable[BusinessRecord]) -> None:
        _write_jsonl(self.businesses_path, (r.to_json_dict() for r in records))

    def read_businesses(self) -> dict[str, BusinessRecord]:
        out: dict[str, BusinessRecord] = {}
        for obj in _read_jsonl(self.businesses_path):
            record = BusinessRecord.from_json_dict(obj)
            out[record.business_id] = record
        return out

    def write_reviews(self, reviews: Iterable[ReviewRecord]) -> None:
        _write_jsonl(self.reviews_path, (r.to_json_dict() for r in reviews))

    def read_reviews(self) -> list[ReviewRecord]:
        return [ReviewRecord.from_json_dict(obj) for obj in _read_jsonl(self.reviews_path)]

    def write_ingest_summary(self, summary: dict) -> None:
        _write_json(self.ingest_summary_path, summary)

    def read_ingest_summary(self) -> dict:
        with open(self.ingest_summary_path, "r", encoding="utf-8") as handle:
            return json.load(handle)

    # rank artifacts ----------------------------------------------------

    def write_taxonomy(self, taxonomy: FeatureTaxonomy) -> None:
        self.taxonomy_path.write_text(taxonomy.dumps(), encoding="utf-8")

    def write_ranked(self, entries: Iterable[RankEntry]) -> None:
        with open(self.ranked_path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["business_id", "feature_count", "weighted_score"])
            for entry in entries:
                writer.writerow(
                    [entry.business_id, entry.feature_count, f"{entry.weighted_score:.6f}"]
                )

    def read_ranked(self) -> list[RankEntry]:
        entries = []
        with open(self.ranked_path, "r", encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            next(reader, None)  # header
            for row in reader:
                entries.append(
                    RankEntry(
                        business_id=row[0],
                        feature_count=int(row[1]),
                        weighted_score=float(row[2]),
                    )
                )
        return entries

    def write_frequency(self, counts: Mapping[str, int]) -> None:
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        with open(self.frequency_path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["feature", "frequency"])
            writer.writerows(ordered)

    # score artifacts ---------------------------------------------------

    def write_topics(self, profiles: Iterable[TopicProfile]) -> None:
        with open(self.topics_path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, delimiter="\t", lineterminator="\n")
            writer.writerow(["business_id", "stars", "rank", "term", "tfidf_weight"])
            for profile in profiles:
                for rank, (term, weight) in enumerate(profile.topics, start=1):
                    writer.writerow(
                        [profile.business_id, profile.stars, rank, term, f"{weight:.6f}"]
                    )

    def write_cohort_scores(self, scores: CohortScores) -> None:
        with open(self.cohort_scores_path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["stars", "combined", "average", "populated_count"])
            for stars in sorted(scores.combined):
                writer.writerow(
                    [
                        stars,
                        scores.combined[stars],
                        f"{scores.average[stars]:.6f}",
                        scores.populated_counts[stars],
                    ]
                )

    def write_corpus_stats(self, stats: CorpusStats) -> None:
        _write_json(self.corpus_stats_path, {"n_docs": stats.n_docs, "df": stats.df})

    def read_corpus_stats(self) -> CorpusStats:
        with open(self.corpus_stats_path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
        return CorpusStats(n_docs=obj["n_docs"], df=obj["df"])


def _write_json(path: Path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        json.dump(obj, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _write_jsonl(path: Path, objects: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for obj in objects:
            handle.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
            handle.write("\n")


def _read_jsonl(path: Path):
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                yield json.loads(line)
