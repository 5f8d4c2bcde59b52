"""Rating disparity analysis for restaurant listings and reviews.

The package splits into five layers: `ingest` parses raw JSON-lines
business and review dumps into typed records, `taxonomy` classifies and
weighs listed features, `sentiment` turns review text into per-star topic
profiles with lexicon sentiment, `disparity` compares two restaurants,
and `workspace`/`cli` stage the whole pipeline on disk.
"""

from .disparity import (
    FAVORED_A,
    FAVORED_B,
    INCONCLUSIVE,
    DisparityReport,
    build_disparity_report,
    compare_features,
    render_text,
    sentiment_delta,
    verdict,
    weighted_deficiency,
)
from .ingest import (
    AttributeValue,
    BusinessCounters,
    BusinessRecord,
    IngestError,
    ReviewCounters,
    ReviewRecord,
    flatten_features,
    load_businesses,
    load_reviews,
    normalize_flag,
    parse_attribute_value,
    parse_businesses,
    parse_reviews,
)
from .sentiment import (
    CohortScores,
    CorpusStats,
    LexiconCounters,
    SentimentLexicon,
    StarDocument,
    TopicProfile,
    build_star_documents,
    build_topic_profiles,
    cohort_scores,
    sentiment_score,
    tfidf,
    tokenize,
    top_terms,
)
from .taxonomy import (
    DEFAULT_TAXONOMY,
    FeatureTaxonomy,
    RankEntry,
    RankedList,
    UnknownFeatureError,
    alcohol_amenity_taxonomy,
    classify_feature,
    feature_frequency,
    rank_restaurants,
    weighted_feature_score,
)
from .workspace import StaleWorkspaceError, Workspace, WorkspaceLockedError

__version__ = "0.1.0"

__all__ = [
    "AttributeValue",
    "BusinessCounters",
    "BusinessRecord",
    "CohortScores",
    "CorpusStats",
    "DEFAULT_TAXONOMY",
    "DisparityReport",
    "FAVORED_A",
    "FAVORED_B",
    "FeatureTaxonomy",
    "INCONCLUSIVE",
    "IngestError",
    "LexiconCounters",
    "RankEntry",
    "RankedList",
    "ReviewCounters",
    "ReviewRecord",
    "SentimentLexicon",
    "StaleWorkspaceError",
    "StarDocument",
    "TopicProfile",
    "UnknownFeatureError",
    "Workspace",
    "WorkspaceLockedError",
    "alcohol_amenity_taxonomy",
    "build_disparity_report",
    "build_star_documents",
    "build_topic_profiles",
    "classify_feature",
    "cohort_scores",
    "compare_features",
    "feature_frequency",
    "flatten_features",
    "load_businesses",
    "load_reviews",
    "normalize_flag",
    "parse_attribute_value",
    "parse_businesses",
    "parse_reviews",
    "rank_restaurants",
    "render_text",
    "sentiment_delta",
    "sentiment_score",
    "tfidf",
    "tokenize",
    "top_terms",
    "verdict",
    "weighted_deficiency",
    "weighted_feature_score",
]
