"""Walkthrough: star documents, TF-IDF topics, and lexicon sentiment.

All of one restaurant's review text at one star level forms a "star
document". TF-IDF (raw count times ln(N/df) over the cohort's documents)
surfaces each document's characteristic terms; summing an AFINN-style
lexicon's valences over those distinct terms gives a per-star sentiment
score, and aggregating over the cohort shows how review tone tracks the
star level.

Run from the repository root:  python demos/03_topics_and_sentiment.py
"""

from pathlib import Path

from ratingsift import (
    CorpusStats,
    SentimentLexicon,
    build_star_documents,
    build_topic_profiles,
    cohort_scores,
    load_businesses,
    load_reviews,
    rank_restaurants,
)

DATA = Path(__file__).parent / "data"


def main():
    businesses, _ = load_businesses(DATA / "businesses.jsonl")
    reviews, _ = load_reviews(DATA / "reviews.jsonl", known_business_ids=businesses)
    lexicon = SentimentLexicon.load(DATA / "lexicon.txt")
    print(f"lexicon: {len(lexicon)} terms, e.g. amazing={lexicon.valence('amazing')} "
          f"awful={lexicon.valence('awful')}")

    cohort = rank_restaurants(businesses.values()).business_ids()
    documents = build_star_documents(reviews, cohort)
    print(f"cohort of {len(cohort)} restaurants -> {len(documents)} star documents")

    stats = CorpusStats.from_documents(documents)
    print(f"corpus statistics frozen: N={stats.n_docs} documents, "
          f"{len(stats.df)} distinct terms")

    print()
    print("=== topics for one restaurant, star by star ===")
    profiles = build_topic_profiles(documents, stats, k=6, lexicon=lexicon)
    for profile in profiles:
        if profile.business_id != "canal_house":
            continue
        terms = ", ".join(f"{t} ({w:.2f})" for t, w in profile.topics[:4])
        print(f"  {profile.stars} stars  sentiment {profile.sentiment_score:+3d}   {terms}")

    print()
    print("=== cohort-wide sentiment by star level ===")
    scores = cohort_scores(profiles)
    print(f"{'stars':>5}  {'combined':>8}  {'average':>8}  {'documents':>9}")
    for stars in sorted(scores.combined):
        print(f"{stars:>5}  {scores.combined[stars]:>8}  "
              f"{scores.average[stars]:>8.2f}  {scores.populated_counts[stars]:>9}")
    print("higher stars should read happier; the combined column makes it visible")


if __name__ == "__main__":
    main()
