"""Four-category feature taxonomy: classification, weighted scores, rankings.

Restaurant features are partitioned into four categories (food, parking,
amenities, qualities), each carrying a weight that expresses how much users
value that kind of feature. The taxonomy drives three things: classifying a
feature name, scoring a feature set as a weighted sum, and ranking
restaurants by raw feature count.
"""

import configparser
import hashlib
import io
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping


class UnknownFeatureError(ValueError):
    """Raised when a feature name is not part of the taxonomy universe."""


@dataclass(frozen=True)
class FeatureTaxonomy:
    """Immutable category -> feature-name partition plus per-category weights.

    Categories must be pairwise disjoint and weights non-negative; both are
    validated at construction. Instances are safe to share between threads.
    """

    categories: Mapping[str, frozenset[str]]
    weights: Mapping[str, float]

    def __post_init__(self):
        if set(self.categories) != set(self.weights):
            raise ValueError("categories and weights must name the same category set")
        if not self.categories:
            raise ValueError("taxonomy needs at least one category")
        seen: dict[str, str] = {}
        for category, names in self.categories.items():
            if not names:
                raise ValueError(f"category {category!r} has no features")
            for name in names:
                if name != name.lower():
                    raise ValueError(f"feature name {name!r} must be lowercase")
                if name in seen:
                    raise ValueError(
                        f"feature {name!r} appears in both {seen[name]!r} and {category!r}"
                    )
                seen[name] = category
        for category, weight in self.weights.items():
            if weight < 0:
                raise ValueError(f"category {category!r} has negative weight {weight}")

    @property
    def universe(self) -> frozenset[str]:
        """All feature names across every category."""
        out: set[str] = set()
        for names in self.categories.values():
            out |= names
        return frozenset(out)

    def category_of(self, name: str) -> str:
        for category, names in self.categories.items():
            if name in names:
                return category
        raise UnknownFeatureError(f"unknown feature name: {name!r}")

    def weight_of(self, name: str) -> float:
        return self.weights[self.category_of(name)]

    @classmethod
    def loads(cls, text: str) -> "FeatureTaxonomy":
        """Parse the key-value config format (see ``dumps``)."""
        parser = configparser.ConfigParser()
        try:
            parser.read_string(text)
        except configparser.Error as exc:
            raise ValueError(f"bad taxonomy config: {exc}") from exc
        categories: dict[str, frozenset[str]] = {}
        weights: dict[str, float] = {}
        for section in parser.sections():
            category = section.strip().lower()
            try:
                weight = parser.getfloat(section, "weight")
            except (configparser.NoOptionError, ValueError) as exc:
                raise ValueError(f"category {category!r}: bad or missing weight") from exc
            names = parser.get(section, "features", fallback="").split()
            categories[category] = frozenset(n.lower() for n in names)
            weights[category] = weight
        return cls(categories=categories, weights=weights)

    @classmethod
    def load(cls, path) -> "FeatureTaxonomy":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.loads(handle.read())

    def dumps(self) -> str:
        """Canonical config text: sections and feature lists sorted, weights
        fixed at six decimals. Hashing this text identifies the taxonomy."""
        out = io.StringIO()
        for category in sorted(self.categories):
            out.write(f"[{category}]\n")
            out.write(f"weight = {self.weights[category]:.6f}\n")
            out.write(f"features = {' '.join(sorted(self.categories[category]))}\n\n")
        return out.getvalue()

    def config_hash(self) -> str:
        return hashlib.sha256(self.dumps().encode("utf-8")).hexdigest()


DEFAULT_TAXONOMY = FeatureTaxonomy(
    categories={
        "food": frozenset({
            "dessert", "latenight", "lunch", "dinner", "breakfast", "brunch",
            "restaurantspricerange2", "alcohol",
        }),
        "parking": frozenset({
            "bikeparking", "garage", "street", "validated", "lot", "valet",
        }),
        "amenities": frozenset({
            "hastv", "outdoorseating", "businessacceptscreditcards",
            "restaurantsdelivery", "restaurantstakeout", "wifi",
            "restaurantstableservice", "restaurantscounterservice",
            "caters", "restaurantsreservations",
        }),
        "qualities": frozenset({
            "restaurantsgoodforgroups", "noiselevel", "restaurantsattire",
            "goodforkids", "classy", "romantic", "intimate", "hipster",
            "touristy", "trendy", "upscale", "casual",
        }),
    },
    weights={"food": 1.0, "parking": 0.8, "amenities": 0.7, "qualities": 0.6},
)


def alcohol_amenity_taxonomy() -> FeatureTaxonomy:
    """The shipped variant taxonomy with alcohol placed under amenities."""
    text = (
        resources.files("ratingsift")
        .joinpath("configs/taxonomy_alcohol_amenity.cfg")
        .read_text(encoding="utf-8")
    )
    return FeatureTaxonomy.loads(text)


def classify_feature(name: str, taxonomy: FeatureTaxonomy = DEFAULT_TAXONOMY) -> str:
    """Return the unique category owning ``name``.

    Raises UnknownFeatureError for names outside the taxonomy universe.
    """
    return taxonomy.category_of(name)


def weighted_feature_score(
    features: Iterable[str], taxonomy: FeatureTaxonomy = DEFAULT_TAXONOMY
) -> float:
    """Sum of the owning category's weight over ``features``.

    Summation runs in sorted name order so the result is bit-identical no
    matter how the input set iterates.
    """
    return sum(taxonomy.weight_of(name) for name in sorted(features))


@dataclass(frozen=True)
class RankEntry:
    business_id: str
    feature_count: int
    weighted_score: float


@dataclass(frozen=True)
class RankedList:
    """Businesses ordered by feature count, deterministic under ties."""

    entries: tuple[RankEntry, ...]
    cutoff: int

    def business_ids(self) -> list[str]:
        return [entry.business_id for entry in self.entries]


def rank_restaurants(
    businesses: Iterable,
    taxonomy: FeatureTaxonomy = DEFAULT_TAXONOMY,
    cutoff: int = 0,
) -> RankedList:
    """Rank businesses by feature count, descending.

    The order key is the raw number of features; the weighted score is
    carried along for reporting but does not affect the order. Ties break
    by business_id ascending so the output is a total order: shuffling the
    input can never change the result. ``cutoff`` > 0 truncates the list;
    0 keeps every business.
    """
    entries = [
        RankEntry(
            business_id=b.business_id,
            feature_count=len(b.features),
            weighted_score=weighted_feature_score(b.features, taxonomy),
        )
        for b in businesses
    ]
    entries.sort(key=lambda e: (-e.feature_count, e.business_id))
    if cutoff > 0:
        entries = entries[:cutoff]
    return RankedList(entries=tuple(entries), cutoff=cutoff)


def feature_frequency(
    ranked: RankedList,
    businesses,
    taxonomy: FeatureTaxonomy = DEFAULT_TAXONOMY,
) -> dict[str, int]:
    """Per-feature possession counts over the ranked businesses.

    ``businesses`` may be a mapping business_id -> record or any iterable of
    records. Every feature in the taxonomy universe gets an entry, zero when
    no ranked business has it.
    """
    if not isinstance(businesses, Mapping):
        businesses = {b.business_id: b for b in businesses}
    counts = {name: 0 for name in sorted(taxonomy.universe)}
    for entry in ranked.entries:
        record = businesses[entry.business_id]
        for name in record.features:
            counts[name] += 1
    return counts
