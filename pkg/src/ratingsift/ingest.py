"""Streaming ingest of Yelp-format JSON-lines business and review files.

Both parsers are generators with a strict streaming contract: one input line
in memory at a time, records yielded as they are built. Malformed data never
aborts a run; every skip path increments a counter so that, over the
non-blank lines of a file, parsed + skipped counts always add up exactly.

Attribute values arrive as strings in Python-literal style, e.g. "True",
"u'free'", "{'classy': True, 'romantic': False}". ``parse_attribute_value``
turns them into booleans, ints, strings, or one-level maps, falling back to
an opaque string token for anything unrecognizable.
"""

import ast
import json
import re
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Union

from .taxonomy import DEFAULT_TAXONOMY, FeatureTaxonomy

AttributeValue = Union[bool, int, str, None, dict]

# Attributes whose values are enumerations rather than booleans; any value
# other than a negative token means the feature is offered in some form.
ENUMERATED_ATTRIBUTES = frozenset({"wifi", "alcohol", "noiselevel", "restaurantsattire"})
_NEGATIVE_TOKENS = frozenset({"no", "none", ""})
_PRICE_ATTRIBUTE = "restaurantspricerange2"
_POSITIVE_TOKENS = frozenset({"yes", "true", "1"})

VALID_BUSINESS_STARS = frozenset({1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0})

_INT_RE = re.compile(r"^[+-]?\d+$")
_QUOTED_RE = re.compile(r"^u?(?:'(?P<sq>[^']*)'|\"(?P<dq>[^\"]*)\")$")
_BARE_KEY_RE = re.compile(r"^[A-Za-z0-9_-]+$")


class IngestError(Exception):
    """Fatal ingest failure: the input stream itself cannot be read."""


@dataclass
class BusinessCounters:
    """Line accounting for a business parse pass.

    parsed + skipped_malformed + skipped_non_restaurant equals the number of
    non-blank input lines. ``skipped_duplicate_id`` is only touched by
    ``load_businesses`` (uniqueness is a dataset-level property; the streaming
    parser does not track ids).
    """

    parsed: int = 0
    skipped_malformed: int = 0
    skipped_non_restaurant: int = 0
    skipped_duplicate_id: int = 0
    attribute_fallbacks: int = 0
    unknown_feature_names: int = 0

    def as_dict(self) -> dict:
        return {
            "parsed": self.parsed,
            "skipped_malformed": self.skipped_malformed,
            "skipped_non_restaurant": self.skipped_non_restaurant,
            "skipped_duplicate_id": self.skipped_duplicate_id,
            "attribute_fallbacks": self.attribute_fallbacks,
            "unknown_feature_names": self.unknown_feature_names,
        }


@dataclass
class ReviewCounters:
    """Line accounting for a review parse pass; same exactness contract."""

    parsed: int = 0
    skipped_malformed: int = 0
    skipped_unknown_business: int = 0
    skipped_bad_stars: int = 0

    def as_dict(self) -> dict:
        return {
            "parsed": self.parsed,
            "skipped_malformed": self.skipped_malformed,
            "skipped_unknown_business": self.skipped_unknown_business,
            "skipped_bad_stars": self.skipped_bad_stars,
        }


@dataclass(frozen=True)
class BusinessRecord:
    """One business, immutable once constructed.

    ``raw_attributes`` holds the attribute map exactly as read (values as
    strings); ``features`` is the flattened canonical feature set, always a
    subset of the taxonomy universe.
    """

    business_id: str
    name: str
    overall_stars: float
    review_count: int
    raw_attributes: dict[str, str]
    features: frozenset[str]
    is_restaurant: bool

    def to_json_dict(self) -> dict:
        return {
            "business_id": self.business_id,
            "name": self.name,
            "overall_stars": self.overall_stars,
            "review_count": self.review_count,
            "raw_attributes": self.raw_attributes,
            "features": sorted(self.features),
            "is_restaurant": self.is_restaurant,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BusinessRecord":
        return cls(
            business_id=obj["business_id"],
            name=obj["name"],
            overall_stars=obj["overall_stars"],
            review_count=obj["review_count"],
            raw_attributes=obj["raw_attributes"],
            features=frozenset(obj["features"]),
            is_restaurant=obj["is_restaurant"],
        )


@dataclass(frozen=True)
class ReviewRecord:
    """One review; ``date`` is retained for provenance but unused by scoring."""

    review_id: str
    business_id: str
    user_id: str
    stars: int
    text: str
    date: str

    def to_json_dict(self) -> dict:
        return {
            "review_id": self.review_id,
            "business_id": self.business_id,
            "user_id": self.user_id,
            "stars": self.stars,
            "text": self.text,
            "date": self.date,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ReviewRecord":
        return cls(
            review_id=obj["review_id"],
            business_id=obj["business_id"],
            user_id=obj["user_id"],
            stars=obj["stars"],
            text=obj["text"],
            date=obj["date"],
        )


def parse_attribute_value(raw: str, counters: BusinessCounters | None = None) -> AttributeValue:
    """Parse one raw attribute value string.

    Recognized forms: True/False/None literals, integers, quoted strings
    with an optional u-prefix, and brace-delimited one-level maps with bare
    or quoted keys. Anything else comes back unchanged as an opaque string
    token, counted in ``counters.attribute_fallbacks``. Never raises.
    """
    s = raw.strip()
    value = _parse_leaf(s)
    if value is not _UNPARSED:
        return value
    if s.startswith("{") and s.endswith("}"):
        parsed = _parse_map(s)
        if parsed is not None:
            return parsed
    if counters is not None:
        counters.attribute_fallbacks += 1
    return raw


_UNPARSED = object()


def _parse_leaf(s: str):
    """Parse a non-map value; returns _UNPARSED when nothing matches."""
    if s == "True":
        return True
    if s == "False":
        return False
    if s == "None":
        return None
    if _INT_RE.match(s):
        return int(s)
    quoted = _QUOTED_RE.match(s)
    if quoted:
        inner = quoted.group("sq")
        return inner if inner is not None else quoted.group("dq")
    return _UNPARSED


def _parse_map(s: str) -> dict | None:
    """Parse a brace-delimited map of leaf values; None when malformed."""
    try:
        value = ast.literal_eval(s)
    except (ValueError, SyntaxError):
        value = None
    if isinstance(value, dict):
        out = {}
        for key, inner in value.items():
            # leaves only: non-string keys, deeper nesting, and non-leaf
            # types (floats included) make the whole value unrecognizable
            if not isinstance(key, str) or not isinstance(inner, (bool, int, str, type(None))):
                return None
            out[key] = inner
        return out
    # literal_eval rejects bare keys ({garage: True}); scan those by hand
    return _parse_bare_key_map(s)


def _parse_bare_key_map(s: str) -> dict | None:
    body = s[1:-1].strip()
    if not body:
        return {}
    out = {}
    for part in _split_top_level(body):
        if ":" not in part:
            return None
        key_text, value_text = part.split(":", 1)
        key = _parse_key(key_text.strip())
        if key is None:
            return None
        value = _parse_leaf(value_text.strip())
        if value is _UNPARSED:
            return None
        out[key] = value
    return out


def _split_top_level(body: str) -> list[str]:
    """Split on commas outside quotes; map values are leaves so no nesting."""
    parts, buf, quote = [], [], ""
    for ch in body:
        if quote:
            buf.append(ch)
            if ch == quote:
                quote = ""
        elif ch in "'\"":
            quote = ch
            buf.append(ch)
        elif ch == ",":
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    parts.append("".join(buf))
    return [p.strip() for p in parts if p.strip()]


def _parse_key(text: str) -> str | None:
    quoted = _QUOTED_RE.match(text)
    if quoted:
        inner = quoted.group("sq")
        return inner if inner is not None else quoted.group("dq")
    if _BARE_KEY_RE.match(text):
        return text
    return None


def normalize_flag(value: AttributeValue, attribute_name: str) -> bool:
    """Decide presence for one leaf attribute value.

    Present when: boolean true; integer 1; a yes/true/1 string; any
    non-negative token for the enumerated attributes (WiFi, Alcohol,
    NoiseLevel, RestaurantsAttire); or an integer >= 1 for
    RestaurantsPriceRange2. Everything else, None included, is absent.
    Unknown attribute names follow the plain boolean rule.
    """
    if isinstance(value, dict):
        raise ValueError(f"normalize_flag needs a leaf value, got a map for {attribute_name!r}")
    name = attribute_name.lower()
    if value is None:
        return False
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        if name == _PRICE_ATTRIBUTE:
            return value >= 1
        return value == 1
    if not isinstance(value, str):
        return False
    low = value.lower()
    if name in ENUMERATED_ATTRIBUTES:
        return low not in _NEGATIVE_TOKENS
    return low in _POSITIVE_TOKENS


def flatten_features(
    record: BusinessRecord,
    taxonomy: FeatureTaxonomy = DEFAULT_TAXONOMY,
    counters: BusinessCounters | None = None,
) -> frozenset[str]:
    """Flatten a record's raw attributes into canonical feature names."""
    return _flatten_raw(record.raw_attributes, taxonomy, counters)


def _flatten_raw(
    raw_attributes: dict[str, str],
    taxonomy: FeatureTaxonomy,
    counters: BusinessCounters | None,
) -> frozenset[str]:
    """Core of flatten_features, working on the raw attribute map.

    Top-level leaf attributes map to their lowercased name; map-valued
    attributes (BusinessParking, GoodForMeal, Ambience) contribute the inner
    keys whose value normalizes to present. Names outside the taxonomy
    universe are ignored and counted; the map containers themselves are
    structural and never counted.
    """
    universe = taxonomy.universe
    features: set[str] = set()
    for attr_name, raw in raw_attributes.items():
        value = parse_attribute_value(raw, counters)
        if isinstance(value, dict):
            for inner_name, inner_value in value.items():
                key = inner_name.lower()
                if key not in universe:
                    if counters is not None:
                        counters.unknown_feature_names += 1
                    continue
                if normalize_flag(inner_value, key):
                    features.add(key)
        else:
            key = attr_name.lower()
            if key not in universe:
                if counters is not None:
                    counters.unknown_feature_names += 1
                continue
            if normalize_flag(value, key):
                features.add(key)
    return frozenset(features)


def _iter_lines(stream) -> Iterator[str | None]:
    """Yield decoded lines; None marks a line that is not valid UTF-8."""
    for line in stream:
        if isinstance(line, bytes):
            try:
                yield line.decode("utf-8")
            except UnicodeDecodeError:
                yield None
        else:
            yield line


def _stringify_attribute(value) -> str:
    """Keep string values verbatim; render anything else Python-literal style
    so parse_attribute_value sees the same shape either way."""
    if isinstance(value, str):
        return value
    if isinstance(value, (dict, list)):
        return repr(value)
    return str(value)


def _is_restaurant(categories) -> bool:
    if isinstance(categories, str):
        names = categories.split(",")
    elif isinstance(categories, list):
        names = [str(c) for c in categories]
    else:
        return False
    return any(name.strip().lower() == "restaurants" for name in names)


def _build_business(
    obj: dict,
    taxonomy: FeatureTaxonomy,
    counters: BusinessCounters | None,
) -> BusinessRecord | None:
    """Build a record from one decoded JSON object; None when malformed."""
    if not isinstance(obj, dict):
        return None
    business_id = obj.get("business_id")
    if not isinstance(business_id, str) or not business_id:
        return None
    stars = obj.get("stars")
    if not isinstance(stars, (int, float)) or isinstance(stars, bool):
        return None
    overall_stars = float(stars)
    if overall_stars not in VALID_BUSINESS_STARS:
        return None
    review_count = obj.get("review_count", 0)
    if not isinstance(review_count, int) or isinstance(review_count, bool) or review_count < 0:
        return None
    attributes = obj.get("attributes")
    if attributes is None:
        attributes = {}
    if not isinstance(attributes, dict):
        return None
    raw_attributes = {str(k): _stringify_attribute(v) for k, v in attributes.items()}
    name = obj.get("name")
    return BusinessRecord(
        business_id=business_id,
        name=name if isinstance(name, str) else "",
        overall_stars=overall_stars,
        review_count=review_count,
        raw_attributes=raw_attributes,
        features=_flatten_raw(raw_attributes, taxonomy, counters),
        is_restaurant=_is_restaurant(obj.get("categories")),
    )


def parse_businesses(
    stream: Union[IO, Iterable],
    taxonomy: FeatureTaxonomy = DEFAULT_TAXONOMY,
    counters: BusinessCounters | None = None,
    restaurants_only: bool = True,
) -> Iterator[BusinessRecord]:
    """Stream-parse a JSON-lines business file.

    Args:
        stream: open file (text or binary) or any iterable of lines.
        taxonomy: taxonomy whose universe bounds the flattened features.
        counters: optional BusinessCounters, filled in place.
        restaurants_only: skip (and count) businesses whose category list
            does not include "Restaurants"; pass False to keep everything
            and rely on ``is_restaurant``.

    Yields:
        BusinessRecord per well-formed line. Blank lines are ignored;
        malformed lines are skipped and counted, never fatal.
    """
    if counters is None:
        counters = BusinessCounters()
    for line in _iter_lines(stream):
        if line is None:
            counters.skipped_malformed += 1
            continue
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            counters.skipped_malformed += 1
            continue
        record = _build_business(obj, taxonomy, counters)
        if record is None:
            counters.skipped_malformed += 1
            continue
        if restaurants_only and not record.is_restaurant:
            counters.skipped_non_restaurant += 1
            continue
        counters.parsed += 1
        yield record


def parse_reviews(
    stream: Union[IO, Iterable],
    known_business_ids: Iterable[str],
    counters: ReviewCounters | None = None,
) -> Iterator[ReviewRecord]:
    """Stream-parse a JSON-lines review file against loaded business ids.

    Reviews referencing unknown businesses are dropped and counted, as are
    reviews whose stars are not an integer in 1..5. A missing text field is
    kept as empty text.
    """
    if counters is None:
        counters = ReviewCounters()
    known = known_business_ids if isinstance(known_business_ids, (set, frozenset, dict)) else set(known_business_ids)
    for line in _iter_lines(stream):
        if line is None:
            counters.skipped_malformed += 1
            continue
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            counters.skipped_malformed += 1
            continue
        if not isinstance(obj, dict):
            counters.skipped_malformed += 1
            continue
        review_id = obj.get("review_id")
        business_id = obj.get("business_id")
        if not isinstance(review_id, str) or not review_id:
            counters.skipped_malformed += 1
            continue
        if not isinstance(business_id, str) or not business_id:
            counters.skipped_malformed += 1
            continue
        raw_stars = obj.get("stars")
        if not isinstance(raw_stars, (int, float)) or isinstance(raw_stars, bool):
            counters.skipped_malformed += 1
            continue
        try:
            stars = int(raw_stars)
        except (ValueError, OverflowError):  # NaN / infinity
            counters.skipped_bad_stars += 1
            continue
        if float(raw_stars) != stars or not 1 <= stars <= 5:
            counters.skipped_bad_stars += 1
            continue
        if business_id not in known:
            counters.skipped_unknown_business += 1
            continue
        text = obj.get("text")
        user_id = obj.get("user_id")
        date = obj.get("date")
        counters.parsed += 1
        yield ReviewRecord(
            review_id=review_id,
            business_id=business_id,
            user_id=user_id if isinstance(user_id, str) else "",
            stars=stars,
            text=text if isinstance(text, str) else "",
            date=date if isinstance(date, str) else "",
        )


def load_businesses(
    path,
    taxonomy: FeatureTaxonomy = DEFAULT_TAXONOMY,
    restaurants_only: bool = True,
) -> tuple[dict[str, BusinessRecord], BusinessCounters]:
    """Parse a business file into an id-keyed dict.

    Enforces business_id uniqueness: the first occurrence wins and later
    duplicates are counted in ``skipped_duplicate_id`` (they remain counted
    as parsed, since the line itself was well-formed).
    """
    counters = BusinessCounters()
    records: dict[str, BusinessRecord] = {}
    try:
        with open(path, "rb") as handle:
            for record in parse_businesses(handle, taxonomy, counters, restaurants_only):
                if record.business_id in records:
                    counters.skipped_duplicate_id += 1
                    continue
                records[record.business_id] = record
    except OSError as exc:
        raise IngestError(f"cannot read business file {path}: {exc}") from exc
    return records, counters


def load_reviews(
    path,
    known_business_ids: Iterable[str],
) -> tuple[list[ReviewRecord], ReviewCounters]:
    """Parse a review file into a list, dropping reviews for unknown ids."""
    counters = ReviewCounters()
    try:
        with open(path, "rb") as handle:
            reviews = list(parse_reviews(handle, known_business_ids, counters))
    except OSError as exc:
        raise IngestError(f"cannot read review file {path}: {exc}") from exc
    return reviews, counters
