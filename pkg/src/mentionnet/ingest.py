"""Tweet-file ingestion: parsing, corpus statistics, and day bucketing.

Input is UTF-8 line-delimited JSON. Each line needs the keys ``tweet_id``,
``user_id``, ``created_at``, ``text`` and ``user_mentions``; everything else
is ignored. Lines starting with ``#`` are treated as comments, which lets the
canonical record files written by the CLI be re-ingested directly.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from typing import IO, Iterable

from .errors import EmptyCorpusError

# accepted timestamp formats: ISO-8601 with Z suffix, and the classic
# long form used by the Twitter REST API
_ISO_FORMAT = "%Y-%m-%dT%H:%M:%SZ"
_CLASSIC_FORMAT = "%a %b %d %H:%M:%S %z %Y"

_MAX_ID = 2**64 - 1

# unicode alphanumerics, underscore excluded
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_REQUIRED_KEYS = ("tweet_id", "user_id", "created_at", "text", "user_mentions")


@dataclass(frozen=True)
class TweetRecord:
    """One validated tweet. ``mention_ids`` preserves source order."""

    tweet_id: int
    author_id: int
    created_at: datetime  # tz-aware, UTC
    text: str
    mention_ids: tuple[int, ...]


@dataclass(frozen=True)
class IngestConfig:
    keyword: str | None = None  # case-insensitive substring filter on text


@dataclass
class IngestDiagnostics:
    """Per-reason reject counts. A rejected line is counted exactly once."""

    accepted: int = 0
    malformed_record: int = 0
    missing_author: int = 0
    bad_timestamp: int = 0
    duplicate_tweet_id: int = 0
    filtered_by_keyword: int = 0

    @property
    def rejected(self) -> int:
        return (
            self.malformed_record
            + self.missing_author
            + self.bad_timestamp
            + self.duplicate_tweet_id
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "accepted": self.accepted,
            "malformed_record": self.malformed_record,
            "missing_author": self.missing_author,
            "bad_timestamp": self.bad_timestamp,
            "duplicate_tweet_id": self.duplicate_tweet_id,
            "filtered_by_keyword": self.filtered_by_keyword,
            "rejected": self.rejected,
        }


@dataclass
class CorpusStats:
    """Tweet-level summary of a record set.

    ``total_words`` counts tokens after stop-word removal (the convention of
    the summary table); ``total_words_raw`` counts every token so both
    figures are available.
    """

    total_tweets: int = 0
    tweets_without_mentions: int = 0
    tweets_with_mentions: int = 0
    tweets_only_self_mentions: int = 0
    total_words: int = 0
    total_words_raw: int = 0
    word_frequencies: dict[str, int] = field(default_factory=dict)


def _parse_id(value) -> int | None:
    """Parse an unsigned 64-bit id given as int or decimal string."""
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        ident = value
    elif isinstance(value, str):
        text = value.strip()
        if not text.isdigit():
            return None
        ident = int(text)
    else:
        return None
    if 0 <= ident <= _MAX_ID:
        return ident
    return None


def _parse_timestamp(value) -> datetime | None:
    if not isinstance(value, str):
        return None
    try:
        return datetime.strptime(value, _ISO_FORMAT).replace(tzinfo=timezone.utc)
    except ValueError:
        pass
    try:
        return datetime.strptime(value, _CLASSIC_FORMAT).astimezone(timezone.utc)
    except ValueError:
        return None


def _parse_mentions(value) -> tuple[int, ...] | None:
    """Parse a user_mentions array; null entries mean "no mention" and are
    dropped, anything else unparseable makes the whole record malformed."""
    if not isinstance(value, list):
        return None
    mentions = []
    for entry in value:
        if entry is None:
            continue
        ident = _parse_id(entry)
        if ident is None:
            return None
        mentions.append(ident)
    return tuple(mentions)


def _iter_lines(source: IO[bytes] | IO[str] | Iterable[bytes | str]):
    for raw in source:
        if isinstance(raw, bytes):
            try:
                yield raw.decode("utf-8")
            except UnicodeDecodeError:
                yield None  # flagged malformed downstream
        else:
            yield raw


def parse_tweets(
    source: IO[bytes] | IO[str] | Iterable[bytes | str],
    config: IngestConfig | None = None,
) -> tuple[list[TweetRecord], IngestDiagnostics]:
    """Parse line-delimited tweet records from ``source``.

    Returns the well-formed records in input order plus diagnostics with
    per-reason reject counts. Bad lines never abort the run; unreadable
    sources raise the underlying I/O error. Duplicate tweet_ids keep the
    first occurrence. Blank and ``#``-comment lines are skipped silently.
    """
    config = config or IngestConfig()
    keyword = config.keyword.lower() if config.keyword else None
    records: list[TweetRecord] = []
    seen_ids: set[int] = set()
    diags = IngestDiagnostics()

    for line in _iter_lines(source):
        if line is None:
            diags.malformed_record += 1
            continue
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError:
            diags.malformed_record += 1
            continue
        if not isinstance(obj, dict) or any(k not in obj for k in _REQUIRED_KEYS):
            diags.malformed_record += 1
            continue
        tweet_id = _parse_id(obj["tweet_id"])
        text = obj["text"]
        mentions = _parse_mentions(obj["user_mentions"])
        if tweet_id is None or not isinstance(text, str) or mentions is None:
            diags.malformed_record += 1
            continue
        author_id = _parse_id(obj["user_id"])
        if author_id is None:
            diags.missing_author += 1
            continue
        created_at = _parse_timestamp(obj["created_at"])
        if created_at is None:
            diags.bad_timestamp += 1
            continue
        if tweet_id in seen_ids:
            diags.duplicate_tweet_id += 1
            continue
        seen_ids.add(tweet_id)
        if keyword is not None and keyword not in text.lower():
            diags.filtered_by_keyword += 1
            continue
        records.append(
            TweetRecord(
                tweet_id=tweet_id,
                author_id=author_id,
                created_at=created_at,
                text=text,
                mention_ids=mentions,
            )
        )
        diags.accepted += 1

    return records, diags


def parse_tweets_path(
    path, config: IngestConfig | None = None
) -> tuple[list[TweetRecord], IngestDiagnostics]:
    """Parse a tweet file; ``.gz`` paths are decompressed transparently."""
    import gzip

    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rb") as handle:
        return parse_tweets(handle, config)


def tokenize(text: str) -> list[str]:
    """Lowercase tokens split on non-alphanumeric boundaries."""
    return _TOKEN_RE.findall(text.lower())


def load_stopwords(path) -> set[str]:
    """Load a stop-word file: one lowercase word per line."""
    words = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            word = line.strip().lower()
            if word:
                words.add(word)
    return words


def corpus_stats(
    records: Iterable[TweetRecord], stopwords: set[str] | None = None
) -> CorpusStats:
    """Classify records by mention usage and count word frequencies."""
    stopwords = stopwords or set()
    stats = CorpusStats()
    freq: Counter[str] = Counter()
    for record in records:
        stats.total_tweets += 1
        if not record.mention_ids:
            stats.tweets_without_mentions += 1
        else:
            stats.tweets_with_mentions += 1
            if all(m == record.author_id for m in record.mention_ids):
                stats.tweets_only_self_mentions += 1
        tokens = tokenize(record.text)
        stats.total_words_raw += len(tokens)
        for token in tokens:
            if token not in stopwords:
                freq[token] += 1
                stats.total_words += 1
    stats.word_frequencies = dict(freq)
    return stats


def top_k_contribution(stats: CorpusStats, k: int) -> float:
    """Fraction of all counted words contributed by the k most frequent ones.

    Ties between equal counts are broken by lexicographic word order so the
    selected word set is deterministic.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if stats.total_words == 0:
        raise EmptyCorpusError("corpus has no words after filtering")
    ranked = sorted(stats.word_frequencies.items(), key=lambda kv: (-kv[1], kv[0]))
    top = sum(count for _, count in ranked[:k])
    return top / stats.total_words


def top_words(stats: CorpusStats, k: int) -> list[tuple[str, int]]:
    """The k most frequent words with counts, ties lexicographic."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ranked = sorted(stats.word_frequencies.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


def bucket_by_day(records: Iterable[TweetRecord]) -> dict[date, list[TweetRecord]]:
    """Group records by UTC calendar day, keys sorted ascending.

    Days with no records are simply absent from the map.
    """
    buckets: dict[date, list[TweetRecord]] = {}
    for record in records:
        buckets.setdefault(record.created_at.date(), []).append(record)
    return {day: buckets[day] for day in sorted(buckets)}


def canonical_json(record: TweetRecord) -> str:
    """One-line canonical serialization used for the intermediate record file."""
    return json.dumps(
        {
            "tweet_id": record.tweet_id,
            "user_id": record.author_id,
            "created_at": record.created_at.strftime(_ISO_FORMAT),
            "text": record.text,
            "user_mentions": list(record.mention_ids),
        },
        ensure_ascii=False,
        sort_keys=True,
    )
