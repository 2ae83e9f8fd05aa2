from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import settings

from mentionnet import EdgeMode, build_graph, parse_tweets

settings.register_profile("ci", deadline=None, max_examples=50)
settings.load_profile("ci")

# the three worked tweets: a retweet chain rooted at user 709920419529281537
WORKED_TWEET_LINES = [
    json.dumps(
        {
            "tweet_id": 725516302819938305,
            "user_id": 709920419529281537,
            "created_at": "Thu Apr 28 02:45:40 +0000 2016",
            "text": "at purdue university, we are in this campaign to win and become "
            "the democratic nominee. - bernie sanders htt...",
            "user_mentions": [None],
            "user_followers_count": 120,
        }
    ),
    json.dumps(
        {
            "tweet_id": 727147016233558016,
            "user_id": 3239853627,
            "created_at": "2016-05-02T14:45:33Z",
            "text": "rt @saracohennyc at purdue university, we are in this campaign to "
            "win and become the democratic nominee. - bernie sanders htt...",
            "user_mentions": [709920419529281537],
        }
    ),
    json.dumps(
        {
            "tweet_id": 727495513277382656,
            "user_id": "325069363",
            "created_at": "2016-05-03T13:50:21Z",
            "text": "rt @bernie loves all: rt @saracohennyc at purdue university, we are "
            "in this campaign to win and become the democratic nominee. - bernie "
            "sanders htt...",
            "user_mentions": ["3239853627", 709920419529281537],
        }
    ),
]

ROOT_USER = 709920419529281537
MIDDLE_USER = 3239853627
LEAF_USER = 325069363


@pytest.fixture
def worked_records():
    records, diags = parse_tweets(WORKED_TWEET_LINES)
    assert diags.accepted == 3 and diags.rejected == 0
    return records


def record_line(
    tweet_id: int,
    user_id: int,
    mentions=(),
    created_at: str = "2016-04-20T12:00:00Z",
    text: str = "hello world",
) -> str:
    return json.dumps(
        {
            "tweet_id": tweet_id,
            "user_id": user_id,
            "created_at": created_at,
            "text": text,
            "user_mentions": list(mentions),
        }
    )


def records_from_edges(directed_edges, isolates=(), day="2016-04-20"):
    """One tweet per directed edge (author = target mentions source) plus a
    mention-less tweet per isolate; RootOnly reproduces the edge set."""
    lines = []
    tid = 1
    for s, t in directed_edges:
        lines.append(record_line(tid, t, [s], created_at=f"{day}T12:00:00Z"))
        tid += 1
    for node in isolates:
        lines.append(record_line(tid, node, [], created_at=f"{day}T12:00:00Z"))
        tid += 1
    records, diags = parse_tweets(lines)
    assert diags.rejected == 0
    return records


def graph_from_edges(directed_edges, isolates=()):
    return build_graph(records_from_edges(directed_edges, isolates), EdgeMode.ROOT_ONLY)


def random_edge_graph(rng: np.random.Generator, n_max: int = 100):
    """Random graph for fuzzing: sparse-to-dense edge sets plus isolates."""
    n = int(rng.integers(2, n_max + 1))
    density = rng.choice([0.01, 0.05, 0.1, 0.3])
    m = max(1, int(density * n * (n - 1)))
    src = rng.integers(1, n + 1, size=m * 2)
    dst = rng.integers(1, n + 1, size=m * 2)
    edges = [(int(s), int(t)) for s, t in zip(src, dst) if s != t][:m]
    edges = list(dict.fromkeys(edges))
    isolates = [int(x) for x in rng.integers(n + 1, n + 1 + max(1, n // 10), size=3)]
    return graph_from_edges(edges, isolates)


DAYS_5 = ["2016-04-18", "2016-04-19", "2016-04-21", "2016-04-22", "2016-04-23"]

_WORDS = (
    "purdue university campaign win nominee boilermakers giving day train "
    "transit event traffic network mention degree cluster sanders primary "
    "indiana lafayette spring game football basketball research lab"
).split()


def synthetic_corpus_lines(
    n_tweets: int = 10_000,
    n_users: int = 4_000,
    days=DAYS_5,
    seed: int = 20160416,
) -> list[str]:
    """Heavy-tailed synthetic tweet corpus spread over the given days."""
    rng = np.random.default_rng(seed)
    lines = []
    n_mentions = rng.choice([0, 1, 2, 3], size=n_tweets, p=[0.4, 0.4, 0.15, 0.05])
    for i in range(n_tweets):
        author = int(min(rng.zipf(1.8), n_users))
        mentions = []
        for _ in range(n_mentions[i]):
            mentioned = int(min(rng.zipf(1.5), n_users))
            mentions.append(mentioned)
        day = days[int(rng.integers(0, len(days)))]
        hh, mm, ss = rng.integers(0, 24), rng.integers(0, 60), rng.integers(0, 60)
        text = " ".join(rng.choice(_WORDS, size=rng.integers(3, 12)))
        lines.append(
            record_line(
                tweet_id=1_000_000 + i,
                user_id=author,
                mentions=mentions,
                created_at=f"{day}T{hh:02d}:{mm:02d}:{ss:02d}Z",
                text=text,
            )
        )
    return lines


@pytest.fixture(scope="session")
def five_day_corpus():
    lines = synthetic_corpus_lines()
    records, diags = parse_tweets(lines)
    assert diags.rejected == 0
    return records
