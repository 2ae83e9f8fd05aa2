"""Mention-event extraction and interaction-graph accumulation.

Edges carry influence from the mentioned account to the account citing it:
a tweet by B that mentions A yields the directed link A -> B.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Iterable, Mapping

from .ingest import TweetRecord


class EdgeMode(str, Enum):
    """How mention lists turn into events.

    ROOT_ONLY emits a single event per tweet, from the last non-self mention
    (the original source in a retweet chain). ALL_MENTIONS emits one event
    per distinct non-self mention.
    """

    ROOT_ONLY = "root-only"
    ALL_MENTIONS = "all-mentions"


@dataclass(frozen=True)
class MentionEvent:
    source: int  # the mentioned user (influence origin)
    target: int  # the tweet author
    tweet_id: int
    timestamp: datetime


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True, eq=True)
class InteractionGraph:
    """Accumulated mention multigraph.

    ``edge_weights`` maps each unordered pair to the number of events that
    produced it; ``directed_edges`` is the deduplicated directed projection.
    Instances are treated as immutable once built.
    """

    nodes: frozenset[int] = frozenset()
    directed_edges: frozenset[tuple[int, int]] = frozenset()
    edge_weights: Mapping[tuple[int, int], int] = field(default_factory=dict)
    event_log: tuple[MentionEvent, ...] = ()

    @property
    def undirected_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edge_weights)

    def __hash__(self):  # dict field is unhashable; identity is fine here
        return id(self)


def extract_events(record: TweetRecord, mode: EdgeMode) -> list[MentionEvent]:
    """Turn one record into mention events; self-mentions never count."""
    non_self = [m for m in record.mention_ids if m != record.author_id]
    if not non_self:
        return []
    if mode is EdgeMode.ROOT_ONLY:
        sources = [non_self[-1]]
    else:
        sources = list(dict.fromkeys(non_self))  # distinct, first-seen order
    return [
        MentionEvent(
            source=source,
            target=record.author_id,
            tweet_id=record.tweet_id,
            timestamp=record.created_at,
        )
        for source in sources
    ]


def build_graph(
    records: Iterable[TweetRecord], mode: EdgeMode = EdgeMode.ROOT_ONLY
) -> InteractionGraph:
    """Accumulate records into an interaction graph.

    Authors of mention-less tweets become isolate nodes; mentioned users
    enter the node set only when one of their mentions produced an event.
    """
    nodes: set[int] = set()
    directed: set[tuple[int, int]] = set()
    weights: Counter[tuple[int, int]] = Counter()
    log: list[MentionEvent] = []
    for record in records:
        nodes.add(record.author_id)
        for event in extract_events(record, mode):
            nodes.add(event.source)
            directed.add((event.source, event.target))
            weights[_pair(event.source, event.target)] += 1
            log.append(event)
    return InteractionGraph(
        nodes=frozenset(nodes),
        directed_edges=frozenset(directed),
        edge_weights=dict(weights),
        event_log=tuple(log),
    )


def merge(g1: InteractionGraph, g2: InteractionGraph) -> InteractionGraph:
    """Union nodes and edges, sum weights, concatenate event logs."""
    weights = Counter(g1.edge_weights)
    weights.update(g2.edge_weights)
    return InteractionGraph(
        nodes=g1.nodes | g2.nodes,
        directed_edges=g1.directed_edges | g2.directed_edges,
        edge_weights=dict(weights),
        event_log=g1.event_log + g2.event_log,
    )


def directed_event_counts(g: InteractionGraph) -> dict[tuple[int, int], int]:
    """Event occurrence count per directed pair, recovered from the log."""
    counts: Counter[tuple[int, int]] = Counter()
    for event in g.event_log:
        counts[(event.source, event.target)] += 1
    return dict(counts)


def node_degrees(g: InteractionGraph) -> dict[int, tuple[int, int, int]]:
    """Per node: (undirected simple degree, in-degree, out-degree)."""
    und: Counter[int] = Counter()
    ind: Counter[int] = Counter()
    out: Counter[int] = Counter()
    for a, b in g.edge_weights:
        und[a] += 1
        und[b] += 1
    for s, t in g.directed_edges:
        out[s] += 1
        ind[t] += 1
    return {n: (und[n], ind[n], out[n]) for n in sorted(g.nodes)}


def render_edge_csv(g: InteractionGraph) -> str:
    """Undirected weighted edge list, ``source,target,weight``, sorted."""
    lines = ["source,target,weight"]
    for (a, b) in sorted(g.edge_weights):
        lines.append(f"{a},{b},{g.edge_weights[(a, b)]}")
    return "\n".join(lines) + "\n"


def render_node_csv(g: InteractionGraph) -> str:
    """Node list with degree columns, sorted by node id."""
    lines = ["node_id,degree,in_degree,out_degree"]
    for node, (deg, ind, out) in node_degrees(g).items():
        lines.append(f"{node},{deg},{ind},{out}")
    return "\n".join(lines) + "\n"


def render_dot(g: InteractionGraph) -> str:
    """DOT digraph for external renderers; weight = directed event count."""
    counts = directed_event_counts(g)
    lines = ["digraph mention_network {"]
    for node in sorted(g.nodes):
        lines.append(f'    "{node}";')
    for s, t in sorted(g.directed_edges):
        lines.append(f'    "{s}" -> "{t}" [weight={counts[(s, t)]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
