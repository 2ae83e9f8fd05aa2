"""Structural metrics on an interaction graph.

All triangle, clustering and transitivity math runs on the undirected simple
projection (multiplicities and weights ignored); component semantics for the
directed graph are weak connectivity. Radius and diameter are exact, from an
all-source BFS over the component in question.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from . import _bfs
from .errors import DisconnectedComponentError, EmptyGraphError, UnknownNodeError
from .graph import InteractionGraph

DEGREE_KINDS = ("in", "out", "total", "undirected")


@dataclass(frozen=True)
class DegreeDistribution:
    """Histogram of node degrees over the full node set, isolates included."""

    histogram: dict[int, int]
    n: int
    kind: str

    def pmf(self) -> dict[int, float]:
        return {k: c / self.n for k, c in self.histogram.items()}

    def ccdf(self) -> dict[int, float]:
        """Fraction of nodes with degree >= k, for each observed k."""
        ks = sorted(self.histogram)
        out = {}
        remaining = self.n
        for k in ks:
            out[k] = remaining / self.n
            remaining -= self.histogram[k]
        return out

    def as_csv(self) -> str:
        pmf = self.pmf()
        ccdf = self.ccdf()
        lines = ["k,count,pmf,ccdf"]
        for k in sorted(self.histogram):
            lines.append(f"{k},{self.histogram[k]},{pmf[k]!r},{ccdf[k]!r}")
        return "\n".join(lines) + "\n"


@dataclass
class MetricsReport:
    nodes_directed: int = 0
    links_directed: int = 0
    density_directed: float = 0.0
    nodes_undirected: int = 0
    links_undirected: int = 0
    density_undirected: float = 0.0
    lcc_nodes: int = 0
    lcc_links: int = 0
    lcc_density: float = 0.0
    lcc_radius: int | None = None
    lcc_diameter: int | None = None
    component_count: int = 0
    isolate_count: int = 0
    avg_degree_directed: float = 0.0
    avg_degree_undirected: float = 0.0
    avg_clustering_undirected: float = 0.0
    transitivity: float = 0.0
    # conventions baked into the numbers above, recorded for reproducibility
    conventions: dict = field(
        default_factory=lambda: {
            "clustering_low_degree": "nodes with degree < 2 contribute 0",
            "avg_degree_directed": "directed links per node (m/n)",
            "components": "weak connectivity",
        }
    )


class _Index:
    """Sorted node-id index plus the undirected simple CSR adjacency."""

    def __init__(self, g: InteractionGraph):
        self.ids = np.fromiter(sorted(g.nodes), dtype=np.uint64, count=len(g.nodes))
        self.pos = {int(node): i for i, node in enumerate(self.ids)}
        n = self.ids.size
        pairs = g.edge_weights
        if pairs:
            a = np.fromiter((self.pos[p[0]] for p in pairs), dtype=np.int64, count=len(pairs))
            b = np.fromiter((self.pos[p[1]] for p in pairs), dtype=np.int64, count=len(pairs))
            rows = np.concatenate([a, b])
            cols = np.concatenate([b, a])
            data = np.ones(rows.size, dtype=np.int64)
            self.adj = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
        else:
            self.adj = sp.csr_matrix((n, n), dtype=np.int64)
        self.degrees = np.diff(self.adj.indptr)


def density(n: int, m: int, directed: bool) -> float:
    """Links over maximum possible links; graphs with <= 1 node have density 0."""
    if n <= 1:
        return 0.0
    possible = n * (n - 1) if directed else n * (n - 1) / 2
    return m / possible


def degree_distribution(g: InteractionGraph, kind: str = "undirected") -> DegreeDistribution:
    if kind not in DEGREE_KINDS:
        raise ValueError(f"kind must be one of {DEGREE_KINDS}, got {kind!r}")
    ind: Counter[int] = Counter()
    out: Counter[int] = Counter()
    und: Counter[int] = Counter()
    for s, t in g.directed_edges:
        out[s] += 1
        ind[t] += 1
    for a, b in g.edge_weights:
        und[a] += 1
        und[b] += 1
    if kind == "in":
        per_node = ind
    elif kind == "out":
        per_node = out
    elif kind == "total":
        per_node = Counter({n: ind[n] + out[n] for n in g.nodes})
    else:
        per_node = und
    histogram: Counter[int] = Counter(per_node[n] for n in g.nodes)
    return DegreeDistribution(histogram=dict(histogram), n=len(g.nodes), kind=kind)


def undirected_degrees(g: InteractionGraph) -> np.ndarray:
    """Undirected simple degree per node, ordered by ascending node id."""
    return _Index(g).degrees.astype(np.int64)


def connected_components(g: InteractionGraph) -> list[set[int]]:
    """Weakly connected components, largest first (ties: smallest node id)."""
    if not g.nodes:
        return []
    index = _Index(g)
    ncomp, labels = csgraph.connected_components(index.adj, directed=False)
    members: list[list[int]] = [[] for _ in range(ncomp)]
    for i, label in enumerate(labels):
        members[label].append(int(index.ids[i]))
    components = [set(m) for m in members]
    components.sort(key=lambda comp: (-len(comp), min(comp)))
    return components


def _component_eccentricities(
    index: _Index, member_rows: np.ndarray, threads: int = 1
) -> np.ndarray:
    sub = index.adj[member_rows][:, member_rows].tocsr()
    ecc = _bfs.all_eccentricities(sub.indptr, sub.indices, threads=threads)
    if ecc.size and ecc.min() < 0:
        raise DisconnectedComponentError("node set is not connected; eccentricity undefined")
    return ecc


def eccentricity_radius_diameter(
    component: Iterable[int], g: InteractionGraph, threads: int = 1
) -> tuple[dict[int, int], int, int]:
    """Exact hop eccentricities of a connected node set, with radius/diameter."""
    members = sorted(set(component))
    if not members:
        raise ValueError("component must contain at least one node")
    index = _Index(g)
    try:
        rows = np.array([index.pos[m] for m in members], dtype=np.int64)
    except KeyError as exc:
        raise UnknownNodeError(f"node {exc.args[0]} is not in the graph") from None
    ecc = _component_eccentricities(index, rows, threads=threads)
    eccentricities = {m: int(e) for m, e in zip(members, ecc)}
    return eccentricities, int(ecc.min()), int(ecc.max())


def _triangles_per_node(adj: sp.csr_matrix) -> np.ndarray:
    """Triangles through each node of a simple undirected adjacency."""
    if adj.nnz == 0:
        return np.zeros(adj.shape[0], dtype=np.int64)
    paths = (adj @ adj).multiply(adj)
    return np.asarray(paths.sum(axis=1)).ravel() // 2


def triangle_count(g: InteractionGraph) -> int:
    index = _Index(g)
    return int(_triangles_per_node(index.adj).sum()) // 3


def _clustering_vector(adj: sp.csr_matrix, degrees: np.ndarray) -> np.ndarray:
    tri = _triangles_per_node(adj)
    cc = np.zeros(adj.shape[0], dtype=np.float64)
    eligible = degrees >= 2
    d = degrees[eligible].astype(np.float64)
    cc[eligible] = 2.0 * tri[eligible] / (d * (d - 1.0))
    return cc


def local_clustering(g: InteractionGraph, node: int) -> float:
    """Fraction of possible triangles through ``node`` that exist."""
    if node not in g.nodes:
        raise UnknownNodeError(f"node {node} is not in the graph")
    neighbors: set[int] = set()
    for a, b in g.edge_weights:
        if a == node:
            neighbors.add(b)
        elif b == node:
            neighbors.add(a)
    deg = len(neighbors)
    if deg < 2:
        return 0.0
    pairs = g.edge_weights
    ordered = sorted(neighbors)
    triangles = 0
    for i, u in enumerate(ordered):
        for v in ordered[i + 1 :]:
            if (u, v) in pairs:
                triangles += 1
    return 2.0 * triangles / (deg * (deg - 1))


def average_clustering(g: InteractionGraph) -> float:
    """Mean local clustering over all nodes; degree < 2 contributes 0."""
    if not g.nodes:
        raise EmptyGraphError("average clustering of an empty graph is undefined")
    index = _Index(g)
    return float(np.mean(_clustering_vector(index.adj, index.degrees)))


def transitivity(g: InteractionGraph) -> float:
    """3 * triangles / connected triples; 0 when there are no triples."""
    if not g.nodes:
        return 0.0
    index = _Index(g)
    degrees = index.degrees.astype(np.int64)
    triples = int((degrees * (degrees - 1) // 2).sum())
    if triples == 0:
        return 0.0
    triangles = int(_triangles_per_node(index.adj).sum()) // 3
    return 3.0 * triangles / triples


def full_report(g: InteractionGraph, threads: int = 1) -> MetricsReport:
    """Every summary metric in one pass; radius/diameter on the LCC only."""
    report = MetricsReport()
    n = len(g.nodes)
    if n == 0:
        return report
    index = _Index(g)
    m_dir = len(g.directed_edges)
    m_und = len(g.edge_weights)
    report.nodes_directed = n
    report.links_directed = m_dir
    report.density_directed = density(n, m_dir, directed=True)
    report.nodes_undirected = n
    report.links_undirected = m_und
    report.density_undirected = density(n, m_und, directed=False)
    report.avg_degree_directed = m_dir / n
    report.avg_degree_undirected = 2 * m_und / n

    ncomp, labels = csgraph.connected_components(index.adj, directed=False)
    sizes = np.bincount(labels, minlength=ncomp)
    report.component_count = int(ncomp)
    report.isolate_count = int((index.degrees == 0).sum())

    lcc_label = int(np.argmax(sizes))
    lcc_rows = np.where(labels == lcc_label)[0]
    report.lcc_nodes = int(sizes[lcc_label])
    sub = index.adj[lcc_rows][:, lcc_rows]
    report.lcc_links = int(sub.nnz) // 2
    report.lcc_density = density(report.lcc_nodes, report.lcc_links, directed=False)
    ecc = _component_eccentricities(index, lcc_rows, threads=threads)
    report.lcc_radius = int(ecc.min())
    report.lcc_diameter = int(ecc.max())

    cc = _clustering_vector(index.adj, index.degrees)
    report.avg_clustering_undirected = float(np.mean(cc))
    degrees = index.degrees.astype(np.int64)
    triples = int((degrees * (degrees - 1) // 2).sum())
    triangles = int(_triangles_per_node(index.adj).sum()) // 3
    report.transitivity = 3.0 * triangles / triples if triples else 0.0
    return report


_TABLE_ROWS = (
    ("Number of Nodes (directed)", "nodes_directed", "count"),
    ("Number of Links (directed)", "links_directed", "count"),
    ("Network Density (directed)", "density_directed", "density"),
    ("Number of Nodes (undirected)", "nodes_undirected", "count"),
    ("Number of Links (undirected)", "links_undirected", "count"),
    ("Network Density (undirected)", "density_undirected", "density"),
    ("Number of Nodes (largest connected component)", "lcc_nodes", "count"),
    ("Number of Links (largest connected component)", "lcc_links", "count"),
    ("Network Density (largest connected component)", "lcc_density", "density"),
    ("Radius (largest connected component)", "lcc_radius", "hops"),
    ("Diameter (largest connected component)", "lcc_diameter", "hops"),
    ("Number of Connected Components", "component_count", "count"),
    ("Number of Isolates", "isolate_count", "count"),
    ("Average Degree (directed)", "avg_degree_directed", "scalar"),
    ("Average Clustering Coefficient (undirected)", "avg_clustering_undirected", "scalar"),
)


def _format_value(value, style: str) -> str:
    if value is None:
        return "undefined"
    if style == "count":
        return f"{value:,}"
    if style == "density":
        return f"{value:.5f}"
    if style == "scalar":
        return f"{value:.3f}"
    return str(value)


def render_report_text(report: MetricsReport, corpus=None) -> str:
    """Aligned two-column summary table, tweet block first when available."""
    rows: list[tuple[str, str]] = []
    if corpus is not None:
        rows.append(("Description of the Tweets", ""))
        rows.append(("Number of Total Tweets", f"{corpus.total_tweets:,}"))
        rows.append(
            ("Number of Tweets without any User Mentions", f"{corpus.tweets_without_mentions:,}")
        )
        rows.append(
            ("Number of Tweets with at least one User Mentions", f"{corpus.tweets_with_mentions:,}")
        )
        rows.append(
            ("Number of Tweets only including Self Mentions", f"{corpus.tweets_only_self_mentions:,}")
        )
        rows.append(("Number of Words", f"{corpus.total_words:,}"))
    rows.append(("Description of Network Elements", ""))
    for label, attr, style in _TABLE_ROWS:
        rows.append((label, _format_value(getattr(report, attr), style)))
    rows.append(("Additional Metrics", ""))
    rows.append(("Average Degree (undirected)", f"{report.avg_degree_undirected:.3f}"))
    rows.append(("Transitivity (undirected)", f"{report.transitivity:.3f}"))
    if corpus is not None:
        rows.append(("Number of Words (before stop-word removal)", f"{corpus.total_words_raw:,}"))

    width = max(len(label) for label, _ in rows) + 2
    lines = []
    for label, value in rows:
        if value == "":
            lines.append(label)
        else:
            lines.append(f"  {label:<{width}}{value:>14}")
    return "\n".join(lines) + "\n"


def report_csv_fields(report: MetricsReport, corpus=None) -> dict[str, object]:
    """Flat field map backing the machine-readable one-row CSV."""
    fields: dict[str, object] = {}
    if corpus is not None:
        fields.update(
            total_tweets=corpus.total_tweets,
            tweets_without_mentions=corpus.tweets_without_mentions,
            tweets_with_mentions=corpus.tweets_with_mentions,
            tweets_only_self_mentions=corpus.tweets_only_self_mentions,
            total_words=corpus.total_words,
            total_words_raw=corpus.total_words_raw,
        )
    fields.update(
        nodes_directed=report.nodes_directed,
        links_directed=report.links_directed,
        density_directed=report.density_directed,
        nodes_undirected=report.nodes_undirected,
        links_undirected=report.links_undirected,
        density_undirected=report.density_undirected,
        lcc_nodes=report.lcc_nodes,
        lcc_links=report.lcc_links,
        lcc_density=report.lcc_density,
        lcc_radius=report.lcc_radius,
        lcc_diameter=report.lcc_diameter,
        component_count=report.component_count,
        isolate_count=report.isolate_count,
        avg_degree_directed=report.avg_degree_directed,
        avg_degree_undirected=report.avg_degree_undirected,
        avg_clustering_undirected=report.avg_clustering_undirected,
        transitivity=report.transitivity,
    )
    return fields


def render_report_csv(report: MetricsReport, corpus=None) -> str:
    fields = report_csv_fields(report, corpus)

    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, float):
            return repr(v)
        return str(v)

    header = ",".join(fields)
    values = ",".join(fmt(v) for v in fields.values())
    return f"{header}\n{values}\n"
