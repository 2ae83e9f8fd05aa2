"""Daily cumulative growth series and day-over-day commonality fractions.

Each observed day contributes one row computed on the cumulative graph over
all records up to and including that day, so the final row is exactly the
single-shot analysis of the whole dataset. Days absent from the data are
absent from the series.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Iterable

from .errors import FitError
from .graph import EdgeMode, InteractionGraph, build_graph, extract_events, merge
from .ingest import TweetRecord, bucket_by_day
from .metrics import full_report, undirected_degrees
from .tailfit import fit_power_law, fit_truncated_power_law


@dataclass(frozen=True)
class GrowthRow:
    day: date
    cum_nodes: int
    cum_links_directed: int
    cum_links_undirected: int
    cum_isolates: int
    cum_components: int
    density_directed: float
    density_undirected: float
    density_lcc: float
    lcc_radius: int | None
    lcc_diameter: int | None
    avg_degree: float  # directed links per node, the headline convention
    avg_clustering: float
    gamma_power_law: float | None
    gamma_truncated: float | None
    fit_x_min: int | None  # x_min chosen by the day's power-law scan
    common_node_fraction: float
    common_link_fraction: float


def _active_elements(
    records: list[TweetRecord], mode: EdgeMode
) -> tuple[set[int], set[tuple[int, int]]]:
    """Nodes and undirected links touched by one day's records."""
    nodes: set[int] = set()
    links: set[tuple[int, int]] = set()
    for record in records:
        nodes.add(record.author_id)
        for event in extract_events(record, mode):
            nodes.add(event.source)
            pair = (
                (event.source, event.target)
                if event.source <= event.target
                else (event.target, event.source)
            )
            links.add(pair)
    return nodes, links


def commonality(
    records_by_day: dict[date, list[TweetRecord]],
    mode: EdgeMode = EdgeMode.ROOT_ONLY,
    element: str = "nodes",
) -> dict[date, float]:
    """Fraction of each day's active elements already seen on earlier days.

    "Active" means touched by that day's records: authors and event endpoints
    for nodes, undirected pairs created by events for links. The first day is
    0 by convention, as is any day with no active elements.
    """
    if element not in ("nodes", "links"):
        raise ValueError(f"element must be 'nodes' or 'links', got {element!r}")
    fractions: dict[date, float] = {}
    seen: set = set()
    for i, day in enumerate(sorted(records_by_day)):
        nodes, links = _active_elements(records_by_day[day], mode)
        active = nodes if element == "nodes" else links
        if i == 0 or not active:
            fractions[day] = 0.0
        else:
            fractions[day] = len(active & seen) / len(active)
        seen |= active
    return fractions


def growth_series(
    records: Iterable[TweetRecord],
    mode: EdgeMode = EdgeMode.ROOT_ONLY,
    threads: int = 1,
) -> list[GrowthRow]:
    """One row per observed day, metrics on the cumulative graph so far.

    Tail exponents are refit per day on the cumulative undirected degree
    distribution (zero-degree nodes excluded); the truncated fit reuses the
    x_min selected by that day's power-law scan. Unfittable days leave the
    exponent fields absent rather than fabricated.
    """
    buckets = bucket_by_day(records)
    node_common = commonality(buckets, mode, "nodes")
    link_common = commonality(buckets, mode, "links")
    rows: list[GrowthRow] = []
    cumulative = InteractionGraph()
    for day in buckets:
        cumulative = merge(cumulative, build_graph(buckets[day], mode))
        report = full_report(cumulative, threads=threads)
        gamma_pl = gamma_tr = fit_x_min = None
        degrees = undirected_degrees(cumulative)
        positive = degrees[degrees >= 1]
        if positive.size:
            try:
                pl = fit_power_law(positive, threads=threads)
                gamma_pl = pl.gamma
                fit_x_min = pl.x_min
                gamma_tr = fit_truncated_power_law(positive, x_min=pl.x_min).gamma
            except FitError:
                pass
        rows.append(
            GrowthRow(
                day=day,
                cum_nodes=report.nodes_directed,
                cum_links_directed=report.links_directed,
                cum_links_undirected=report.links_undirected,
                cum_isolates=report.isolate_count,
                cum_components=report.component_count,
                density_directed=report.density_directed,
                density_undirected=report.density_undirected,
                density_lcc=report.lcc_density,
                lcc_radius=report.lcc_radius,
                lcc_diameter=report.lcc_diameter,
                avg_degree=report.avg_degree_directed,
                avg_clustering=report.avg_clustering_undirected,
                gamma_power_law=gamma_pl,
                gamma_truncated=gamma_tr,
                fit_x_min=fit_x_min,
                common_node_fraction=node_common[day],
                common_link_fraction=link_common[day],
            )
        )
    return rows


_GROWTH_COLUMNS = (
    "day",
    "cum_nodes",
    "cum_links_directed",
    "cum_links_undirected",
    "cum_isolates",
    "cum_components",
    "density_directed",
    "density_undirected",
    "density_lcc",
    "lcc_radius",
    "lcc_diameter",
    "avg_degree",
    "avg_clustering",
    "gamma_power_law",
    "gamma_truncated",
    "fit_x_min",
    "common_node_fraction",
    "common_link_fraction",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, date):
        return value.isoformat()
    return str(value)


def render_growth_csv(rows: list[GrowthRow]) -> str:
    lines = [",".join(_GROWTH_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, col)) for col in _GROWTH_COLUMNS))
    return "\n".join(lines) + "\n"


def render_commonality_csv(
    node_fractions: dict[date, float], link_fractions: dict[date, float]
) -> str:
    lines = ["day,node_fraction,link_fraction"]
    for day in sorted(node_fractions):
        lines.append(f"{day.isoformat()},{node_fractions[day]!r},{link_fractions[day]!r}")
    return "\n".join(lines) + "\n"
