"""Mention-network construction and analysis from tweet data."""

from .errors import (
    DegenerateTailError,
    DisconnectedComponentError,
    EmptyCorpusError,
    EmptyGraphError,
    FitConvergenceError,
    FitError,
    InsufficientTailError,
    MentionNetError,
    UnknownNodeError,
)
from .graph import EdgeMode, InteractionGraph, MentionEvent, build_graph, extract_events, merge
from .ingest import (
    CorpusStats,
    IngestConfig,
    IngestDiagnostics,
    TweetRecord,
    bucket_by_day,
    corpus_stats,
    parse_tweets,
    parse_tweets_path,
    top_k_contribution,
)
from .metrics import (
    DegreeDistribution,
    MetricsReport,
    average_clustering,
    connected_components,
    degree_distribution,
    density,
    eccentricity_radius_diameter,
    full_report,
    local_clustering,
    transitivity,
    triangle_count,
)
from .tailfit import (
    FitComparison,
    TailFit,
    compare,
    fit_exponential,
    fit_lognormal,
    fit_power_law,
    fit_truncated_power_law,
    sample_power_law,
    scale_invariance_check,
)
from .temporal import GrowthRow, commonality, growth_series

__version__ = "0.1.0"

__all__ = [
    "CorpusStats",
    "DegenerateTailError",
    "DegreeDistribution",
    "DisconnectedComponentError",
    "EdgeMode",
    "EmptyCorpusError",
    "EmptyGraphError",
    "FitComparison",
    "FitConvergenceError",
    "FitError",
    "GrowthRow",
    "IngestConfig",
    "IngestDiagnostics",
    "InsufficientTailError",
    "InteractionGraph",
    "MentionEvent",
    "MentionNetError",
    "MetricsReport",
    "TailFit",
    "TweetRecord",
    "UnknownNodeError",
    "average_clustering",
    "bucket_by_day",
    "build_graph",
    "commonality",
    "compare",
    "connected_components",
    "corpus_stats",
    "degree_distribution",
    "density",
    "eccentricity_radius_diameter",
    "extract_events",
    "fit_exponential",
    "fit_lognormal",
    "fit_power_law",
    "fit_truncated_power_law",
    "full_report",
    "growth_series",
    "local_clustering",
    "merge",
    "parse_tweets",
    "parse_tweets_path",
    "sample_power_law",
    "scale_invariance_check",
    "top_k_contribution",
    "transitivity",
    "triangle_count",
]
