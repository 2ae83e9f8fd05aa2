"""Command-line front end: ingest -> build -> analyze -> export.

Every output file starts with a provenance header that round-trips to the
resolved run configuration, so results are self-describing. Outputs are
byte-identical for identical configurations and inputs regardless of the
worker-thread count (threads change scheduling, never values, and are
therefore excluded from the provenance header).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import datasets, graph, ingest, metrics, tailfit, temporal
from .errors import MentionNetError
from .graph import EdgeMode

SUBCOMMANDS = ("ingest", "stats", "fit", "growth", "common", "words", "export")

DEFAULT_ALPHA = 0.05
DEFAULT_SEED = 42
DEFAULT_TOP = 50


@dataclass(frozen=True)
class RunConfig:
    """Resolved configuration for one CLI run."""

    inputs: tuple[str, ...] = ()
    degrees: str | None = None
    mode: str = EdgeMode.ROOT_ONLY.value
    stopwords: str | None = None
    keyword: str | None = None
    x_min: int | None = None
    alpha: float = DEFAULT_ALPHA
    out: str = "out"
    threads: int = 0  # 0 = auto; affects scheduling only, not results
    seed: int = DEFAULT_SEED
    top: int = DEFAULT_TOP

    def provenance_json(self) -> str:
        fields = dataclasses.asdict(self)
        fields.pop("threads")  # execution knob, never changes outputs
        fields["inputs"] = list(self.inputs)
        return json.dumps(fields, sort_keys=True)

    @classmethod
    def from_provenance_json(cls, text: str) -> "RunConfig":
        fields = json.loads(text)
        fields["inputs"] = tuple(fields.get("inputs", ()))
        return cls(**fields)

    def resolved_threads(self) -> int:
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1


PROVENANCE_PREFIXES = ("# run_config: ", "// run_config: ")


def read_provenance(path) -> RunConfig:
    """Recover the RunConfig embedded in any output file."""
    with open(path, "r", encoding="utf-8") as handle:
        first = handle.readline().rstrip("\n")
        for prefix in PROVENANCE_PREFIXES:
            if first.startswith(prefix):
                return RunConfig.from_provenance_json(first[len(prefix) :])
        if first.lstrip().startswith("{"):  # JSON documents embed a run_config key
            handle.seek(0)
            obj = json.load(handle)
            if isinstance(obj, dict) and "run_config" in obj:
                return RunConfig.from_provenance_json(json.dumps(obj["run_config"]))
    raise ValueError(f"no provenance header found in {path}")


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(content)


def _with_provenance(config: RunConfig, body: str, comment: str = "#") -> str:
    return f"{comment} run_config: {config.provenance_json()}\n{body}"


def _load_records(config: RunConfig):
    if not config.inputs:
        raise MentionNetError("no --input files given")
    records = []
    diags = ingest.IngestDiagnostics()
    for path in config.inputs:
        recs, d = ingest.parse_tweets_path(path, ingest.IngestConfig(keyword=config.keyword))
        records.extend(recs)
        for name in (
            "accepted",
            "malformed_record",
            "missing_author",
            "bad_timestamp",
            "duplicate_tweet_id",
            "filtered_by_keyword",
        ):
            setattr(diags, name, getattr(diags, name) + getattr(d, name))
    return records, diags


def _load_stopwords(config: RunConfig) -> set[str]:
    if config.stopwords:
        return ingest.load_stopwords(config.stopwords)
    return set()


def _edge_mode(config: RunConfig) -> EdgeMode:
    return EdgeMode(config.mode)


def _cmd_ingest(config: RunConfig) -> None:
    records, diags = _load_records(config)
    out = Path(config.out)
    body = "".join(ingest.canonical_json(r) + "\n" for r in records)
    _write(out / "records.jsonl", _with_provenance(config, body))
    payload = {
        "run_config": json.loads(config.provenance_json()),
        "diagnostics": diags.as_dict(),
    }
    _write(out / "diagnostics.json", json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _cmd_stats(config: RunConfig) -> None:
    records, _ = _load_records(config)
    stats = ingest.corpus_stats(records, _load_stopwords(config))
    g = graph.build_graph(records, _edge_mode(config))
    report = metrics.full_report(g, threads=config.resolved_threads())
    out = Path(config.out)
    _write(out / "stats.txt", _with_provenance(config, metrics.render_report_text(report, stats)))
    _write(
        out / "stats_row.csv", _with_provenance(config, metrics.render_report_csv(report, stats))
    )
    for kind in metrics.DEGREE_KINDS:
        dist = metrics.degree_distribution(g, kind)
        _write(out / f"degree_dist_{kind}.csv", _with_provenance(config, dist.as_csv()))


def _degree_data(config: RunConfig):
    if config.degrees:
        path = config.degrees
        if path == "bundled":
            path = datasets.bundled_sample_path()
        degrees = datasets.load_degrees(path)
    else:
        records, _ = _load_records(config)
        g = graph.build_graph(records, _edge_mode(config))
        degrees = metrics.undirected_degrees(g)
    return degrees[degrees >= 1]


def _cmd_fit(config: RunConfig) -> None:
    degrees = _degree_data(config)
    threads = config.resolved_threads()
    fits = tailfit.fit_all(degrees, x_min=config.x_min, threads=threads)
    comparisons = tailfit.compare_all(fits, degrees, alpha=config.alpha)
    out = Path(config.out)
    ordered = [fits[f] for f in tailfit.FAMILIES]
    _write(out / "fits.csv", _with_provenance(config, tailfit.render_fits_csv(ordered)))
    _write(
        out / "comparisons.csv",
        _with_provenance(config, tailfit.render_comparisons_csv(comparisons)),
    )


def _cmd_growth(config: RunConfig) -> None:
    records, _ = _load_records(config)
    rows = temporal.growth_series(
        records, _edge_mode(config), threads=config.resolved_threads()
    )
    _write(Path(config.out) / "growth.csv", _with_provenance(config, temporal.render_growth_csv(rows)))


def _cmd_common(config: RunConfig) -> None:
    records, _ = _load_records(config)
    buckets = ingest.bucket_by_day(records)
    mode = _edge_mode(config)
    nodes = temporal.commonality(buckets, mode, "nodes")
    links = temporal.commonality(buckets, mode, "links")
    body = temporal.render_commonality_csv(nodes, links)
    _write(Path(config.out) / "common.csv", _with_provenance(config, body))


def _cmd_words(config: RunConfig) -> None:
    records, _ = _load_records(config)
    stats = ingest.corpus_stats(records, _load_stopwords(config))
    lines = ["word,count"]
    for word, count in ingest.top_words(stats, config.top):
        lines.append(f"{word},{count}")
    body = "\n".join(lines) + "\n"
    header = ""
    if stats.total_words:
        contribution = ingest.top_k_contribution(stats, config.top)
        header = f"# top_{config.top}_contribution: {contribution!r}\n"
    _write(Path(config.out) / "words.csv", _with_provenance(config, header + body))


def _cmd_export(config: RunConfig) -> None:
    records, _ = _load_records(config)
    g = graph.build_graph(records, _edge_mode(config))
    out = Path(config.out)
    _write(out / "edges.csv", _with_provenance(config, graph.render_edge_csv(g)))
    _write(out / "nodes.csv", _with_provenance(config, graph.render_node_csv(g)))
    _write(out / "graph.dot", _with_provenance(config, graph.render_dot(g), comment="//"))


_HANDLERS = {
    "ingest": _cmd_ingest,
    "stats": _cmd_stats,
    "fit": _cmd_fit,
    "growth": _cmd_growth,
    "common": _cmd_common,
    "words": _cmd_words,
    "export": _cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mentionnet",
        description="Mention-network construction and analysis from tweet files",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run the {name} stage")
        p.add_argument("--input", nargs="+", default=[], help="tweet file(s), JSONL (.gz ok)")
        if name == "fit":
            p.add_argument(
                "--degrees",
                default=None,
                help="degree file (one integer per line) or 'bundled' for the "
                "packaged synthetic power-law sample",
            )
        p.add_argument(
            "--mode",
            choices=[m.value for m in EdgeMode],
            default=EdgeMode.ROOT_ONLY.value,
            help="mention-to-edge rule (default: root-only)",
        )
        p.add_argument("--stopwords", default=None, help="stop-word file, one word per line")
        p.add_argument("--keyword", default=None, help="keep only tweets containing this text")
        p.add_argument("--xmin", type=int, default=None, help="fix x_min instead of scanning")
        p.add_argument(
            "--alpha", type=float, default=DEFAULT_ALPHA, help="significance threshold"
        )
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--threads", type=int, default=0, help="worker threads (0 = auto)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for synthetic data")
        if name == "words":
            p.add_argument("--top", type=int, default=DEFAULT_TOP, help="words to report")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        inputs=tuple(args.input),
        degrees=getattr(args, "degrees", None),
        mode=args.mode,
        stopwords=args.stopwords,
        keyword=args.keyword,
        x_min=args.xmin,
        alpha=args.alpha,
        out=args.out,
        threads=args.threads,
        seed=args.seed,
        top=getattr(args, "top", DEFAULT_TOP),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    try:
        _HANDLERS[args.command](config)
    except (MentionNetError, OSError, ValueError) as exc:
        error = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(error, sort_keys=True), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
