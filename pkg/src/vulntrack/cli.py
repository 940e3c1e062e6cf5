"""Command-line frontend.

One verb per engine function so the whole workflow is scriptable:

    vulntrack --store ./store import --corpus reports.jsonl
    vulntrack --store ./store index
    vulntrack --store ./store load-vectors
    vulntrack --store ./store finetune --epochs 5
    vulntrack --store ./store topic create injections sql inject
    vulntrack --store ./store expand --topic injections --theta 0.9
    vulntrack --store ./store query --topic injections --order relevance
    vulntrack --store ./store trend --topic injections --granularity year
    vulntrack --store ./store serve --port 8000

The store path may also come from the VULNTRACK_STORE environment
variable; the flag wins when both are present.
"""

from __future__ import annotations

import csv
import json
import logging
import sys
from datetime import date
from pathlib import Path

import click

from . import serialize
from .embeddings import GloveConfig
from .engine import EngineConfig, TrackingEngine
from .errors import VulnTrackError
from .trends import SpikeConfig

log = logging.getLogger(__name__)


def _open_engine(ctx: click.Context, create: bool = False) -> TrackingEngine:
    store = ctx.obj.get("store")
    if store is None:
        raise click.UsageError(
            "no store path; pass --store or set VULNTRACK_STORE")
    return TrackingEngine(store, create=create)


def _parse_date(value: str | None, flag: str) -> date | None:
    if value is None:
        return None
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise click.BadParameter(f"{flag} must be an ISO date (YYYY-MM-DD)")


@click.group()
@click.option("--store", envvar="VULNTRACK_STORE",
              type=click.Path(path_type=Path),
              help="Store directory (env: VULNTRACK_STORE).")
@click.option("--verbose", is_flag=True, help="Log at DEBUG level.")
@click.pass_context
def main(ctx: click.Context, store: Path | None, verbose: bool) -> None:
    """Security-report tracking: index, embed, expand, retrieve, trend."""
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    ctx.ensure_object(dict)
    ctx.obj["store"] = store


@main.command("import")
@click.option("--corpus", "corpus_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="JSONL corpus file (fields: id, date, description).")
@click.pass_context
def import_cmd(ctx: click.Context, corpus_path: Path) -> None:
    """Import corpus records; duplicate ids overwrite."""
    engine = _open_engine(ctx, create=True)
    with corpus_path.open(encoding="utf-8") as stream:
        count = engine.import_documents(stream)
    engine.save()
    click.echo(serialize.to_json({"imported": count}))


@main.command("convert-cve-csv")
@click.option("--in", "csv_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="CVE CSV export.")
@click.option("--out", "out_path", type=click.Path(path_type=Path),
              help="Output JSONL path (default: stdout).")
@click.option("--id-col", default=0, show_default=True,
              help="Column index of the CVE identifier.")
@click.option("--date-col", default=1, show_default=True,
              help="Column index of the publish date.")
@click.option("--desc-col", default=2, show_default=True,
              help="Column index of the description.")
@click.option("--skip-rows", default=0, show_default=True,
              help="Header/preamble rows to skip.")
def convert_cve_csv(csv_path: Path, out_path: Path | None, id_col: int,
                    date_col: int, desc_col: int, skip_rows: int) -> None:
    """Convert a CVE CSV export to the corpus JSONL format."""
    converted = 0
    skipped = 0
    out = out_path.open("w", encoding="utf-8") if out_path else sys.stdout
    try:
        with csv_path.open(encoding="utf-8", newline="") as stream:
            reader = csv.reader(stream)
            for lineno, row in enumerate(reader, start=1):
                if lineno <= skip_rows:
                    continue
                needed = max(id_col, date_col, desc_col)
                if len(row) <= needed:
                    log.warning("csv row %d: only %d columns, skipped",
                                lineno, len(row))
                    skipped += 1
                    continue
                cve_id = row[id_col].strip()
                raw_date = row[date_col].strip()
                description = row[desc_col]
                try:
                    parsed = date.fromisoformat(raw_date)
                except ValueError:
                    log.warning("csv row %d: unparseable date %r, skipped",
                                lineno, raw_date)
                    skipped += 1
                    continue
                if not cve_id:
                    log.warning("csv row %d: empty id, skipped", lineno)
                    skipped += 1
                    continue
                out.write(json.dumps(
                    {"id": cve_id, "date": parsed.isoformat(),
                     "description": description},
                    ensure_ascii=False) + "\n")
                converted += 1
    finally:
        if out_path:
            out.close()
    click.echo(serialize.to_json({"converted": converted, "skipped": skipped}),
               err=out_path is None)


@main.command("index")
@click.pass_context
def index_cmd(ctx: click.Context) -> None:
    """Index every document not yet indexed."""
    engine = _open_engine(ctx)
    count = engine.index_pending()
    engine.save()
    click.echo(serialize.to_json({"indexed": count}))


@main.command("dict-load")
@click.option("--english", "english_path",
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Word list to load as curated English vocabulary.")
@click.option("--domain", "domain_path",
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Word list to load as domain terms (exempt from stemming).")
@click.option("--corrections", "corrections_path",
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Tab-separated misspelling corrections.")
@click.pass_context
def dict_load(ctx: click.Context, english_path: Path | None,
              domain_path: Path | None, corrections_path: Path | None) -> None:
    """Load word lists and correction maps into the dictionary."""
    if not any((english_path, domain_path, corrections_path)):
        raise click.UsageError(
            "pass at least one of --english/--domain/--corrections")
    engine = _open_engine(ctx, create=True)
    report = {}
    if domain_path:
        with domain_path.open(encoding="utf-8") as stream:
            report["domain"] = engine.load_dictionary(stream, "domain")
    if english_path:
        with english_path.open(encoding="utf-8") as stream:
            report["english"] = engine.load_dictionary(stream, "english")
    if corrections_path:
        with corrections_path.open(encoding="utf-8") as stream:
            report["corrections"] = engine.load_corrections(stream)
    engine.save()
    click.echo(serialize.to_json(report))


@main.command("load-vectors")
@click.option("--file", "vector_path",
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Plain-text word-vector file; omit for all-random init.")
@click.pass_context
def load_vectors(ctx: click.Context, vector_path: Path | None) -> None:
    """Install pre-trained vectors; dictionary keywords missing from the
    file (or all of them, without --file) get seeded random vectors."""
    engine = _open_engine(ctx)
    if vector_path is None:
        loaded, randomized = engine.load_vectors(None)
    else:
        with vector_path.open(encoding="utf-8") as stream:
            loaded, randomized = engine.load_vectors(stream)
    engine.save()
    click.echo(serialize.to_json({"loaded": loaded, "randomized": randomized}))


@main.command("finetune")
@click.option("--epochs", type=int, help="Training epochs (default from config).")
@click.option("--learning-rate", type=float, help="AdaGrad base step size.")
@click.option("--x-max", type=float, help="Weighting cutoff.")
@click.option("--alpha", type=float, help="Weighting exponent.")
@click.pass_context
def finetune(ctx: click.Context, epochs: int | None, learning_rate: float | None,
             x_max: float | None, alpha: float | None) -> None:
    """Fine-tune vectors on the indexed co-occurrence table.

    Prints one JSON line per epoch: {"epoch": n, "loss": x}.
    """
    engine = _open_engine(ctx)
    base = engine.config.glove
    config = GloveConfig(
        x_max=x_max if x_max is not None else base.x_max,
        alpha=alpha if alpha is not None else base.alpha,
        learning_rate=(learning_rate if learning_rate is not None
                       else base.learning_rate),
        epochs=epochs if epochs is not None else base.epochs,
    )
    report = engine.fine_tune(config)
    engine.save()
    for item in report:
        click.echo(serialize.to_json({"epoch": item.epoch, "loss": item.loss}))


@main.group()
def topic() -> None:
    """Create and inspect topics."""


@topic.command("create")
@click.argument("name")
@click.argument("keywords", nargs=-1)
@click.pass_context
def topic_create(ctx: click.Context, name: str, keywords: tuple[str, ...]) -> None:
    """Create a topic from keywords (normalized through the pipeline)."""
    engine = _open_engine(ctx)
    created = engine.create_topic(name, list(keywords))
    engine.save()
    click.echo(serialize.to_json(serialize.topic_payload(created)))


@topic.command("show")
@click.argument("name")
@click.pass_context
def topic_show(ctx: click.Context, name: str) -> None:
    """Print one topic as JSON."""
    engine = _open_engine(ctx)
    click.echo(serialize.to_json(
        serialize.topic_payload(engine.get_topic(name))))


@topic.command("add-keywords")
@click.argument("name")
@click.argument("keywords", nargs=-1, required=True)
@click.pass_context
def topic_add_keywords(ctx: click.Context, name: str,
                       keywords: tuple[str, ...]) -> None:
    """Add keywords to an existing topic."""
    engine = _open_engine(ctx)
    updated = engine.add_keywords(name, list(keywords))
    engine.save()
    click.echo(serialize.to_json(serialize.topic_payload(updated)))


@main.command("expand")
@click.option("--topic", "topic_name", required=True, help="Topic name.")
@click.option("--theta", type=float,
              help="Similarity threshold in (0,1); default from config.")
@click.option("--limit", type=int, help="Maximum candidates (default 50).")
@click.pass_context
def expand(ctx: click.Context, topic_name: str, theta: float | None,
           limit: int | None) -> None:
    """Recommend keywords similar to the topic, ranked by idf."""
    engine = _open_engine(ctx)
    candidates = engine.expand(topic_name, theta, limit)
    click.echo(serialize.to_json(serialize.candidates_payload(candidates)))


@main.command("query")
@click.option("--topic", "topic_name", required=True, help="Topic name.")
@click.option("--order", type=click.Choice(["relevance", "date"]),
              default="relevance", show_default=True)
@click.option("--limit", type=int, default=50, show_default=True)
@click.pass_context
def query(ctx: click.Context, topic_name: str, order: str, limit: int) -> None:
    """Retrieve matching reports, one JSON object per line."""
    engine = _open_engine(ctx)
    results = engine.retrieve(topic_name, order, limit)
    for result in results:
        click.echo(serialize.to_json(serialize.result_payload(result)))


@main.command("trend")
@click.option("--topic", "topic_name", required=True, help="Topic name.")
@click.option("--granularity", type=click.Choice(["year", "month"]),
              default="year", show_default=True)
@click.option("--from", "from_str", help="Range start (ISO date), default corpus min.")
@click.option("--to", "to_str", help="Range end (ISO date), default corpus max.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.pass_context
def trend(ctx: click.Context, topic_name: str, granularity: str,
          from_str: str | None, to_str: str | None, fmt: str) -> None:
    """Report counts per period for a topic."""
    engine = _open_engine(ctx)
    series = engine.trend(topic_name, granularity,
                          _parse_date(from_str, "--from"),
                          _parse_date(to_str, "--to"))
    if fmt == "csv":
        click.echo(serialize.trend_csv(series), nl=False)
    else:
        click.echo(serialize.to_json(serialize.trend_payload(series)))


@main.command("spikes")
@click.option("--topic", "topic_name", required=True, help="Topic name.")
@click.option("--granularity", type=click.Choice(["year", "month"]),
              default="year", show_default=True)
@click.option("--from", "from_str", help="Range start (ISO date).")
@click.option("--to", "to_str", help="Range end (ISO date).")
@click.option("--window", type=int, help="Trailing window in buckets.")
@click.option("--threshold", type=float, help="Z-score threshold.")
@click.pass_context
def spikes(ctx: click.Context, topic_name: str, granularity: str,
           from_str: str | None, to_str: str | None,
           window: int | None, threshold: float | None) -> None:
    """Flag abnormal spikes in a topic's trend."""
    engine = _open_engine(ctx)
    base = engine.config.spike
    config = SpikeConfig(
        window=window if window is not None else base.window,
        threshold=threshold if threshold is not None else base.threshold,
        sigma_floor=base.sigma_floor,
    )
    found = engine.spikes(topic_name, granularity,
                          _parse_date(from_str, "--from"),
                          _parse_date(to_str, "--to"), config)
    click.echo(serialize.to_json(serialize.spikes_payload(found)))


@main.command("stats")
@click.option("--top", default=10, show_default=True,
              help="How many keywords to list by occurrence count.")
@click.pass_context
def stats(ctx: click.Context, top: int) -> None:
    """Corpus and dictionary summary as JSON."""
    engine = _open_engine(ctx)
    corpus_stats, keyword_count, top_keywords = engine.stats_summary(top)
    click.echo(serialize.to_json(
        serialize.stats_payload(corpus_stats, keyword_count, top_keywords)))


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.pass_context
def serve(ctx: click.Context, host: str, port: int) -> None:
    """Serve the HTTP API (and the UI, if built) over the store."""
    import signal

    import uvicorn

    from .service import build_app

    engine = _open_engine(ctx)
    pending = engine.pending_count()
    if pending:
        raise VulnTrackError(
            f"{pending} documents are not indexed; run `index` before serving")

    # uvicorn re-raises a captured SIGTERM with the pre-run handler
    # restored; the default action would kill the process before the
    # lock release below, so map SIGTERM to a normal exit instead.
    def _exit_on_term(signum, frame):
        raise SystemExit(128 + signum)

    previous = signal.signal(signal.SIGTERM, _exit_on_term)
    engine.acquire_lock()
    try:
        uvicorn.run(build_app(engine), host=host, port=port, log_level="info")
    finally:
        engine.release_lock()
        signal.signal(signal.SIGTERM, previous)


def run() -> None:
    """Console entry point with uniform error reporting."""
    try:
        main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(130)
    except VulnTrackError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
