"""Command-line entry points: data prep, training, evaluation, serving.

Offline commands operate on JSONL corpora and id-list files (one id per
line); `serve` hosts the HTTP API and `client` talks to a running service.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from modq.corpus.records import Status
from modq.corpus.splits import (
    DOWNSAMPLE_PRESETS,
    SplitSpec,
    chronological_split,
    downsample,
    train_val_test_split,
)
from modq.corpus.store import ingest_comments, write_jsonl
from modq.corpus.synth import SynthConfig, synth_generate
from modq.errors import ModqError
from modq.explain.decompose import decompose_prediction, top_contributions
from modq.explain.error_analysis import error_analysis, render_error_analysis
from modq.features.embeddings import load_embeddings
from modq.features.matrix import FeatureConfig, Featurizer, assemble_matrix
from modq.features.text import DEFAULT_VOCAB_SIZE, build_vocabulary, load_stopwords
from modq.forest.ensemble import PRESETS, Hyperparams, train_forest
from modq.forest.model_io import load_forest, model_version, save_forest
from modq.ranking.evaluate import evaluate_articles, render_reports
from modq.ranking.ranker import BaselineRanker, ForestRanker, RandomRanker
from modq.service.client import ModqClient, ServiceError


def _read_ids(path: str | Path) -> list[str]:
    return [
        line.strip()
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]


def _write_ids(path: Path, ids) -> None:
    path.write_text("".join(f"{i}\n" for i in ids), encoding="utf-8")


def _load_featurizer(store, forest, embeddings_path):
    embeddings = None
    if forest.schema.embedding_dim is not None:
        if not embeddings_path:
            raise click.UsageError("model expects embeddings; pass --embeddings")
        embeddings = load_embeddings(embeddings_path)
    return Featurizer(store, forest.schema, embeddings)


@click.group()
def main() -> None:
    """Comment recommendation toolkit."""


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="write canonical JSONL")
def ingest(path: str, out: str | None) -> None:
    """Validate a JSONL corpus and report ingestion diagnostics."""
    store = ingest_comments(path)
    m = store.manifest
    click.echo(f"source: {m.source}")
    click.echo(f"lines: {m.total_lines}  valid: {m.valid_records}  "
               f"rejected: {m.rejected_records}  unresolved parents: {m.unresolved_parents}")
    click.echo(f"articles: {len(store.articles)}  comments: {len(store)}")
    click.echo(f"content digest: {store.content_digest()}")
    for diag in m.diagnostics[:10]:
        click.echo(f"  ! {diag}")
    if len(m.diagnostics) > 10:
        click.echo(f"  ... {len(m.diagnostics) - 10} more")
    if out:
        write_jsonl(store, out)
        click.echo(f"canonical corpus written to {out}")


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--chrono", default=0.5, show_default=True, help="article share for the classification half")
@click.option("--tvt", default="0.8,0.1,0.1", show_default=True, help="train,val,test fractions")
@click.option("--downsample", "downsample_ratio", default=0.05, show_default=True,
              help="featured share of the downsampled training set")
@click.option("--seed", default=0, show_default=True)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
def split(corpus: str, chrono: float, tvt: str, downsample_ratio: float,
          seed: int, out_dir: str) -> None:
    """Chronological article split, stratified TVT, and downsampling."""
    fractions = tuple(float(x) for x in tvt.split(","))
    if len(fractions) != 3:
        raise click.UsageError("--tvt needs three comma-separated fractions")
    spec = SplitSpec(
        chrono_fraction=chrono,
        train_fraction=fractions[0],
        val_fraction=fractions[1],
        test_fraction=fractions[2],
        downsample_ratio=downsample_ratio,
        seed=seed,
    )
    store = ingest_comments(corpus)
    class_articles, rank_articles = chronological_split(store, spec)
    train_ids, val_ids, test_ids = train_val_test_split(store, class_articles, spec)
    train_ds = downsample(store, train_ids, downsample_ratio, seed)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_ids(out / "articles_class.txt", class_articles)
    _write_ids(out / "articles_rank.txt", rank_articles)
    _write_ids(out / "train.txt", train_ids)
    _write_ids(out / "val.txt", val_ids)
    _write_ids(out / "test.txt", test_ids)
    _write_ids(out / "train_downsampled.txt", train_ds)

    def n_featured(ids):
        return sum(1 for c in ids if store.comment(c).status is Status.FEATURED)

    summary = {
        "seed": seed,
        "articles": {"class": len(class_articles), "rank": len(rank_articles)},
        "comments": {
            "train": [len(train_ids), n_featured(train_ids)],
            "val": [len(val_ids), n_featured(val_ids)],
            "test": [len(test_ids), n_featured(test_ids)],
            "train_downsampled": [len(train_ds), n_featured(train_ds)],
        },
        "downsample_ratio": downsample_ratio,
        "downsample_presets": list(DOWNSAMPLE_PRESETS),
    }
    (out / "split_manifest.json").write_text(
        json.dumps(summary, indent=2) + "\n", encoding="utf-8"
    )
    click.echo(json.dumps(summary, indent=2))


@main.command()
@click.option("--articles", "n_articles", default=200, show_default=True)
@click.option("--users", default=300, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--signal-quality", default=1.0, show_default=True)
@click.option("--signal-text", default=1.0, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def synth(n_articles: int, users: int, seed: int, signal_quality: float,
          signal_text: float, out: str) -> None:
    """Generate a synthetic corpus with a planted quality signal."""
    config = SynthConfig(
        n_articles=n_articles,
        n_users=users,
        signal_quality=signal_quality,
        signal_text=signal_text,
    )
    store = synth_generate(config, seed)
    write_jsonl(store, out)
    featured = sum(1 for r in store.comments if r.status is Status.FEATURED)
    click.echo(f"wrote {len(store)} comments / {len(store.articles)} articles "
               f"({featured} featured) to {out}")
    click.echo(f"content digest: {store.content_digest()}")


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--train-ids", type=click.Path(exists=True, dir_okay=False),
              help="comment id list; defaults to every comment")
@click.option("--features", "regime", default="nontextual", show_default=True,
              type=click.Choice(["nontextual", "bow", "emb"]))
@click.option("--vocab-size", default=DEFAULT_VOCAB_SIZE, show_default=True)
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None,
              help="hyperparameter preset; overridable by the options below")
@click.option("--n-estimators", type=int, default=None)
@click.option("--max-depth", type=int, default=None)
@click.option("--min-samples-split", type=int, default=None)
@click.option("--seed", default=0, show_default=True)
@click.option("--n-jobs", default=1, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def train(corpus: str, train_ids: str | None, regime: str, vocab_size: int,
          embeddings: str | None, preset: str | None, n_estimators: int | None,
          max_depth: int | None, min_samples_split: int | None, seed: int,
          n_jobs: int, out: str) -> None:
    """Featurize training comments and fit a forest."""
    store = ingest_comments(corpus)
    ids = _read_ids(train_ids) if train_ids else [r.comment_id for r in store.comments]

    vocab = None
    table = None
    if regime == "bow":
        stop = load_stopwords()
        vocab = build_vocabulary(
            [store.comment(c).text for c in ids], vocab_size, stop
        )
    elif regime == "emb":
        if not embeddings:
            raise click.UsageError("--features emb requires --embeddings")
        table = load_embeddings(embeddings)

    config = FeatureConfig(use_bow=regime == "bow", use_embeddings=regime == "emb")
    matrix = assemble_matrix(store, ids, config, vocab=vocab, embeddings=table)

    base = PRESETS[preset] if preset else Hyperparams()
    hp = Hyperparams(
        n_estimators=n_estimators if n_estimators is not None else base.n_estimators,
        max_depth=max_depth if max_depth is not None else base.max_depth,
        min_samples_split=(
            min_samples_split if min_samples_split is not None
            else base.min_samples_split
        ),
        max_features=base.max_features,
        bootstrap=base.bootstrap,
        seed=seed,
    )
    click.echo(f"training on {matrix.X.shape[0]} rows x {matrix.X.shape[1]} features "
               f"({int(matrix.y.sum())} featured), {hp.n_estimators} trees")
    forest = train_forest(matrix, hp, n_jobs=n_jobs)
    digest = save_forest(forest, out)
    click.echo(f"model written to {out}")
    click.echo(f"model digest: {digest}")
    click.echo(f"model version: {digest[:12]}")


@main.command("eval")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--articles", "articles_file", type=click.Path(exists=True, dir_okay=False),
              help="article id list; defaults to every article")
@click.option("--k", "ks_text", default="3,5,10", show_default=True)
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False))
@click.option("--random-seed", default=0, show_default=True)
@click.option("--json-out", type=click.Path(dir_okay=False))
def eval_cmd(model_path: str, corpus: str, articles_file: str | None, ks_text: str,
             embeddings: str | None, random_seed: int, json_out: str | None) -> None:
    """Compare forest, informed baseline, and random ranking."""
    ks = tuple(int(x) for x in ks_text.split(","))
    store = ingest_comments(corpus)
    forest = load_forest(model_path)
    featurizer = _load_featurizer(store, forest, embeddings)
    article_ids = (
        _read_ids(articles_file) if articles_file else list(store.article_ids())
    )
    rankers = [
        ForestRanker(forest, featurizer),
        BaselineRanker(store),
        RandomRanker(seed=random_seed),
    ]
    reports = [evaluate_articles(store, article_ids, r, ks=ks) for r in rankers]
    click.echo(render_reports(reports))
    if json_out:
        payload = {
            "model_version": model_version(model_path),
            "reports": [r.to_json_dict() for r in reports],
        }
        Path(json_out).write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )
        click.echo(f"report written to {json_out}")


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--comment", "comment_id", required=True)
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False))
@click.option("--top", default=10, show_default=True)
def explain(model_path: str, corpus: str, comment_id: str,
            embeddings: str | None, top: int) -> None:
    """Decompose one comment's prediction into feature contributions."""
    store = ingest_comments(corpus)
    forest = load_forest(model_path)
    featurizer = _load_featurizer(store, forest, embeddings)
    x = featurizer.vector(comment_id)
    breakdown = decompose_prediction(forest, x, comment_id=comment_id)
    click.echo(f"comment: {comment_id}")
    click.echo(f"bias (mean root frequency): {breakdown.bias:.6f}")
    click.echo(f"predicted p(featured):      {breakdown.predicted:.6f}")
    click.echo("top contributions:")
    for name, value in top_contributions(forest.schema.names, breakdown.contributions, top):
        if value == 0.0:
            continue
        click.echo(f"  {value:+.6f}  {name}")


@main.command("error-analysis")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--articles", "articles_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", default=5, show_default=True)
@click.option("--threshold", default=0.5, show_default=True)
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False))
@click.option("--json-out", type=click.Path(dir_okay=False))
def error_analysis_cmd(model_path: str, corpus: str, articles_file: str | None,
                       k: int, threshold: float, embeddings: str | None,
                       json_out: str | None) -> None:
    """Mean feature values and contributions across TP/FP/TN/FN."""
    store = ingest_comments(corpus)
    forest = load_forest(model_path)
    featurizer = _load_featurizer(store, forest, embeddings)
    article_ids = (
        _read_ids(articles_file) if articles_file else list(store.article_ids())
    )
    analysis = error_analysis(
        forest, featurizer, store, article_ids, k=k, threshold=threshold
    )
    click.echo(render_error_analysis(analysis))
    if json_out:
        Path(json_out).write_text(
            json.dumps(analysis.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )
        click.echo(f"report written to {json_out}")


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--picks", default="picks.jsonl", show_default=True,
              type=click.Path(dir_okay=False))
@click.option("--addr", default="127.0.0.1:8000", show_default=True)
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False))
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False, exists=True),
              help="serve a static UI bundle under /ui")
def serve(model_path: str, corpus: str, picks: str, addr: str,
          embeddings: str | None, ui_dir: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from modq.service.app import create_app
    from modq.service.state import build_state

    host, _, port_text = addr.partition(":")
    if not port_text.isdigit():
        raise click.UsageError("--addr must be host:port")
    state = build_state(corpus, model_path, picks, embeddings)
    app = create_app(state, ui_dir=ui_dir)
    click.echo(f"model version {state.bundle.version}; serving on http://{addr}")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port_text), log_level="info")


@main.group()
@click.option("--base-url", default="http://127.0.0.1:8000", show_default=True)
@click.option("--rater", default=None, help="rater id for pick submission")
@click.pass_context
def client(ctx: click.Context, base_url: str, rater: str | None) -> None:
    """Talk to a running service."""
    ctx.obj = ModqClient(base_url=base_url, rater_id=rater)


def _client_echo(ctx: click.Context, call) -> None:
    try:
        click.echo(json.dumps(call(ctx.obj), indent=2))
    except ServiceError as exc:
        raise click.ClickException(str(exc)) from exc
    except Exception as exc:  # connection problems and friends
        raise click.ClickException(f"request failed: {exc}") from exc


@client.command("articles")
@click.pass_context
def client_articles(ctx: click.Context) -> None:
    _client_echo(ctx, lambda c: c.articles())


@client.command("recommend")
@click.argument("article_id")
@click.option("--k", default=5, show_default=True)
@click.pass_context
def client_recommend(ctx: click.Context, article_id: str, k: int) -> None:
    _client_echo(ctx, lambda c: c.recommendations(article_id, k=k))


@client.command("survey")
@click.argument("article_id")
@click.option("--seed", default=0, show_default=True)
@click.pass_context
def client_survey(ctx: click.Context, article_id: str, seed: int) -> None:
    _client_echo(ctx, lambda c: c.survey(article_id, seed=seed))


@client.command("pick")
@click.argument("article_id")
@click.argument("comment_id")
@click.option("--yes/--no", "decision", required=True)
@click.pass_context
def client_pick(ctx: click.Context, article_id: str, comment_id: str,
                decision: bool) -> None:
    _client_echo(ctx, lambda c: c.submit_pick(article_id, comment_id, decision))


@client.command("report")
@click.option("--article", "article_ids", multiple=True)
@click.pass_context
def client_report(ctx: click.Context, article_ids: tuple[str, ...]) -> None:
    _client_echo(ctx, lambda c: c.survey_report(article_ids or None))


def run() -> None:
    """Entry point that renders domain errors without a traceback."""
    try:
        main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except ModqError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
