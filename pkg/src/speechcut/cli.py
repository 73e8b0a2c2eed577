"""Batch command-line interface for the shortening pipeline.

Exit codes: 0 success, 1 usage error, 2 runtime error. Machine-readable
outputs are JSON documents in the owning modules' formats and are stable
across runs with the mock gateway.
"""

from __future__ import annotations

import json
import sys

import click

from . import audio as audio_mod
from . import edit_types, metrics, outline as outline_mod
from .gateway import Gateway, GatewayConfig
from .shortener import (
    normalize_segment_words,
    resolve_segments,
    shorten_transcript,
)
from .transcript import CompressionTarget, load_transcript_file

TARGET_CHOICES = ("0", "15", "25", "50", "75")


class TargetParam(click.ParamType):
    name = "target"

    def convert(self, value, param, ctx):
        if str(value) not in TARGET_CHOICES:
            self.fail("target must be one of 0,15,25,50,75", param, ctx)
        return str(value)


TARGET = TargetParam()


class StageFailure(RuntimeError):
    """Pipeline failure carrying the name of the failing stage."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def make_gateway(gateway_name, seed, cache, config):
    cfg = GatewayConfig(
        provider=gateway_name or config.get("gateway", "mock"),
        base_url=config.get("base_url"),
        api_key_env=config.get("api_key_env", "SPEECHCUT_API_KEY"),
        model_id=config.get("model_id", "default"),
        max_parallel_requests=int(config.get("max_parallel_requests", 8)),
        request_timeout=float(config.get("request_timeout", 30.0)),
        seed=seed if seed is not None else int(config.get("seed", 0)),
        temperature=float(config.get("temperature", 1.0)),
        cache_dir=cache or config.get("cache_dir"),
    )
    return Gateway(cfg)


def parse_overrides(pairs: tuple[str, ...]) -> dict[int, float]:
    overrides: dict[int, float] = {}
    for pair in pairs:
        try:
            para, target = pair.split("=", 1)
            if target not in TARGET_CHOICES:
                raise ValueError
            overrides[int(para)] = CompressionTarget.from_percent(int(target)).tau
        except ValueError:
            raise click.UsageError(
                f"--override must look like PARA=TARGET with target in "
                f"{{{','.join(TARGET_CHOICES)}}}, got {pair!r}"
            )
    return overrides


def emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def common_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True), default=None)(fn)
    fn = click.option("--cache", type=click.Path(), default=None)(fn)
    fn = click.option("--seed", type=int, default=None)(fn)
    fn = click.option("--gateway", "gateway_name", type=click.Choice(["remote", "mock"]), default=None)(fn)
    return fn


@click.group()
def cli():
    """Shorten recorded speech via scored transcript edits and audio splicing."""


@cli.command()
@click.option("--transcript", "transcript_path", required=True, type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def ingest(transcript_path, out):
    """Validate a transcript document and emit its normalized form."""
    try:
        transcript = load_transcript_file(transcript_path)
    except Exception as exc:
        raise StageFailure("ingest", exc)
    emit(transcript.to_document(), out)


def run_shorten(transcript_path, target, override, candidates, gateway_name, seed, cache, config_path):
    config = load_config(config_path)
    try:
        transcript = load_transcript_file(transcript_path)
    except Exception as exc:
        raise StageFailure("ingest", exc)
    gw = make_gateway(gateway_name, seed, cache, config)
    tau = CompressionTarget.from_percent(int(target)).tau
    overrides = parse_overrides(override)
    try:
        result = shorten_transcript(
            transcript, tau, overrides=overrides, gateway=gw, n=candidates
        )
    except Exception as exc:
        raise StageFailure("shorten", exc)
    return transcript, gw, result


@cli.command()
@click.option("--transcript", "transcript_path", required=True, type=click.Path(exists=True))
@click.option("--target", required=True, type=TARGET)
@click.option("--override", multiple=True)
@click.option("--candidates", type=int, default=25, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@common_options
def shorten(transcript_path, target, override, candidates, out, gateway_name, seed, cache, config_path):
    """Shorten a transcript and emit the result document."""
    _, _, result = run_shorten(
        transcript_path, target, override, candidates, gateway_name, seed, cache, config_path
    )
    emit(result.to_document(), out)


@cli.command()
@click.option("--transcript", "transcript_path", required=True, type=click.Path(exists=True))
@click.option("--target", required=True, type=TARGET)
@click.option("--override", multiple=True)
@click.option("--candidates", type=int, default=25, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@common_options
def score(transcript_path, target, override, candidates, out, gateway_name, seed, cache, config_path):
    """Emit the per-candidate score table for every segment."""
    _, _, result = run_shorten(
        transcript_path, target, override, candidates, gateway_name, seed, cache, config_path
    )
    report = {
        "segments": [
            {
                "segment_id": s.segment.id,
                "tau": s.tau,
                "winner_index": s.winner.candidate_index,
                "candidates": [c.score.to_document() for c in s.candidates],
            }
            for s in result.per_segment
        ]
    }
    header = f"{'seg':>4} {'cand':>5} {'e_comp':>8} {'e_edits':>8} {'e_len':>8} {'e_cov':>8} {'total':>8} {'ops':>4}"
    click.echo(header, err=True)
    for seg in result.per_segment:
        for c in seg.candidates:
            s = c.score
            click.echo(
                f"{seg.segment.id:>4} {s.candidate_index:>5} {s.e_comp:>8.3f} "
                f"{s.e_edits:>8.3f} {s.e_len:>8.3f} {s.e_cov:>8.3f} {s.total:>8.3f} "
                f"{s.num_ops:>4}",
                err=True,
            )
    emit(report, out)


@cli.command()
@click.option("--transcript", "transcript_path", required=True, type=click.Path(exists=True))
@click.option("--target", required=True, type=TARGET)
@click.option("--override", multiple=True)
@click.option("--candidates", type=int, default=25, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@common_options
def classify(transcript_path, target, override, candidates, out, gateway_name, seed, cache, config_path):
    """Shorten, then label every edit op with its edit type."""
    transcript, gw, result = run_shorten(
        transcript_path, target, override, candidates, gateway_name, seed, cache, config_path
    )
    words = [w.text for w in transcript.words]
    try:
        labeled = edit_types.classify_script(result.merged_script, words, gateway=gw)
    except Exception as exc:
        raise StageFailure("classify", exc)
    emit(
        {
            "script": labeled.to_document(),
            "type_counts": edit_types.type_counts(labeled),
        },
        out,
    )


@cli.command("outline")
@click.option("--transcript", "transcript_path", required=True, type=click.Path(exists=True))
@click.option("--purpose", default="", show_default=True)
@click.option("--out", type=click.Path(), default=None)
@common_options
def outline_cmd(transcript_path, purpose, out, gateway_name, seed, cache, config_path):
    """Build the outline (information bits and importances)."""
    config = load_config(config_path)
    try:
        transcript = load_transcript_file(transcript_path)
    except Exception as exc:
        raise StageFailure("ingest", exc)
    gw = make_gateway(gateway_name, seed, cache, config)
    try:
        segments, _ = resolve_segments(transcript, gw)
        built = outline_mod.build_outline(transcript, segments, gw, purpose)
        tokens = normalize_segment_words([w.text for w in transcript.words])
        retentions = outline_mod.outline_retentions(built, tokens)
    except Exception as exc:
        raise StageFailure("outline", exc)
    emit(built.to_document(retentions), out)


@cli.command("plan")
@click.option("--transcript", "transcript_path", required=True, type=click.Path(exists=True))
@click.option("--target", required=True, type=TARGET)
@click.option("--override", multiple=True)
@click.option("--candidates", type=int, default=25, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@common_options
def plan_cmd(transcript_path, target, override, candidates, out, gateway_name, seed, cache, config_path):
    """Shorten and compile the audio splice plan."""
    transcript, _, result = run_shorten(
        transcript_path, target, override, candidates, gateway_name, seed, cache, config_path
    )
    try:
        plan = audio_mod.build_plan(result.merged_script, transcript)
    except Exception as exc:
        raise StageFailure("plan", exc)
    emit(plan.to_document(), out)


@cli.command("render")
@click.option("--plan", "plan_path", required=True, type=click.Path(exists=True))
@click.option("--audio", "audio_path", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def render_cmd(plan_path, audio_path, out):
    """Render a splice plan against a WAV file (silence-stub synthesis)."""
    try:
        with open(plan_path, "r", encoding="utf-8") as fh:
            plan = audio_mod.AudioEditPlan.from_document(json.load(fh))
        source = audio_mod.load_wav(audio_path)
    except Exception as exc:
        raise StageFailure("load", exc)
    try:
        result = audio_mod.render(plan, source)
    except Exception as exc:
        raise StageFailure("render", exc)
    audio_mod.save_wav(result.clip, out)
    for warning in result.warnings:
        click.echo(f"warning: {warning}", err=True)


@cli.command("eval")
@click.option("--transcript", "transcript_paths", multiple=True, required=True, type=click.Path(exists=True))
@click.option("--result", "result_paths", multiple=True, required=True, type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def eval_cmd(transcript_paths, result_paths, out):
    """Metric report for shorten results, per file and aggregated per target."""
    if len(transcript_paths) != len(result_paths):
        raise click.UsageError("--transcript and --result must be paired")
    per_file = []
    by_target: dict[float, list] = {}
    for t_path, r_path in zip(transcript_paths, result_paths):
        try:
            transcript = load_transcript_file(t_path)
            with open(r_path, "r", encoding="utf-8") as fh:
                result_doc = json.load(fh)
        except Exception as exc:
            raise StageFailure("load", exc)
        try:
            from .alignment import EditScript, apply_script

            script = EditScript.from_document(result_doc["merged_script"])
            taus = result_doc["targets"]
            tau = taus[0] if taus else 0.0
            original_tokens = normalize_segment_words([w.text for w in transcript.words])
            # surface forms keep sentence punctuation, which coverage needs
            shortened_surface = apply_script(script, [w.text for w in transcript.words])
            report = metrics.evaluate_pair(
                original_tokens,
                script,
                transcript.text(),
                " ".join(shortened_surface),
                tau,
            )
        except Exception as exc:
            raise StageFailure("eval", exc)
        per_file.append({"transcript": t_path, "tau": tau, "metrics": report.to_document()})
        by_target.setdefault(tau, []).append(report)

    aggregates = {}
    for tau, reports in sorted(by_target.items()):
        aggregates[str(tau)] = {
            "compression_deviation": metrics.aggregate(
                [r.compression_deviation for r in reports]
            ),
            "percent_synthesized": metrics.aggregate(
                [r.percent_synthesized for r in reports]
            ),
            "coverage": metrics.aggregate([r.coverage for r in reports]),
        }
        row = aggregates[str(tau)]
        click.echo(
            f"target {tau}: deviation mean {row['compression_deviation']['mean']:.2f}pp  "
            f"synthesized mean {row['percent_synthesized']['mean']:.2f}%  "
            f"coverage mean {row['coverage']['mean']:.3f}",
            err=True,
        )
    emit({"files": per_file, "aggregate": aggregates}, out)


@cli.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--store", "store_dir", type=click.Path(), default="./projects")
@common_options
def serve(port, host, store_dir, gateway_name, seed, cache, config_path):
    """Run the HTTP service backing the web UI."""
    import uvicorn

    from .service import create_app

    config = load_config(config_path)
    gw = make_gateway(gateway_name, seed, cache, config)
    app = create_app(store_dir=store_dir, gateway=gw)
    uvicorn.run(app, host=host, port=port)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except StageFailure as exc:
        click.echo(f"error in stage {exc}", err=True)
        return 2
    except click.exceptions.Abort:
        return 1
    except Exception as exc:  # pipeline failures not wrapped in StageFailure
        click.echo(f"error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
