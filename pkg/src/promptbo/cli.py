"""Command-line front end: run optimizations, compare methods, plot traces.

Exit codes: 0 success, 1 configuration error, 2 objective/transport failure
mid-run (partial trace left on disk).
"""

from __future__ import annotations

import csv
import json
import os
import statistics
import sys
import time
from pathlib import Path

import click

from . import baselines, optimizer
from .acquisition import AcquisitionConfig
from .objective import EvaluationError, RemoteObjective, make_lookup_objective
from .optimizer import RunAborted, RunConfig, TRACE_HEADER
from .presets import TASK_PRESETS, get_preset
from .space import PromptSpace
from .vocab import VocabularyError, load_vocabulary, render_prompt

ENV_SCORER_URL = "PROMPTBO_SCORER_URL"

DATA_HEADER = ["series", "iteration", "elapsed_seconds", "best_seen"]


class ConfigError(ValueError):
    pass


def _load_config(path) -> dict:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    try:
        cfg = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


KNOWN_KEYS = {
    "task_preset", "vocab_path", "vocab_size", "prompt_length", "objective",
    "n_init", "budget", "top_b", "beta", "seed", "out_dir", "timer",
    "n_restarts", "n_raw_probes", "max_ascent_steps", "skip_duplicates",
}


def _validate_keys(cfg: dict):
    bad = sorted(set(cfg) - KNOWN_KEYS)
    if bad:
        raise ConfigError(f"unknown config keys: {', '.join(bad)}")


def _build_space_and_vocab(cfg: dict):
    vocab = None
    if "vocab_path" in cfg:
        vocab = load_vocabulary(cfg["vocab_path"])
    if "task_preset" in cfg:
        try:
            preset = get_preset(cfg["task_preset"])
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
        if vocab is not None and vocab.size != preset.vocab_size:
            raise ConfigError(
                f"vocab file has {vocab.size} entries but preset "
                f"{preset.name!r} expects {preset.vocab_size}"
            )
        return PromptSpace(preset.prompt_length, preset.vocab_size), vocab
    if "prompt_length" not in cfg:
        raise ConfigError("config needs either task_preset or prompt_length")
    length = cfg["prompt_length"]
    if vocab is not None:
        return PromptSpace(length, vocab.size), vocab
    if "vocab_size" not in cfg:
        raise ConfigError("config needs one of task_preset, vocab_path, vocab_size")
    return PromptSpace(length, cfg["vocab_size"]), None


def _build_objective(cfg: dict, space: PromptSpace, vocab):
    spec = cfg.get("objective")
    if not isinstance(spec, dict) or len(spec) != 1 or next(iter(spec)) not in ("builtin", "remote"):
        raise ConfigError('config "objective" must be {"builtin": {...}} or {"remote": {...}}')
    kind, body = next(iter(spec.items()))
    if kind == "builtin":
        if body.get("kind", "lookup") != "lookup":
            raise ConfigError(f"unknown builtin objective kind: {body.get('kind')!r}")
        return make_lookup_objective(space, int(body.get("seed", 0)))
    url = os.environ.get(ENV_SCORER_URL) or body.get("url")
    if not url:
        raise ConfigError('remote objective needs "url" (or PROMPTBO_SCORER_URL)')
    return RemoteObjective(
        url, space, vocab=vocab,
        split=body.get("split", "train"),
        timeout=float(body.get("timeout_s", 30.0)),
        retries=int(body.get("retries", 2)),
    )


def _build_run_config(cfg: dict, seed=None, beta=None) -> RunConfig:
    acq = AcquisitionConfig(
        beta=float(beta if beta is not None else cfg.get("beta", 2.0)),
        n_restarts=int(cfg.get("n_restarts", 8)),
        n_raw_probes=int(cfg.get("n_raw_probes", 512)),
        max_ascent_steps=int(cfg.get("max_ascent_steps", 50)),
    )
    try:
        return RunConfig(
            n_init=int(cfg.get("n_init", 10)),
            budget=int(cfg.get("budget", 90)),
            top_b=int(cfg.get("top_b", 5)),
            beta=acq.beta,
            seed=int(seed if seed is not None else cfg.get("seed", 0)),
            acquisition=acq,
            skip_duplicates=bool(cfg.get("skip_duplicates", False)),
            timer=cfg.get("timer", "wall"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


@click.group()
def main():
    """Bayesian optimization of discrete prompts."""


@main.command("optimize")
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the config seed.")
@click.option("--beta", type=float, default=None, help="Override the config beta.")
def cmd_optimize(config_path, seed, beta):
    """Run one BO optimization and write trace.csv + result.json."""
    try:
        cfg = _load_config(config_path)
        _validate_keys(cfg)
        space, vocab = _build_space_and_vocab(cfg)
        objective = _build_objective(cfg, space, vocab)
        run_config = _build_run_config(cfg, seed=seed, beta=beta)
    except (ConfigError, VocabularyError, ValueError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(1)

    out_dir = Path(cfg.get("out_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)
    trace_path = out_dir / "trace.csv"
    try:
        result = optimizer.run(objective, space, run_config, trace_path=trace_path)
    except RunAborted as exc:
        click.echo(f"run aborted: {exc} (partial trace at {trace_path})", err=True)
        sys.exit(2)

    echo = dict(cfg)
    echo["seed"] = run_config.seed
    echo["beta"] = run_config.beta
    top = [
        {
            "prompt_ids": [int(i) for i in prompt],
            "text": render_prompt(vocab, prompt) if vocab is not None else None,
            "score": score,
        }
        for prompt, score in result.top_prompts(run_config.top_b)
    ]
    (out_dir / "result.json").write_text(json.dumps({
        "config": echo,
        "seed": run_config.seed,
        "final_best": result.final_best,
        "n_observations": len(result.observations),
        "top_prompts": top,
    }, indent=2) + "\n", encoding="utf-8")
    click.echo(f"done: best score {result.final_best:.6f}, trace at {trace_path}")


_METHODS = {"bo": optimizer.run, "random": baselines.random_search}


@main.command("compare")
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--methods", default="bo,random", show_default=True)
@click.option("--seeds", default="0,1,2", show_default=True)
def cmd_compare(config_path, methods, seeds):
    """Run several methods on matched seeds and summarize final best-seen."""
    try:
        cfg = _load_config(config_path)
        _validate_keys(cfg)
        method_names = [m.strip() for m in methods.split(",") if m.strip()]
        if len(method_names) < 2:
            raise ConfigError("compare needs at least 2 methods")
        unknown = [m for m in method_names if m not in _METHODS]
        if unknown:
            raise ConfigError(f"unknown methods: {unknown}; known: {sorted(_METHODS)}")
        seed_list = [int(s) for s in seeds.split(",") if s.strip()]
        space, vocab = _build_space_and_vocab(cfg)
    except (ConfigError, VocabularyError, ValueError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(1)

    out_dir = Path(cfg.get("out_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)
    combined_path = out_dir / "comparison.csv"
    summary = []
    with open(combined_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "seed", "iteration", "elapsed_seconds", "best_seen"])
        for name in method_names:
            finals, t0 = [], time.perf_counter()
            for seed in seed_list:
                try:
                    objective = _build_objective(cfg, space, vocab)
                    run_config = _build_run_config(cfg, seed=seed)
                    result = _METHODS[name](objective, space, run_config)
                except RunAborted as exc:
                    click.echo(f"run aborted ({name}, seed {seed}): {exc}", err=True)
                    sys.exit(2)
                for obs, best in zip(result.observations, result.best_seen):
                    writer.writerow([name, seed, obs.iteration,
                                     repr(obs.elapsed_seconds), repr(best)])
                finals.append(result.final_best)
            summary.append({
                "method": name,
                "runs": len(seed_list),
                "mean_final_best": statistics.mean(finals),
                "std_final_best": statistics.stdev(finals) if len(finals) > 1 else 0.0,
                "total_seconds": time.perf_counter() - t0,
            })

    summary_path = out_dir / "summary.csv"
    with open(summary_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(summary[0]))
        writer.writeheader()
        writer.writerows(summary)
    for row in summary:
        click.echo(
            f"{row['method']:>8}: mean final best {row['mean_final_best']:.6f} "
            f"(std {row['std_final_best']:.6f}) over {row['runs']} runs, "
            f"{row['total_seconds']:.2f}s"
        )
    click.echo(f"combined CSV: {combined_path}\nsummary: {summary_path}")


def _read_series(path):
    """Best-seen-vs-time series from a trace CSV or a tidy data CSV."""
    series = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path}: empty file") from None
        name = Path(path).stem
        for lineno, row in enumerate(reader, start=2):
            try:
                if header == TRACE_HEADER:
                    int(row[0]), float(row[3])  # validate the full row
                    series.setdefault(name, []).append((float(row[1]), float(row[4])))
                elif header == DATA_HEADER:
                    series.setdefault(row[0], []).append((float(row[2]), float(row[3])))
                else:
                    raise ConfigError(f"{path}: unrecognized header {header}")
            except (IndexError, ValueError) as exc:
                raise ConfigError(f"{path}: malformed row at line {lineno}: {exc}") from exc
    if not series:
        raise ConfigError(f"{path}: no data rows")
    return series


@main.command("plot")
@click.argument("traces", nargs=-1, required=True, type=click.Path())
@click.option("--data-only", is_flag=True, help="Emit a tidy CSV instead of an SVG.")
@click.option("-o", "--output", default=None, type=click.Path())
def cmd_plot(traces, data_only, output):
    """Plot best-seen score versus elapsed seconds for one or more traces."""
    try:
        all_series = {}
        for path in traces:
            for name, pts in _read_series(path).items():
                key = name if name not in all_series else f"{name}:{path}"
                all_series[key] = pts
    except ConfigError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(1)

    if data_only:
        out = Path(output or "best_seen.csv")
        with open(out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(DATA_HEADER)
            for name, pts in all_series.items():
                for i, (elapsed, best) in enumerate(pts):
                    writer.writerow([name, i, repr(elapsed), repr(best)])
        click.echo(f"wrote {out}")
        return

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        click.echo("matplotlib not installed; use --data-only", err=True)
        sys.exit(1)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, pts in all_series.items():
        xs, ys = zip(*pts)
        ax.step(xs, ys, where="post", label=name)
    ax.set_xlabel("elapsed seconds")
    ax.set_ylabel("best-seen score")
    ax.legend()
    fig.tight_layout()
    out = Path(output or "best_seen.svg")
    fig.savefig(out)
    click.echo(f"wrote {out}")


@main.command("presets")
def cmd_presets():
    """List the shipped task presets."""
    for p in TASK_PRESETS.values():
        click.echo(f"{p.name:>6}  |V|={p.vocab_size:<7} L={p.prompt_length:<3} metric={p.metric}")


if __name__ == "__main__":
    main()
