"""Command-line front end wiring the toolkit into batch workflows.

Exit codes: 0 success, 1 runtime failure (bad file, degenerate data),
2 usage or validation error. Every subcommand is deterministic given its
flags and seed, and no subcommand mutates its input files.

Batch subcommands accept explicit paths, a directory (scanned for .uvdt
and .csv files, sorted), or a ``--manifest`` file listing one path per
line; outputs are newline-delimited JSON in manifest order.
"""

from __future__ import annotations

import csv as _csv
import json
import sys
from pathlib import Path

import click

from .chainenv import ChainEnvConfig, LearnerConfig, run_chain_experiment, scripted_demo
from .decompose import DecomposerConfig, decompose
from .errors import UvdError
from .labeling import random_subgoals, relabel, uniform_labels
from .relay import RelayConfig, relay_init, relay_step
from .rewards import RewardWeights, final_goal_reward_trace, shaped_reward_trace
from .smoothing import SmootherConfig
from .synth import SynthConfig, generate_synthetic, run_baseline_comparison
from .trajectory import load_trajectory, save_trajectory

_TRAJ_SUFFIXES = {".uvdt": "binary", ".csv": "csv"}


def _infer_format(path: Path, override: str | None) -> str:
    if override:
        return override
    return _TRAJ_SUFFIXES.get(path.suffix.lower(), "binary")


def _collect_inputs(inputs: tuple[str, ...], manifest: str | None) -> list[Path]:
    paths: list[Path] = []
    if manifest:
        for line in Path(manifest).read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                paths.append(Path(line))
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(
                sorted(q for q in p.iterdir() if q.suffix.lower() in _TRAJ_SUFFIXES)
            )
        else:
            paths.append(p)
    if not paths:
        raise click.UsageError("no input trajectories given")
    return paths


def _open_out(out: str | None):
    if out is None or out == "-":
        return sys.stdout, False
    return open(out, "w"), True


def _emit(records, out: str | None) -> None:
    stream, owned = _open_out(out)
    try:
        for record in records:
            stream.write(json.dumps(record) + "\n")
    finally:
        if owned:
            stream.close()


def _run_batch(paths, fmt, per_file, out) -> None:
    """Apply per_file to every input; report per-file failures, exit 1 if any."""
    records, failures = [], []
    for path in paths:
        try:
            traj = load_trajectory(path, _infer_format(path, fmt))
            records.append(per_file(path, traj))
        except (UvdError, OSError, ValueError) as exc:
            failures.append(f"{path}: {exc}")
    _emit(records, out)
    for failure in failures:
        click.echo(f"error: {failure}", err=True)
    if failures:
        raise SystemExit(1)


def _decomposer_config(min_interval: int, bandwidth: float) -> DecomposerConfig:
    try:
        return DecomposerConfig(
            min_interval=min_interval, smoother=SmootherConfig(bandwidth=bandwidth)
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


_in_args = click.argument("inputs", nargs=-1, type=click.Path())
_manifest_opt = click.option(
    "--manifest", type=click.Path(exists=True), help="File listing input paths, one per line."
)
_format_opt = click.option(
    "--format", "fmt", type=click.Choice(["binary", "csv"]), default=None,
    help="Input format; default inferred from extension (.uvdt binary, .csv csv).",
)
_out_opt = click.option("--out", default=None, help="Output file (default stdout).")
_min_interval_opt = click.option(
    "--min-interval", default=20, show_default=True,
    help="Minimum frame gap between consecutive subgoals.",
)
_bandwidth_opt = click.option(
    "--bandwidth", default=0.08, show_default=True,
    help="Gaussian kernel-regression bandwidth on the time axis normalized to [0,1].",
)


@click.group()
def main() -> None:
    """Subgoal discovery and goal-conditioned tooling for embedding trajectories."""


@main.command("decompose")
@_in_args
@_manifest_opt
@_format_opt
@_out_opt
@_min_interval_opt
@_bandwidth_opt
def cmd_decompose(inputs, manifest, fmt, out, min_interval, bandwidth) -> None:
    """Discover subgoals in each trajectory; one JSON object per line."""
    config = _decomposer_config(min_interval, bandwidth)
    paths = _collect_inputs(inputs, manifest)

    def per_file(path, traj):
        d = decompose(traj, config)
        return {
            "id": str(path),
            "T": traj.T,
            "subgoals": list(d.subgoal_indices),
            "budgets": list(d.budgets),
            "config": {"min_interval": min_interval, "bandwidth": bandwidth},
        }

    _run_batch(paths, fmt, per_file, out)


@main.command("relabel")
@_in_args
@_manifest_opt
@_format_opt
@_out_opt
@_min_interval_opt
@_bandwidth_opt
@click.option(
    "--mode", type=click.Choice(["uvd", "uniform", "random"]), default="uvd",
    show_default=True, help="Labeling scheme: decomposed subgoals or a heuristic baseline.",
)
@click.option("--window", default=None, type=int,
              help="Forward window size (required for --mode uniform).")
@click.option("--seed", default=0, show_default=True,
              help="Generator seed for the heuristic baselines.")
def cmd_relabel(inputs, manifest, fmt, out, min_interval, bandwidth, mode, window, seed) -> None:
    """Assign a goal frame to every timestep of each trajectory."""
    if mode == "uniform" and window is None:
        raise click.UsageError("--mode uniform requires --window")
    config = _decomposer_config(min_interval, bandwidth)

    def per_file(path, traj):
        if mode == "uvd":
            labels = relabel(decompose(traj, config), traj.T)
        elif mode == "uniform":
            labels = uniform_labels(traj.T, window, seed)
        else:
            subgoals = random_subgoals(traj.T, seed)
            labels = [min(g for g in subgoals if g >= t) for t in range(traj.T)]
        return {"id": str(path), "mode": mode, "labels": labels}

    _run_batch(_collect_inputs(inputs, manifest), fmt, per_file, out)


@main.command("reward")
@_in_args
@_manifest_opt
@_format_opt
@_out_opt
@_min_interval_opt
@_bandwidth_opt
@click.option("--mode", type=click.Choice(["uvd", "final-goal"]), default="uvd",
              show_default=True, help="Shaped subgoal reward or the final-frame baseline.")
@click.option("--alpha", default=5.0, show_default=True, help="Progress weight and clip bound.")
@click.option("--beta", default=3.0, show_default=True, help="Subgoal-transition bonus.")
@click.option("--gamma", default=6.0, show_default=True, help="Terminal bonus.")
@click.option("--epsilon", default=0.2, show_default=True,
              help="Normalized-distance switch threshold.")
def cmd_reward(inputs, manifest, fmt, out, min_interval, bandwidth,
               mode, alpha, beta, gamma, epsilon) -> None:
    """Score every transition of each trajectory with the shaped reward."""
    config = _decomposer_config(min_interval, bandwidth)
    try:
        weights = RewardWeights(alpha=alpha, beta=beta, gamma=gamma, epsilon=epsilon)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    def per_file(path, traj):
        if mode == "uvd":
            trace = shaped_reward_trace(traj, decompose(traj, config), weights)
        else:
            trace = final_goal_reward_trace(traj, weights)
        return {"id": str(path), "mode": mode, **trace.to_dict(weights)}

    _run_batch(_collect_inputs(inputs, manifest), fmt, per_file, out)


@main.command("relay")
@_in_args
@_manifest_opt
@_format_opt
@_out_opt
@_min_interval_opt
@_bandwidth_opt
@click.option("--epsilon", default=0.2, show_default=True,
              help="Raw embedding-distance switch threshold.")
@click.option("--delta", default=2, show_default=True,
              help="Budget tolerance in steps for the |h - B| check.")
@click.option("--budget-check/--no-budget-check", default=True, show_default=True,
              help="Require step counts near the demonstrated subgoal budgets.")
def cmd_relay(inputs, manifest, fmt, out, min_interval, bandwidth,
              epsilon, delta, budget_check) -> None:
    """Replay each trajectory's frames through its own goal-relay automaton."""
    config = _decomposer_config(min_interval, bandwidth)
    try:
        relay_config = RelayConfig(epsilon=epsilon, delta=delta, budget_check=budget_check)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    def per_file(path, traj):
        d = decompose(traj, config)
        frames = traj.frames64()
        state = relay_init(
            frames[list(d.subgoal_indices)], d.budgets, relay_config,
            goal_ids=d.subgoal_indices,
        )
        steps = []
        for t in range(1, traj.T):
            if state.finished:
                break
            goal_id, switched = relay_step(state, frames[t])
            steps.append({
                "t": t,
                "goal_id": int(goal_id),
                "distance": state.last_distance,
                "switched": switched,
            })
        return {
            "id": str(path),
            "subgoals": list(d.subgoal_indices),
            "finished": state.finished,
            "steps": steps,
        }

    _run_batch(_collect_inputs(inputs, manifest), fmt, per_file, out)


@main.command("synth")
@click.option("--t", "t_frames", required=True, type=int, help="Total frames T.")
@click.option("--k", required=True, type=int, help="Embedding dimension K.")
@click.option("--boundaries", required=True,
              help="Comma-separated ground-truth segment ends; last must be T-1.")
@click.option("--noise-sigma", default=0.0, show_default=True,
              help="Isotropic Gaussian noise scale.")
@click.option("--anchor-scale", default=1.0, show_default=True,
              help="Distance between consecutive segment anchors.")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(), help="Trajectory output path.")
@click.option("--format", "fmt", type=click.Choice(["binary", "csv"]), default=None,
              help="Output format; default inferred from extension.")
@click.option("--truth-out", default=None, type=click.Path(),
              help="Optional JSON file for the ground-truth boundaries.")
def cmd_synth(t_frames, k, boundaries, noise_sigma, anchor_scale, seed,
              out, fmt, truth_out) -> None:
    """Generate a synthetic trajectory with known segment boundaries."""
    try:
        parsed = tuple(int(b) for b in boundaries.split(","))
        cfg = SynthConfig(T=t_frames, K=k, boundaries=parsed, noise_sigma=noise_sigma,
                          anchor_scale=anchor_scale, seed=seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    traj, truth = generate_synthetic(cfg)
    out_path = Path(out)
    save_trajectory(traj, out_path, _infer_format(out_path, fmt))
    if truth_out:
        Path(truth_out).write_text(json.dumps({"boundaries": truth}) + "\n")


@main.command("bench")
@click.option("--suite", required=True, type=click.Path(exists=True),
              help="JSON fixture: list of synthetic-config objects.")
@_min_interval_opt
@_bandwidth_opt
@click.option("--tolerance", default=2, show_default=True,
              help="Boundary matching tolerance in frames.")
@click.option("--seeds", default="0,1,2,3,4", show_default=True,
              help="Comma-separated generator seeds.")
@click.option("--uniform-window", default=30, show_default=True,
              help="Window size for the Uniform baseline labels.")
@click.option("--csv-out", default=None, type=click.Path(),
              help="Per-run rows as CSV (method, config, seed, precision, recall, f1).")
@click.option("--json-out", default=None, type=click.Path(),
              help="Mean-F1 summary as JSON.")
def cmd_bench(suite, min_interval, bandwidth, tolerance, seeds,
              uniform_window, csv_out, json_out) -> None:
    """Compare boundary recovery against the Random and Uniform baselines."""
    config = _decomposer_config(min_interval, bandwidth)
    try:
        seed_list = [int(s) for s in seeds.split(",")]
        spec = json.loads(Path(suite).read_text())
        suite_cfgs = [SynthConfig(**{k: tuple(v) if k == "boundaries" else v
                                     for k, v in item.items()}) for item in spec]
    except (ValueError, TypeError) as exc:
        raise click.UsageError(f"bad suite or seeds: {exc}") from exc
    result = run_baseline_comparison(
        suite_cfgs, config, tolerance, seed_list, uniform_window
    )
    if csv_out:
        with open(csv_out, "w", newline="") as fh:
            writer = _csv.DictWriter(
                fh, fieldnames=["method", "config", "seed", "precision", "recall", "f1"]
            )
            writer.writeheader()
            writer.writerows(result["rows"])
    if json_out:
        Path(json_out).write_text(
            json.dumps({"summary": result["summary"], "per_config": result["per_config"]})
            + "\n"
        )
    click.echo(json.dumps(result["summary"]))


@main.command("env-demo")
@click.option("--reward-mode", type=click.Choice(["uvd", "final-goal"]), default="uvd",
              show_default=True)
@click.option("--seeds", default="0,1,2,3,4,5,6,7,8,9", show_default=True,
              help="Comma-separated training seeds.")
@click.option("--episodes", default=1200, show_default=True)
@click.option("--demo-out", default=None, type=click.Path(),
              help="Optional path for the scripted demonstration trajectory.")
def cmd_env_demo(reward_mode, seeds, episodes, demo_out) -> None:
    """Run the multi-stage gridworld reward-shaping experiment."""
    try:
        seed_list = tuple(int(s) for s in seeds.split(","))
    except ValueError as exc:
        raise click.UsageError(f"bad seeds: {exc}") from exc
    config = ChainEnvConfig()
    if demo_out:
        demo, _ = scripted_demo(config)
        out_path = Path(demo_out)
        save_trajectory(demo, out_path, _infer_format(out_path, None))
    learner = LearnerConfig(episodes=episodes)
    mode = "final_goal" if reward_mode == "final-goal" else "uvd"
    result = run_chain_experiment(config, mode, learner, seed_list)
    click.echo(json.dumps(result))


if __name__ == "__main__":
    main()
