"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors, 2 on data errors (unreadable or
inconsistent files, unsatisfiable generation, and similar).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import config_io, datagen
from .env import initial_state, transition
from .errors import LabyrinthError
from .observe import render_full, render_occluded
from .solver import all_paths, shortest_path
from .tasks import PlacementMode, Setting


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser(prog: str = "labyrinth") -> argparse.ArgumentParser:
    parser = _Parser(prog=prog, description="Deterministic labyrinth benchmark toolkit")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    generate = commands.add_parser("generate", help="generate splits and an expert dataset")
    add_generate_arguments(generate)

    solve = commands.add_parser("solve", help="print solutions of a .labyrinth file")
    solve.add_argument("file")
    solve.add_argument("--mode", choices=("all", "shortest"), default="all")

    render = commands.add_parser("render", help="render a .labyrinth file to PNG")
    render.add_argument("file")
    render.add_argument("--out", help="output PNG path (default: <file>.png)")
    render.add_argument("--size", type=int, default=600)
    render.add_argument("--no-agent", action="store_true", help="omit the agent glyph")
    render.add_argument(
        "--full", action="store_true", help="ignore the occlusion setting when drawing"
    )

    replay = commands.add_parser("replay", help="step a .labyrinth file through actions")
    replay.add_argument("file")
    replay.add_argument("--actions", required=True, help="comma-separated actions (0-3 or names)")
    replay.add_argument("--size", type=int, default=600)
    replay.add_argument("--save-frames", help="directory for per-step PNG observations")

    analyze = commands.add_parser("analyze", help="action/tile distributions of a dataset")
    analyze.add_argument("dataset")
    analyze.add_argument("--against", help="second dataset to compare distributions with")

    evaluate = commands.add_parser("evaluate", help="run a policy over a dataset's structures")
    evaluate.add_argument("--dataset", required=True)
    evaluate.add_argument("--policy", choices=("expert", "random"), default="expert")
    evaluate.add_argument("--episodes", type=int, default=1, help="episodes per structure")
    evaluate.add_argument("--seed", type=int, default=0, help="seed for the random policy")

    return parser


def add_generate_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--width", type=int, required=True)
    parser.add_argument("--height", type=int, required=True)
    parser.add_argument("--train", type=int, default=0)
    parser.add_argument("--eval", type=int, default=0)
    parser.add_argument("--test", type=int, default=0)
    parser.add_argument(
        "--setting",
        choices=[s.value for s in Setting],
        default=Setting.navigation.value,
    )
    parser.add_argument("--mode", choices=("biased", "unbiased"), default="biased")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--min-distance",
        type=int,
        default=None,
        help="minimum start-goal Manhattan distance for unbiased placement",
    )
    parser.add_argument(
        "--braid",
        type=int,
        default=1,
        help="minimum number of distinct solutions per structure",
    )
    parser.add_argument("--out", default="labyrinth_dataset", help="dataset output directory")
    parser.add_argument("--image-size", type=int, default=600)


def _parse_actions(text: str) -> list:
    from .env import Action

    actions = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token.lstrip("-").isdigit():
            actions.append(Action(int(token)))
        else:
            try:
                actions.append(Action[token])
            except KeyError:
                raise ValueError(f"unknown action {token!r}") from None
    if not actions:
        raise ValueError("no actions given")
    return actions


def _save_png(array: np.ndarray, path) -> None:
    from PIL import Image

    Image.fromarray(array).save(path)


def _observe(config, state, size, draw_agent=True, force_full=False):
    if not force_full and config.task.setting is Setting.occluded:
        return render_occluded(config, state, size, draw_agent=draw_agent)
    return render_full(config, state, size, draw_agent=draw_agent)


def _cmd_generate(args) -> int:
    mode = (
        PlacementMode.unbiased(args.min_distance)
        if args.mode == "unbiased"
        else PlacementMode.biased()
    )
    split = datagen.generate_splits(
        (args.width, args.height),
        {"train": args.train, "eval": args.eval, "test": args.test},
        setting=Setting(args.setting),
        mode=mode,
        seed=args.seed,
        braid_level=args.braid,
    )
    datagen.write_dataset(split, args.out, image_size=args.image_size)
    total = sum(len(configs) for _, configs in split.items())
    print(f"wrote {total} structures to {args.out}")
    return 0


def _cmd_solve(args) -> int:
    config = config_io.load(args.file)
    start, goal = config.task.start, config.task.goal
    if args.mode == "shortest":
        paths = [shortest_path(config.graph, start, goal)]
    else:
        paths = all_paths(config.graph, start, goal)
    for path in paths:
        print(" ".join(f"{r},{c}" for r, c in path))
    return 0


def _cmd_render(args) -> int:
    config = config_io.load(args.file)
    state = initial_state(config)
    image = _observe(
        config, state, args.size, draw_agent=not args.no_agent, force_full=args.full
    )
    out = args.out or str(Path(args.file).with_suffix(".png"))
    _save_png(image, out)
    print(f"wrote {out}")
    return 0


def _cmd_replay(args) -> int:
    config = config_io.load(args.file)
    actions = _parse_actions(args.actions)
    frames_dir = None
    if args.save_frames:
        frames_dir = Path(args.save_frames)
        frames_dir.mkdir(parents=True, exist_ok=True)
    state = initial_state(config)
    if frames_dir is not None:
        _save_png(_observe(config, state, args.size), frames_dir / "frame_0000.png")
    total = 0.0
    consumed = 0
    for action in actions:
        if state.done:
            break
        state, reward, terminated, truncated, _ = transition(config, state, action)
        total += reward
        consumed += 1
        print(
            f"step {consumed}: action={action.name} reward={reward!r} "
            f"terminated={terminated} truncated={truncated}"
        )
        if frames_dir is not None:
            _save_png(
                _observe(config, state, args.size), frames_dir / f"frame_{consumed:04d}.png"
            )
    if consumed < len(actions):
        sys.stderr.write(f"episode ended; ignored {len(actions) - consumed} action(s)\n")
    print(f"return={total!r} success={state.reached_goal}")
    return 0


def _load_dataset_trajectories(root: Path):
    metadata = json.loads((root / "metadata.json").read_text(encoding="utf-8"))
    trajectories = []
    for name in datagen.SPLIT_NAMES:
        manifest = root / f"{name}.jsonl"
        if not manifest.exists():
            continue
        for episode in datagen.manifest_episodes(datagen.read_manifest(manifest)):
            trajectories.append(datagen.episode_trajectory(episode))
    return metadata, trajectories


def _cmd_analyze(args) -> int:
    root = Path(args.dataset)
    metadata, trajectories = _load_dataset_trajectories(root)
    dims = (metadata["width"], metadata["height"])
    summary = datagen.summarize(trajectories, dims)
    uniform = np.full(4, 0.25)
    report = {
        "dataset": str(root),
        "episodes": len(trajectories),
        "action_dist": [round(v, 6) for v in summary.action_dist],
        "tile_dist": [[round(v, 6) for v in row] for row in summary.tile_dist],
        "action_jsd_to_uniform_bits": datagen.js_distance(summary.action_dist, uniform) ** 2,
    }
    if args.against:
        other_meta, other_trajs = _load_dataset_trajectories(Path(args.against))
        other_dims = (other_meta["width"], other_meta["height"])
        other = datagen.summarize(other_trajs, other_dims)
        report["against"] = str(args.against)
        report["action_js_distance"] = datagen.js_distance(
            summary.action_dist, other.action_dist
        )
        report["tile_ws_distance"] = datagen.ws_distance(
            summary.tile_dist, other.tile_dist, dims
        )
    print(json.dumps(report, indent=2))
    return 0


def _cmd_evaluate(args) -> int:
    root = Path(args.dataset)
    configs = []
    seen = set()
    for name in datagen.SPLIT_NAMES:
        manifest = root / f"{name}.jsonl"
        if not manifest.exists():
            continue
        for record in datagen.read_manifest(manifest):
            text = record["info"]
            if text not in seen:
                seen.add(text)
                configs.append(datagen.config_from_text(text))
    policy = (
        datagen.expert_policy
        if args.policy == "expert"
        else datagen.random_policy(args.seed)
    )
    report = datagen.evaluate(policy, configs, episodes_per_config=args.episodes)
    print(
        f"AER {report.aer:.4f} +/- {report.aer_std:.4f}  "
        f"SR {100 * report.sr:.1f}%  ({report.episodes} episodes)"
    )
    for line in report.errors:
        sys.stderr.write(f"policy error: {line}\n")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "render": _cmd_render,
    "replay": _cmd_replay,
    "analyze": _cmd_analyze,
    "evaluate": _cmd_evaluate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on usage problems; fold that into the return code
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return _COMMANDS[args.command](args)
    except (LabyrinthError, OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
