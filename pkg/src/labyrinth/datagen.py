"""Split generation, expert datasets, evaluation, and distribution analytics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np
from PIL import Image
from scipy.optimize import linprog
from scipy.spatial.distance import jensenshannon

from ._rng import RandomStream, derive_seed
from .env import (
    Action,
    EnvConfig,
    EnvState,
    Trajectory,
    initial_state,
    transition,
)
from .errors import (
    BadDistribution,
    Degenerate,
    EmptyInput,
    NeedsBraiding,
    NoKeyCandidate,
    NoSharedTile,
    NoUniqueTiles,
    SplitsExhausted,
    Unsatisfiable,
)
from .grid_graph import as_dims, braid, generate_perfect, structure_hash
from .observe import render_full, render_occluded
from .solver import count_paths, optimal_action
from .tasks import (
    PlacementMode,
    Setting,
    TaskSpec,
    default_min_distance,
    place_biased,
    place_ice,
    place_key_and_door,
    place_unbiased,
)

SPLIT_NAMES = ("train", "eval", "test")
ATTEMPT_BUDGET = 1000
FORMAT_VERSION = 1


class UniquenessRegistry:
    """Tracks canonical texts by digest; texts are compared on digest collision."""

    def __init__(self) -> None:
        self._by_digest: dict = {}

    def add(self, digest: str, text: str) -> bool:
        """Record one structure; False when it was already present."""
        texts = self._by_digest.setdefault(digest, [])
        if text in texts:
            return False
        texts.append(text)
        return True

    def __len__(self) -> int:
        return sum(len(texts) for texts in self._by_digest.values())


@dataclass
class SplitSet:
    """Disjoint train/eval/test configuration collections."""

    train: list = field(default_factory=list)
    eval: list = field(default_factory=list)
    test: list = field(default_factory=list)

    metadata: dict = field(default_factory=dict)

    def items(self):
        for name in SPLIT_NAMES:
            yield name, getattr(self, name)

    def all_configs(self) -> list:
        return [config for _, configs in self.items() for config in configs]


def _normalize_counts(counts) -> dict:
    if isinstance(counts, dict):
        unknown = set(counts) - set(SPLIT_NAMES)
        if unknown:
            raise ValueError(f"unknown split name(s): {sorted(unknown)}")
        out = {name: int(counts.get(name, 0)) for name in SPLIT_NAMES}
    else:
        values = list(counts)
        if len(values) != 3:
            raise ValueError("counts must name train, eval, and test")
        out = dict(zip(SPLIT_NAMES, (int(v) for v in values)))
    if any(v < 0 for v in out.values()):
        raise ValueError("split counts must be non-negative")
    return out


def _build_config(dims, setting, mode, attempt_seed, braid_level) -> EnvConfig:
    graph = generate_perfect(dims, derive_seed(attempt_seed, 0))
    if mode.kind == "biased":
        start, goal = place_biased(dims)
    elif mode.kind == "unbiased":
        min_distance = mode.min_distance or default_min_distance(dims)
        start, goal = place_unbiased(dims, min_distance, derive_seed(attempt_seed, 1))
    else:
        raise ValueError("bulk generation needs biased or unbiased placement")
    target = max(int(braid_level), 2 if setting is Setting.ice else 1)
    if target > 1:
        graph = braid(
            graph,
            lambda g: count_paths(g, start, goal, limit=target) >= target,
            derive_seed(attempt_seed, 2),
        )
    if setting is Setting.key_door:
        key, door = place_key_and_door(graph, start, goal, derive_seed(attempt_seed, 3))
        task = TaskSpec(setting, start, goal, key=key, door=door)
    elif setting is Setting.ice:
        ice = place_ice(graph, start, goal, derive_seed(attempt_seed, 3))
        task = TaskSpec(setting, start, goal, ice=ice)
    else:
        task = TaskSpec(setting, start, goal)
    return EnvConfig.create(graph, task)


def generate_splits(
    dims,
    counts,
    setting: Setting = Setting.navigation,
    mode: Optional[PlacementMode] = None,
    seed: int = 0,
    braid_level: int = 1,
) -> SplitSet:
    """Generate unique configurations, deterministic in every argument.

    Each attempt runs on its own seed derived from (seed, attempt index);
    structures whose canonical text already appeared are rejected, as are
    attempts whose placement preconditions fail.  The budget counts
    consecutive rejections, so exhausting a small structure space (e.g. 3x3)
    fails fast with SplitsExhausted instead of looping forever.
    """
    dims = as_dims(dims)
    if dims.tiles < 2:
        raise Degenerate("generation needs at least two tiles for distinct start and goal")
    setting = Setting(setting)
    mode = mode or PlacementMode.biased()
    counts = _normalize_counts(counts)
    registry = UniquenessRegistry()
    split = SplitSet(
        metadata={
            "width": dims.width,
            "height": dims.height,
            "setting": setting.value,
            "mode": mode.kind,
            "min_distance": mode.min_distance,
            "seed": seed,
            "braid": braid_level,
            "counts": counts,
        }
    )
    attempt = 0
    failures = 0
    last_reason = "no attempts made"
    for name, want in counts.items():
        bucket = getattr(split, name)
        while len(bucket) < want:
            if failures >= ATTEMPT_BUDGET:
                raise SplitsExhausted(
                    f"{failures} consecutive failed attempts "
                    f"(accepted {len(registry)}); last reason: {last_reason}"
                )
            attempt_seed = derive_seed(seed, attempt)
            attempt += 1
            try:
                config = _build_config(dims, setting, mode, attempt_seed, braid_level)
            except (
                Unsatisfiable,
                NeedsBraiding,
                NoSharedTile,
                NoKeyCandidate,
                NoUniqueTiles,
            ) as exc:
                failures += 1
                last_reason = str(exc)
                continue
            digest = structure_hash(config.graph, config.task)
            if not registry.add(digest, config.text):
                failures += 1
                last_reason = "duplicate structure"
                continue
            failures = 0
            bucket.append(config)
    return split


def expert_action(config: EnvConfig, state: EnvState) -> Action:
    """The optimal action for the task's current sub-goal.

    key_door experts head for the key with the door treated as a wall, then
    for the goal; ice experts navigate the graph with ice tiles deleted, so
    they can never fall through.
    """
    task = config.task
    if task.setting is Setting.key_door:
        if not state.has_key:
            return optimal_action(config.graph, state.agent, task.key, blocked=(task.door,))
        return optimal_action(config.graph, state.agent, task.goal)
    if task.setting is Setting.ice:
        return optimal_action(config.graph, state.agent, task.goal, blocked=task.ice)
    return optimal_action(config.graph, state.agent, task.goal)


def expert_policy(config: EnvConfig, state: EnvState) -> Action:
    return expert_action(config, state)


def random_policy(seed: int) -> Callable:
    """A seeded uniform-random policy (stateful across calls)."""
    rng = RandomStream(seed)
    return lambda config, state: Action(rng.below(4))


def constant_policy(action) -> Callable:
    fixed = Action(action)
    return lambda config, state: fixed


def expert_rollout(config: EnvConfig) -> Trajectory:
    """Roll the expert to the goal; the return is exactly 1.0 by construction."""
    return rollout(config, expert_policy)


def rollout(config: EnvConfig, policy: Callable) -> Trajectory:
    state = initial_state(config)
    traj = Trajectory(config_text=config.text, states=[state])
    while not state.done:
        action = policy(config, state)
        state, reward, _, _, _ = transition(config, state, action)
        traj.states.append(state)
        traj.actions.append(int(action))
        traj.rewards.append(reward)
    traj.terminated = state.terminated
    traj.truncated = state.truncated
    traj.reached_goal = state.reached_goal
    return traj


def replay_episode(config: EnvConfig, actions: Iterable) -> Trajectory:
    """Apply a stored action sequence, stopping once the episode ends."""
    state = initial_state(config)
    traj = Trajectory(config_text=config.text, states=[state])
    for action in actions:
        if state.done:
            break
        state, reward, _, _, _ = transition(config, state, action)
        traj.states.append(state)
        traj.actions.append(int(action))
        traj.rewards.append(reward)
    traj.terminated = state.terminated
    traj.truncated = state.truncated
    traj.reached_goal = state.reached_goal
    return traj


def _render_state(config: EnvConfig, state: EnvState, size: int) -> np.ndarray:
    if config.task.setting is Setting.occluded:
        return render_occluded(config, state, size)
    return render_full(config, state, size)


def write_dataset(split: SplitSet, out_dir, image_size: int = 600) -> dict:
    """Write PNG observations plus one JSON-lines manifest per split.

    Layout: metadata.json, <split>.jsonl, images/<split>/<episode>_<step>.png.
    Each episode contributes one record per action and a final record for the
    terminal state with the action sentinel -1 and the final reward repeated.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, configs in split.items():
        images = out / "images" / name
        images.mkdir(parents=True, exist_ok=True)
        with open(out / f"{name}.jsonl", "w", encoding="utf-8") as manifest:
            for episode, config in enumerate(configs):
                traj = expert_rollout(config)
                for record in _episode_records(config, traj, name, episode, image_size, out):
                    manifest.write(json.dumps(record) + "\n")
    metadata = dict(split.metadata)
    metadata["format_version"] = FORMAT_VERSION
    metadata["image_size"] = image_size
    with open(out / "metadata.json", "w", encoding="utf-8") as handle:
        json.dump(metadata, handle, indent=2)
        handle.write("\n")
    return metadata


def _episode_records(config, traj, split_name, episode, image_size, out_dir):
    steps = len(traj.states)
    for i, state in enumerate(traj.states):
        rel = f"images/{split_name}/{episode:05d}_{i:03d}.png"
        Image.fromarray(_render_state(config, state, image_size)).save(out_dir / rel)
        terminal = i == steps - 1
        yield {
            "obs": rel,
            "actions": -1 if terminal else traj.actions[i],
            "rewards": traj.rewards[-1] if terminal else traj.rewards[i],
            "episode_starts": i == 0,
            "info": traj.config_text,
        }


def read_manifest(path) -> list:
    """Load one .jsonl manifest into a list of record dicts."""
    records = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def manifest_episodes(records: list) -> list:
    """Group manifest records into episodes on the episode_starts flag."""
    episodes = []
    for record in records:
        if record["episode_starts"] or not episodes:
            episodes.append([])
        episodes[-1].append(record)
    return episodes


def config_from_text(text: str) -> EnvConfig:
    """Rebuild a runnable EnvConfig from a canonical info string."""
    from .config_io import parse

    doc = parse(text)
    return EnvConfig.create(doc.graph, doc.to_task())


def episode_trajectory(records: list) -> Trajectory:
    """Replay one manifest episode back into a Trajectory."""
    config = config_from_text(records[0]["info"])
    actions = [r["actions"] for r in records if r["actions"] != -1]
    return replay_episode(config, actions)


@dataclass
class EvalReport:
    """Evaluation summary: AER (mean and population std) and success ratio."""

    aer: float
    aer_std: float
    sr: float
    episodes: int
    errors: list = field(default_factory=list)


def evaluate(policy: Callable, configs, episodes_per_config: int = 1) -> EvalReport:
    """Run a policy over configurations; policy faults count as failures."""
    configs = list(configs)
    if not configs:
        raise EmptyInput("no configurations to evaluate")
    returns = []
    successes = 0
    errors = []
    for index, config in enumerate(configs):
        for _ in range(episodes_per_config):
            state = initial_state(config)
            total = 0.0
            failed = False
            while not state.done:
                try:
                    action = policy(config, state)
                    state, reward, _, _, _ = transition(config, state, action)
                except Exception as exc:  # policy faults must not sink the run
                    errors.append(f"config {index}: {exc}")
                    failed = True
                    break
                total += reward
            returns.append(total)
            if not failed and state.reached_goal:
                successes += 1
    data = np.asarray(returns, dtype=np.float64)
    return EvalReport(
        aer=float(data.mean()),
        aer_std=float(data.std()),
        sr=successes / len(returns),
        episodes=len(returns),
        errors=errors,
    )


@dataclass
class DistributionSummary:
    """Empirical action frequencies and tile visit frequencies."""

    action_dist: np.ndarray
    tile_dist: np.ndarray


def action_distribution(trajectories) -> np.ndarray:
    """Empirical action frequencies over all steps, as a length-4 vector."""
    counts = np.zeros(4, dtype=np.float64)
    for traj in trajectories:
        for action in traj.actions:
            counts[action] += 1
    total = counts.sum()
    if total == 0:
        raise EmptyInput("no actions in the given trajectories")
    return counts / total


def tile_distribution(trajectories, dims) -> np.ndarray:
    """Visit frequencies over all state snapshots, as a (height, width) matrix."""
    dims = as_dims(dims)
    counts = np.zeros((dims.height, dims.width), dtype=np.float64)
    total = 0
    for traj in trajectories:
        for state in traj.states:
            counts[state.agent] += 1
            total += 1
    if total == 0:
        raise EmptyInput("no states in the given trajectories")
    return counts / total


def summarize(trajectories, dims) -> DistributionSummary:
    trajectories = list(trajectories)
    return DistributionSummary(
        action_dist=action_distribution(trajectories),
        tile_dist=tile_distribution(trajectories, dims),
    )


def _check_distribution(p: np.ndarray, name: str) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1:
        raise BadDistribution(f"{name} must be one-dimensional")
    if (p < 0).any():
        raise BadDistribution(f"{name} has negative entries")
    total = p.sum()
    if not np.isclose(total, 1.0, atol=1e-6):
        raise BadDistribution(f"{name} sums to {total}, expected 1")
    return p / total


def js_distance(p, q) -> float:
    """Jensen-Shannon distance (base 2): sqrt of the divergence, in [0, 1]."""
    p = _check_distribution(np.ravel(p), "p")
    q = _check_distribution(np.ravel(q), "q")
    if p.shape != q.shape:
        raise BadDistribution(f"length mismatch: {p.shape} vs {q.shape}")
    if np.array_equal(p, q):
        return 0.0
    return float(jensenshannon(p, q, base=2))


def ws_distance(mu, nu, dims=None) -> float:
    """Exact Wasserstein-1 between tile distributions under Manhattan costs.

    Solved as the classic transportation LP over the support points; one
    redundant marginal constraint is dropped so the system has full rank.
    """
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    if dims is None:
        if mu.ndim != 2:
            raise BadDistribution("pass dims or two-dimensional tile matrices")
        dims = (mu.shape[1], mu.shape[0])
    dims = as_dims(dims)
    shape = (dims.height, dims.width)
    if mu.shape != shape or nu.shape != shape:
        raise BadDistribution(f"expected {shape} matrices, got {mu.shape} and {nu.shape}")
    flat_mu = _check_distribution(mu.ravel(), "mu")
    flat_nu = _check_distribution(nu.ravel(), "nu")
    if np.array_equal(flat_mu, flat_nu):
        return 0.0
    src = np.flatnonzero(flat_mu)
    dst = np.flatnonzero(flat_nu)
    rows_s, cols_s = np.divmod(src, dims.width)
    rows_d, cols_d = np.divmod(dst, dims.width)
    cost = (
        np.abs(rows_s[:, None] - rows_d[None, :])
        + np.abs(cols_s[:, None] - cols_d[None, :])
    ).astype(np.float64)
    m, n = len(src), len(dst)
    a_eq = np.zeros((m + n - 1, m * n), dtype=np.float64)
    b_eq = np.zeros(m + n - 1, dtype=np.float64)
    for i in range(m):
        a_eq[i, i * n : (i + 1) * n] = 1.0
        b_eq[i] = flat_mu[src[i]]
    for j in range(n - 1):
        a_eq[m + j, j::n] = 1.0
        b_eq[m + j] = flat_nu[dst[j]]
    result = linprog(cost.ravel(), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not result.success:
        raise BadDistribution(f"transport solve failed: {result.message}")
    return float(result.fun)


def placement_shift_experiment(
    dims=(5, 5),
    structures: int = 100,
    pairs_per_structure: int = 4,
    seed: int = 0,
) -> dict:
    """Measure how random start/goal placement flattens expert action usage.

    For each generated structure this compares the base-2 Jensen-Shannon
    divergence to uniform of (a) the biased-placement expert's action
    distribution and (b) the pooled action distribution of experts run from
    seeded random start/goal pairs on the same structure.
    """
    dims = as_dims(dims)
    split = generate_splits(
        dims,
        {"train": structures, "eval": 0, "test": 0},
        setting=Setting.navigation,
        mode=PlacementMode.biased(),
        seed=seed,
    )
    uniform = np.full(4, 0.25)
    biased_bits = []
    shifted_bits = []
    pair_base = derive_seed(seed, 1 << 40)
    for index, config in enumerate(split.train):
        dist = action_distribution([expert_rollout(config)])
        biased_bits.append(js_distance(dist, uniform) ** 2)
        rollouts = []
        for k in range(pairs_per_structure):
            pair_seed = derive_seed(pair_base, index * pairs_per_structure + k)
            start, goal = place_unbiased(dims, 1, pair_seed)
            task = TaskSpec(Setting.navigation, start, goal)
            shifted = EnvConfig.create(config.graph, task, validate=False)
            rollouts.append(expert_rollout(shifted))
        dist = action_distribution(rollouts)
        shifted_bits.append(js_distance(dist, uniform) ** 2)
    biased_mean = float(np.mean(biased_bits))
    shifted_mean = float(np.mean(shifted_bits))
    return {
        "biased_mean_bits": biased_mean,
        "shifted_mean_bits": shifted_mean,
        "margin_bits": biased_mean - shifted_mean,
        "structures": len(split.train),
        "pairs_per_structure": pairs_per_structure,
    }
