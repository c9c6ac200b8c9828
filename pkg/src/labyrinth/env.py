"""Episode semantics: reset, step, reward, termination, truncation.

The reward scheme makes a shortest-path episode total exactly 1.0: every
non-goal step costs 0.1/(width*height) and the goal step pays that penalty
back for each step a perfect run would have taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import IntEnum
from functools import cached_property
from typing import Optional

from .errors import EpisodeOver, NoPath
from .grid_graph import DELTAS, LabyrinthGraph, Position, canonical_text
from .solver import distance_map
from .tasks import Setting, TaskSpec, change_start as _change_start
from .tasks import change_start_and_goal as _change_start_and_goal
from .tasks import validate_task

DEFAULT_STEP_LIMIT_FACTOR = 40
DEFAULT_IMAGE_SIZE = 600


class Action(IntEnum):
    """Movement encoding; also the global tie-break order."""

    up = 0
    down = 1
    right = 2
    left = 3


@dataclass(frozen=True)
class EnvConfig:
    """Immutable bundle of structure, task, and episode budget."""

    graph: LabyrinthGraph
    task: TaskSpec
    step_limit: int
    shortest_len: int

    @classmethod
    def create(
        cls,
        graph: LabyrinthGraph,
        task: TaskSpec,
        step_limit: Optional[int] = None,
        validate: bool = True,
    ) -> "EnvConfig":
        if validate:
            validate_task(graph, task)
        shortest = compute_shortest_len(graph, task)
        limit = DEFAULT_STEP_LIMIT_FACTOR * graph.dims.tiles if step_limit is None else step_limit
        if limit < shortest:
            raise ValueError(f"step_limit {limit} below the shortest solution {shortest}")
        return cls(graph=graph, task=task, step_limit=limit, shortest_len=shortest)

    @cached_property
    def text(self) -> str:
        """Canonical configuration text; carried in every info dict."""
        return canonical_text(self.graph, self.task)

    @property
    def step_penalty(self) -> float:
        return -0.1 / self.graph.dims.tiles

    @property
    def goal_reward(self) -> float:
        return 1.0 + (self.shortest_len - 1) * (0.1 / self.graph.dims.tiles)


def compute_shortest_len(graph: LabyrinthGraph, task: TaskSpec) -> int:
    """Actions on a shortest legal solution for the task's setting."""
    if task.setting is Setting.key_door:
        to_key = distance_map(graph, task.key, blocked=(task.door,))[task.start]
        onward = distance_map(graph, task.goal)[task.key]
        total = to_key + onward
    elif task.setting is Setting.ice:
        total = distance_map(graph, task.goal, blocked=task.ice)[task.start]
    else:
        total = distance_map(graph, task.goal)[task.start]
    if total == float("inf"):
        raise NoPath(f"task has no legal solution from {task.start}")
    return int(total)


def reward_of(config: EnvConfig, reached_goal: bool) -> float:
    """Per-step penalty, or the goal reward that balances a perfect run to 1.0."""
    return config.goal_reward if reached_goal else config.step_penalty


@dataclass(frozen=True)
class EnvState:
    """One snapshot of an episode."""

    agent: Position
    has_key: bool = False
    steps_taken: int = 0
    terminated: bool = False
    truncated: bool = False
    reached_goal: bool = False
    fell_through_ice: bool = False

    @property
    def done(self) -> bool:
        return self.terminated or self.truncated


def initial_state(config: EnvConfig) -> EnvState:
    return EnvState(agent=config.task.start)


def transition(config: EnvConfig, state: EnvState, action) -> tuple:
    """Pure step function: (state, action) -> (state', reward, terminated, truncated, info).

    Moves one tile unless the border, a wall, or the still-locked door blocks
    the way; blocked moves leave the position unchanged but still consume a
    step and its penalty.
    """
    if state.done:
        raise EpisodeOver("episode already terminated or truncated; reset first")
    action = Action(action)
    task = config.task
    r, c = state.agent
    dr, dc = DELTAS[action]
    target = (r + dr, c + dc)
    agent = state.agent
    if config.graph.dims.contains(target) and not config.graph.has_wall(state.agent, target):
        locked_door = (
            task.setting is Setting.key_door and target == task.door and not state.has_key
        )
        if not locked_door:
            agent = target

    has_key = state.has_key or (task.setting is Setting.key_door and agent == task.key)
    steps = state.steps_taken + 1
    fell = task.setting is Setting.ice and agent in task.ice
    reached = not fell and agent == task.goal
    terminated = fell or reached
    truncated = not terminated and steps >= config.step_limit

    new_state = EnvState(
        agent=agent,
        has_key=has_key,
        steps_taken=steps,
        terminated=terminated,
        truncated=truncated,
        reached_goal=reached,
        fell_through_ice=fell,
    )
    reward = reward_of(config, reached)
    info = _info(config, new_state)
    return new_state, reward, terminated, truncated, info


def _info(config: EnvConfig, state: EnvState) -> dict:
    return {
        "config_text": config.text,
        "success": state.reached_goal,
        "fell_through_ice": state.fell_through_ice,
        "has_key": state.has_key,
    }


@dataclass
class Trajectory:
    """One episode: L actions, L rewards, and L+1 state snapshots."""

    config_text: str
    states: list = field(default_factory=list)
    actions: list = field(default_factory=list)
    rewards: list = field(default_factory=list)
    terminated: bool = False
    truncated: bool = False
    reached_goal: bool = False

    def __len__(self) -> int:
        return len(self.actions)


def episode_return(trajectory: Trajectory) -> float:
    """Sum of the episode's rewards."""
    return float(sum(trajectory.rewards))


def success(trajectory: Trajectory) -> bool:
    """True when the episode ended on the goal tile."""
    return bool(trajectory.reached_goal)


class LabyrinthEnv:
    """Stateful environment with the usual reset/step five-tuple surface.

    render_mode "rgb_array" yields images (occluded automatically in the
    occluded setting); "vector" yields the flat numeric encoding.  A single
    instance is single-owner mutable; run one episode at a time on it.
    """

    def __init__(
        self,
        config: EnvConfig,
        render_mode: str = "rgb_array",
        size: int = DEFAULT_IMAGE_SIZE,
    ):
        if render_mode not in ("rgb_array", "vector"):
            raise ValueError(f"unknown render_mode {render_mode!r}")
        self.config = config
        self.render_mode = render_mode
        self.size = size
        self.draw_agent = True
        self.state = initial_state(config)

    def reset(self, *, seed=None, options: Optional[dict] = None) -> tuple:
        """Start a fresh episode; options={'agent': False} hides the agent glyph."""
        del seed  # transitions are deterministic; accepted for API parity
        if options and "agent" in options:
            self.draw_agent = bool(options["agent"])
        self.state = initial_state(self.config)
        return self.observe(), _info(self.config, self.state)

    def step(self, action) -> tuple:
        self.state, reward, terminated, truncated, info = transition(
            self.config, self.state, action
        )
        return self.observe(), reward, terminated, truncated, info

    def observe(self):
        from . import observe as _observe

        if self.render_mode == "vector":
            return _observe.encode_vector(self.config, self.state)
        if self.config.task.setting is Setting.occluded:
            return _observe.render_occluded(
                self.config, self.state, self.size, draw_agent=self.draw_agent
            )
        return _observe.render_full(
            self.config, self.state, self.size, draw_agent=self.draw_agent
        )

    def solve(self, mode: str = "all"):
        """Structure-level solutions from the task's start to its goal."""
        from .solver import all_paths, shortest_path

        task = self.config.task
        if mode == "all":
            return all_paths(self.config.graph, task.start, task.goal)
        if mode == "shortest":
            return shortest_path(self.config.graph, task.start, task.goal)
        raise ValueError(f"unknown solve mode {mode!r}")

    def save(self, path) -> None:
        from .config_io import save as _save

        _save(path, self.config)

    def load(self, path) -> tuple:
        """Replace the configuration from a file (its setting wins) and reset."""
        from .config_io import load as _load

        self.config = _load(path)
        return self.reset()

    def change_start(self, new_start: Position) -> tuple:
        task = _change_start(self.config.graph, self.config.task, new_start)
        self.config = EnvConfig.create(
            self.config.graph, task, step_limit=self.config.step_limit, validate=False
        )
        return self.reset()

    def change_start_and_goal(self, new_start: Position, new_goal: Position) -> tuple:
        task = _change_start_and_goal(
            self.config.graph, self.config.task, new_start, new_goal
        )
        self.config = EnvConfig.create(
            self.config.graph, task, step_limit=self.config.step_limit, validate=False
        )
        return self.reset()
