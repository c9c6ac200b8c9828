"""Start/goal placement modes and the key-door and ice placement heuristics."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from ._rng import RandomStream
from .errors import (
    Degenerate,
    InvalidPlacement,
    NeedsBraiding,
    NoKeyCandidate,
    NoSharedTile,
    NoUniqueTiles,
    Unsatisfiable,
)
from .grid_graph import LabyrinthGraph, Position, Seed, as_dims
from .solver import all_paths, distance_map


class Setting(Enum):
    """The four mutually exclusive task variants."""

    navigation = "navigation"
    occluded = "occluded"
    key_door = "key_door"
    ice = "ice"


@dataclass(frozen=True)
class TaskSpec:
    """Placements for one task: start/goal always, key/door/ice per setting."""

    setting: Setting
    start: Position
    goal: Position
    key: Optional[Position] = None
    door: Optional[Position] = None
    ice: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ice", frozenset(self.ice))
        if self.start == self.goal:
            raise InvalidPlacement("start equals goal")
        if self.setting is Setting.key_door:
            if self.key is None or self.door is None:
                raise InvalidPlacement("key_door task needs both key and door")
            if self.door in (self.start, self.goal):
                raise InvalidPlacement("door collides with start or goal")
            if self.key in (self.start, self.goal, self.door):
                raise InvalidPlacement("key collides with start, goal, or door")
        else:
            if self.key is not None or self.door is not None:
                raise InvalidPlacement(f"{self.setting.value} task cannot carry key or door")
        if self.setting is Setting.ice:
            if not self.ice:
                raise InvalidPlacement("ice task needs a non-empty ice set")
            if self.start in self.ice or self.goal in self.ice:
                raise InvalidPlacement("ice covers start or goal")
        elif self.ice:
            raise InvalidPlacement(f"{self.setting.value} task cannot carry ice tiles")


@dataclass(frozen=True)
class PlacementMode:
    """How start and goal are chosen: user_defined, biased, or unbiased."""

    kind: str
    min_distance: Optional[int] = None

    _KINDS = ("user_defined", "biased", "unbiased")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown placement mode {self.kind!r}")
        if self.kind != "unbiased" and self.min_distance is not None:
            raise ValueError("min_distance only applies to unbiased placement")
        if self.min_distance is not None and self.min_distance < 1:
            raise ValueError("min_distance must be at least 1")

    @classmethod
    def biased(cls) -> "PlacementMode":
        return cls("biased")

    @classmethod
    def unbiased(cls, min_distance: Optional[int] = None) -> "PlacementMode":
        return cls("unbiased", min_distance)

    @classmethod
    def user_defined(cls) -> "PlacementMode":
        return cls("user_defined")


def default_min_distance(dims) -> int:
    """ceil((width + height) / 2), the unbiased-mode default."""
    dims = as_dims(dims)
    return (dims.width + dims.height + 1) // 2


def place_biased(dims) -> tuple:
    """Start at the lower-left corner, goal at the upper-right corner."""
    dims = as_dims(dims)
    if dims.tiles < 2:
        raise Degenerate("a 1x1 maze cannot hold distinct start and goal")
    return (dims.height - 1, 0), (0, dims.width - 1)


def place_unbiased(dims, min_distance: int, seed: Seed) -> tuple:
    """Uniform random (start, goal) with Manhattan distance >= min_distance."""
    dims = as_dims(dims)
    if min_distance < 1:
        raise ValueError("min_distance must be at least 1")
    max_distance = (dims.width - 1) + (dims.height - 1)
    if min_distance > max_distance:
        raise Unsatisfiable(
            f"min_distance {min_distance} exceeds the {dims.width}x{dims.height} "
            f"maximum of {max_distance}"
        )
    rng = RandomStream(seed)
    n = dims.tiles
    # Rejection keeps the pair distribution uniform over all valid pairs.
    for _ in range(1000):
        s = rng.below(n)
        g = rng.below(n)
        start = divmod(s, dims.width)
        goal = divmod(g, dims.width)
        if _manhattan(start, goal) >= min_distance:
            return start, goal
    pairs = [
        (a, b)
        for a in dims.positions()
        for b in dims.positions()
        if _manhattan(a, b) >= min_distance
    ]
    return rng.choice(pairs)


def _manhattan(a: Position, b: Position) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def place_key_and_door(
    graph: LabyrinthGraph,
    start: Position,
    goal: Position,
    seed: Seed,
) -> tuple:
    """Choose the door as the last tile shared by all solutions, then a key.

    The door is the common tile (start and goal excluded) farthest from the
    start by shortest-path distance, so it sits closest to the goal.  Key
    candidates lie outside the union of all start-goal paths and must stay
    reachable from the start while the door is still locked.
    """
    paths = all_paths(graph, start, goal)
    shared = set(paths[0])
    for path in paths[1:]:
        shared &= set(path)
    shared -= {start, goal}
    if not shared:
        raise NoSharedTile(f"no tile common to all {len(paths)} paths from {start} to {goal}")
    from_start = distance_map(graph, start)
    door = min(shared, key=lambda tile: (-from_start[tile], tile))
    on_any_path = set().union(*map(set, paths))
    reachable = distance_map(graph, start, blocked=(door,))
    candidates = [
        tile
        for tile in graph.dims.positions()
        if tile not in on_any_path and reachable.reachable(tile)
    ]
    if not candidates:
        raise NoKeyCandidate("every reachable tile lies on a start-goal path")
    key = RandomStream(seed).choice(candidates)
    return key, door


def place_ice(
    graph: LabyrinthGraph,
    start: Position,
    goal: Position,
    seed: Seed,
) -> frozenset:
    """Freeze the tiles unique to one seeded-random solution path.

    Only tiles appearing on no other path are frozen, which guarantees every
    other solution survives untouched.
    """
    paths = all_paths(graph, start, goal)
    if len(paths) < 2:
        raise NeedsBraiding("ice placement needs at least two solutions; braid first")
    tile_sets = [set(p) for p in paths]
    unique_sets = []
    for i, tiles in enumerate(tile_sets):
        others = set().union(*(t for j, t in enumerate(tile_sets) if j != i))
        unique_sets.append(tiles - others)
    eligible = [i for i, unique in enumerate(unique_sets) if unique]
    if not eligible:
        raise NoUniqueTiles("every path's tiles also appear on other paths")
    chosen = RandomStream(seed).choice(eligible)
    return frozenset(unique_sets[chosen])


def validate_task(graph: LabyrinthGraph, task: TaskSpec) -> None:
    """Check every graph-dependent task invariant, raising InvalidPlacement."""
    for name, pos in _placements(task):
        if not graph.dims.contains(pos):
            raise InvalidPlacement(f"{name} {pos} out of bounds for {graph.dims}")
    if task.setting is Setting.key_door:
        paths = all_paths(graph, task.start, task.goal)
        on_any = set().union(*map(set, paths))
        if any(task.door not in path for path in paths):
            raise InvalidPlacement(f"door {task.door} misses some start-goal path")
        if task.key in on_any:
            raise InvalidPlacement(f"key {task.key} lies on a start-goal path")
        locked = distance_map(graph, task.start, blocked=(task.door,))
        if not locked.reachable(task.key):
            raise InvalidPlacement(f"key {task.key} unreachable while the door is locked")
    elif task.setting is Setting.ice:
        paths = all_paths(graph, task.start, task.goal)
        if not any(task.ice.isdisjoint(path) for path in paths):
            raise InvalidPlacement("no ice-free start-goal path remains")


def _placements(task: TaskSpec):
    yield "start", task.start
    yield "goal", task.goal
    if task.key is not None:
        yield "key", task.key
    if task.door is not None:
        yield "door", task.door
    for tile in sorted(task.ice):
        yield "ice tile", tile


def change_start(graph: LabyrinthGraph, task: TaskSpec, new_start: Position) -> TaskSpec:
    """Rebuild the task with a new start; every invariant is revalidated."""
    if new_start in task.ice:
        raise InvalidPlacement(f"start {new_start} sits on an ice tile")
    if new_start == task.door:
        raise InvalidPlacement(f"start {new_start} sits on the door")
    if new_start == task.key:
        raise InvalidPlacement(f"start {new_start} sits on the key")
    updated = replace(task, start=new_start)
    validate_task(graph, updated)
    return updated


def change_start_and_goal(
    graph: LabyrinthGraph,
    task: TaskSpec,
    new_start: Position,
    new_goal: Position,
) -> TaskSpec:
    """Rebuild the task with a new start and goal; every invariant is revalidated."""
    for name, pos in (("start", new_start), ("goal", new_goal)):
        if pos in task.ice:
            raise InvalidPlacement(f"{name} {pos} sits on an ice tile")
        if pos == task.door:
            raise InvalidPlacement(f"{name} {pos} sits on the door")
        if pos == task.key:
            raise InvalidPlacement(f"{name} {pos} sits on the key")
    updated = replace(task, start=new_start, goal=new_goal)
    validate_task(graph, updated)
    return updated
