"""Exact path enumeration, shortest paths, and the optimal-action oracle.

Wherever a deterministic order is needed the neighbor order is up, down,
right, left, matching the action encoding.
"""

from __future__ import annotations

import math
from typing import Iterable, TYPE_CHECKING

import numpy as np

from . import _kernels
from .errors import AtTarget, NoPath, PathCapExceeded
from .grid_graph import DELTAS, LabyrinthGraph, Position

if TYPE_CHECKING:
    from .env import Action

Path = tuple[Position, ...]

DEFAULT_PATH_CAP = 1_000_000


def _masked_arrays(graph: LabyrinthGraph, blocked: Iterable[Position]):
    """Wall arrays with every adjacency of each blocked tile sealed off."""
    vwalls = graph.vwalls.copy()
    hwalls = graph.hwalls.copy()
    width, height = graph.dims.width, graph.dims.height
    for r, c in blocked:
        if c > 0:
            vwalls[r, c - 1] = 1
        if c < width - 1:
            vwalls[r, c] = 1
        if r > 0:
            hwalls[r - 1, c] = 1
        if r < height - 1:
            hwalls[r, c] = 1
    return vwalls, hwalls


class DistanceMap:
    """Shortest-path distances (in actions) from every tile to one target."""

    __slots__ = ("dims", "target", "_dist")

    def __init__(self, dims, target: Position, dist: np.ndarray):
        self.dims = dims
        self.target = target
        dist.setflags(write=False)
        self._dist = dist

    def __getitem__(self, pos: Position):
        """Distance from pos to the target; math.inf when unreachable."""
        value = int(self._dist[pos])
        return math.inf if value < 0 else value

    def reachable(self, pos: Position) -> bool:
        return int(self._dist[pos]) >= 0

    def to_array(self) -> np.ndarray:
        """Read-only (height, width) int32 array, -1 marking unreachable."""
        return self._dist


def distance_map(
    graph: LabyrinthGraph,
    target: Position,
    blocked: Iterable[Position] = (),
) -> DistanceMap:
    """BFS distances to target; tiles in blocked are treated as walls."""
    if not graph.dims.contains(target):
        raise ValueError(f"target {target} out of bounds")
    blocked = frozenset(blocked)
    if blocked:
        vwalls, hwalls = _masked_arrays(graph, blocked)
    else:
        vwalls, hwalls = graph.vwalls, graph.hwalls
    dist, _ = _kernels.bfs_tree(vwalls, hwalls, target[0], target[1])
    return DistanceMap(graph.dims, target, dist)


def shortest_path(graph: LabyrinthGraph, source: Position, target: Position) -> Path:
    """A minimum-length path; ties go to the first target discovery under BFS."""
    if source == target:
        raise ValueError("source and target must differ")
    width = graph.dims.width
    dist, parent = _kernels.bfs_tree(graph.vwalls, graph.hwalls, source[0], source[1])
    if dist[target] < 0:
        raise NoPath(f"no path from {source} to {target}")
    flat = parent.reshape(-1)
    cells = [target[0] * width + target[1]]
    while cells[-1] != source[0] * width + source[1]:
        cells.append(int(flat[cells[-1]]))
    cells.reverse()
    return tuple(divmod(cell, width) for cell in cells)


def all_paths(
    graph: LabyrinthGraph,
    source: Position,
    target: Position,
    cap: int = DEFAULT_PATH_CAP,
) -> list:
    """Every simple source-to-target path, in depth-first emission order.

    Raises PathCapExceeded when more than cap paths exist; heavy braiding on
    large grids makes the count explode, so the cap is a hard guard rather
    than a truncation.
    """
    if source == target:
        raise ValueError("source and target must differ")
    width = graph.dims.width
    raw, hit_cap = _kernels.enumerate_paths(
        graph.vwalls, graph.hwalls, source[0], source[1], target[0], target[1], int(cap)
    )
    if hit_cap:
        raise PathCapExceeded(f"more than {cap} paths from {source} to {target}")
    if not raw:
        raise NoPath(f"no path from {source} to {target}")
    return [tuple(divmod(int(cell), width) for cell in cells) for cells in raw]


def count_paths(
    graph: LabyrinthGraph,
    source: Position,
    target: Position,
    limit: int = DEFAULT_PATH_CAP,
) -> int:
    """Number of simple source-to-target paths, counting no further than limit."""
    if source == target:
        raise ValueError("source and target must differ")
    return _kernels.count_paths_up_to(
        graph.vwalls, graph.hwalls, source[0], source[1], target[0], target[1], int(limit)
    )


def optimal_action(
    graph: LabyrinthGraph,
    pos: Position,
    target: Position,
    blocked: Iterable[Position] = (),
) -> "Action":
    """The distance-reducing action at pos, ties broken up, down, right, left."""
    if pos == target:
        raise AtTarget(f"already at {target}")
    dmap = distance_map(graph, target, blocked)
    return descend(graph, dmap, pos, blocked)


def descend(
    graph: LabyrinthGraph,
    dmap: DistanceMap,
    pos: Position,
    blocked: Iterable[Position] = (),
) -> "Action":
    """One greedy step down a precomputed distance map."""
    from .env import Action

    here = dmap[pos]
    if math.isinf(here):
        raise NoPath(f"{pos} cannot reach {dmap.target}")
    blocked = frozenset(blocked)
    for action in Action:
        if graph.blocked(pos, action):
            continue
        r, c = pos
        dr, dc = DELTAS[action]
        nxt = (r + dr, c + dc)
        if nxt in blocked:
            continue
        if dmap[nxt] == here - 1:
            return action
    raise NoPath(f"no descending move out of {pos}")


def path_actions(path: Path) -> list:
    """Actions that move along consecutive positions of a path."""
    from .env import Action

    actions = []
    for (r0, c0), (r1, c1) in zip(path, path[1:]):
        delta = (r1 - r0, c1 - c0)
        actions.append(Action(DELTAS.index(delta)))
    return actions
