"""Maze structure: a grid graph where tiles are nodes and walls are removed edges.

Coordinates are (row, col) with row 0 at the top, so the lower-left corner of
a maze is (height - 1, 0) and the upper-right corner is (0, width - 1).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TYPE_CHECKING

import numpy as np

from . import _kernels
from ._rng import RandomStream
from .errors import DisconnectedStructure, Unsatisfiable

if TYPE_CHECKING:
    from .tasks import TaskSpec

Position = tuple[int, int]
Seed = int

# Row/col deltas in action order: up, down, right, left.
DELTAS: tuple[tuple[int, int], ...] = ((-1, 0), (1, 0), (0, 1), (0, -1))


@dataclass(frozen=True)
class Dims:
    """Maze dimensions in tiles."""

    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"dims must be at least 1x1, got {self.width}x{self.height}")

    def __iter__(self) -> Iterator[int]:
        return iter((self.width, self.height))

    @property
    def tiles(self) -> int:
        return self.width * self.height

    def contains(self, pos: Position) -> bool:
        r, c = pos
        return 0 <= r < self.height and 0 <= c < self.width

    def positions(self) -> Iterator[Position]:
        """All tiles in row-major order."""
        for r in range(self.height):
            for c in range(self.width):
                yield (r, c)


def as_dims(value) -> Dims:
    """Coerce a Dims or a (width, height) pair into Dims."""
    if isinstance(value, Dims):
        return value
    w, h = value
    return Dims(int(w), int(h))


def _normalize_wall(a: Position, b: Position) -> tuple[Position, Position]:
    return (a, b) if a <= b else (b, a)


class LabyrinthGraph:
    """Immutable maze graph over a tile grid.

    Walls are held as two bit arrays: vwalls[r, c] blocks (r, c)-(r, c+1) and
    hwalls[r, c] blocks (r, c)-(r+1, c).  The border is implicitly walled and
    never stored.  Construction rejects disconnected structures, so every
    instance satisfies the connectivity invariant.
    """

    __slots__ = ("dims", "_vwalls", "_hwalls")

    def __init__(self, dims, walls: Iterable[tuple[Position, Position]] = ()):
        dims = as_dims(dims)
        vwalls = np.zeros((dims.height, dims.width - 1), dtype=np.uint8)
        hwalls = np.zeros((dims.height - 1, dims.width), dtype=np.uint8)
        for pair in walls:
            a, b = _normalize_wall(*pair)
            if not (dims.contains(a) and dims.contains(b)):
                raise ValueError(f"wall {pair} out of bounds for {dims.width}x{dims.height}")
            (ra, ca), (rb, cb) = a, b
            if ra == rb and cb == ca + 1:
                vwalls[ra, ca] = 1
            elif ca == cb and rb == ra + 1:
                hwalls[ra, ca] = 1
            else:
                raise ValueError(f"wall {pair} does not join adjacent tiles")
        self._finish_init(dims, vwalls, hwalls)

    def _finish_init(self, dims: Dims, vwalls: np.ndarray, hwalls: np.ndarray) -> None:
        vwalls.setflags(write=False)
        hwalls.setflags(write=False)
        self.dims = dims
        self._vwalls = vwalls
        self._hwalls = hwalls
        dist, _ = _kernels.bfs_tree(vwalls, hwalls, 0, 0)
        reached = int((dist >= 0).sum())
        if reached != dims.tiles:
            raise DisconnectedStructure(
                f"structure leaves {dims.tiles - reached} tile(s) unreachable"
            )

    @classmethod
    def from_arrays(cls, dims, vwalls: np.ndarray, hwalls: np.ndarray) -> "LabyrinthGraph":
        """Build from wall bit arrays of shapes (h, w-1) and (h-1, w)."""
        dims = as_dims(dims)
        vwalls = np.ascontiguousarray(vwalls, dtype=np.uint8).copy()
        hwalls = np.ascontiguousarray(hwalls, dtype=np.uint8).copy()
        if vwalls.shape != (dims.height, dims.width - 1):
            raise ValueError(f"vwalls shape {vwalls.shape} does not match {dims}")
        if hwalls.shape != (dims.height - 1, dims.width):
            raise ValueError(f"hwalls shape {hwalls.shape} does not match {dims}")
        graph = cls.__new__(cls)
        graph._finish_init(dims, vwalls, hwalls)
        return graph

    @property
    def vwalls(self) -> np.ndarray:
        """Read-only (height, width-1) array; 1 blocks (r, c)-(r, c+1)."""
        return self._vwalls

    @property
    def hwalls(self) -> np.ndarray:
        """Read-only (height-1, width) array; 1 blocks (r, c)-(r+1, c)."""
        return self._hwalls

    @property
    def walls(self) -> frozenset:
        """Interior walls as normalized position pairs."""
        pairs = []
        for r, c in zip(*np.nonzero(self._vwalls)):
            pairs.append(((int(r), int(c)), (int(r), int(c) + 1)))
        for r, c in zip(*np.nonzero(self._hwalls)):
            pairs.append(((int(r), int(c)), (int(r) + 1, int(c))))
        return frozenset(pairs)

    def wall_count(self) -> int:
        return int(self._vwalls.sum()) + int(self._hwalls.sum())

    def has_wall(self, a: Position, b: Position) -> bool:
        (ra, ca), (rb, cb) = _normalize_wall(a, b)
        if ra == rb and cb == ca + 1:
            return bool(self._vwalls[ra, ca])
        if ca == cb and rb == ra + 1:
            return bool(self._hwalls[ra, ca])
        raise ValueError(f"tiles {a} and {b} are not adjacent")

    def blocked(self, pos: Position, action: int) -> bool:
        """True when one step from pos in the action's direction hits border or wall."""
        r, c = pos
        dr, dc = DELTAS[action]
        nr, nc = r + dr, c + dc
        if not self.dims.contains((nr, nc)):
            return True
        return self.has_wall(pos, (nr, nc))

    def open_neighbors(self, pos: Position) -> list:
        """Reachable adjacent tiles in up, down, right, left order."""
        r, c = pos
        out = []
        for action, (dr, dc) in enumerate(DELTAS):
            if not self.blocked(pos, action):
                out.append((r + dr, c + dc))
        return out

    def without_wall(self, a: Position, b: Position) -> "LabyrinthGraph":
        """Copy of this graph with one wall removed."""
        if not self.has_wall(a, b):
            raise ValueError(f"no wall between {a} and {b}")
        (ra, ca), (rb, cb) = _normalize_wall(a, b)
        vwalls = self._vwalls.copy()
        hwalls = self._hwalls.copy()
        if ra == rb:
            vwalls[ra, ca] = 0
        else:
            hwalls[ra, ca] = 0
        return LabyrinthGraph.from_arrays(self.dims, vwalls, hwalls)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabyrinthGraph):
            return NotImplemented
        return (
            self.dims == other.dims
            and np.array_equal(self._vwalls, other._vwalls)
            and np.array_equal(self._hwalls, other._hwalls)
        )

    def __hash__(self) -> int:
        return hash((self.dims, self._vwalls.tobytes(), self._hwalls.tobytes()))

    def __repr__(self) -> str:
        return f"LabyrinthGraph({self.dims.width}x{self.dims.height}, {self.wall_count()} walls)"


def generate_perfect(dims, seed: Seed) -> LabyrinthGraph:
    """Generate a perfect maze (spanning tree) by seeded depth-first carving.

    Deterministic in (dims, seed): the same pair always yields the same walls.
    """
    dims = as_dims(dims)
    vwalls, hwalls = _kernels.generate_perfect(dims.width, dims.height, int(seed))
    return LabyrinthGraph.from_arrays(dims, vwalls, hwalls)


def braid(
    graph: LabyrinthGraph,
    predicate: Callable[[LabyrinthGraph], bool],
    seed: Seed,
) -> LabyrinthGraph:
    """Remove seeded-random walls one at a time until the predicate holds.

    Wall removal only adds edges, so connectivity is preserved.  Raises
    Unsatisfiable when the predicate stays false even with every interior
    wall gone.
    """
    if predicate(graph):
        return graph
    walls = sorted(graph.walls)
    RandomStream(seed).shuffle(walls)
    current = graph
    for a, b in walls:
        current = current.without_wall(a, b)
        if predicate(current):
            return current
    raise Unsatisfiable("condition still false with all interior walls removed")


def canonical_text(graph: LabyrinthGraph, task: "TaskSpec") -> str:
    """Canonical configuration-language serialization of one structure.

    Two (graph, task) pairs are structurally identical exactly when these
    texts are byte-identical, which is what makes the digest trustworthy.
    """
    from .config_io import ConfigDocument, serialize

    return serialize(ConfigDocument.from_task(graph, task))


def structure_hash(graph: LabyrinthGraph, task: "TaskSpec") -> str:
    """SHA-256 hex digest of the canonical text.

    Uniqueness checks must still compare canonical texts whenever two digests
    collide; see datagen.UniquenessRegistry.
    """
    return hashlib.sha256(canonical_text(graph, task).encode("utf-8")).hexdigest()
