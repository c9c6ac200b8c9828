"""Pure-Python kernels: the fallback backend.

Every function here has a compiled twin in ``_core.pyx`` that must produce
bit-identical output.  Walls travel as two uint8 arrays:

  vwalls[r, c] == 1  ->  wall between tiles (r, c) and (r, c+1), shape (h, w-1)
  hwalls[r, c] == 1  ->  wall between tiles (r, c) and (r+1, c), shape (h-1, w)

Cells are flat indices ``r * width + c``.  Direction order is the global
tie-break order: up, down, right, left.
"""

from __future__ import annotations

import numpy as np

from .._rng import RandomStream

BACKEND_NAME = "pure"

# Row/col deltas in the fixed direction order up, down, right, left.
_DR = (-1, 1, 0, 0)
_DC = (0, 0, 1, -1)


def _blocked(vwalls, hwalls, r: int, c: int, d: int, width: int, height: int) -> bool:
    """True when moving from (r, c) one step in direction d hits border or wall."""
    nr = r + _DR[d]
    nc = c + _DC[d]
    if nr < 0 or nr >= height or nc < 0 or nc >= width:
        return True
    if d == 0:  # up
        return hwalls[nr, c] != 0
    if d == 1:  # down
        return hwalls[r, c] != 0
    if d == 2:  # right
        return vwalls[r, c] != 0
    return vwalls[r, nc] != 0  # left


def generate_perfect(width: int, height: int, seed: int):
    """Carve a spanning tree by randomized depth-first search.

    Returns (vwalls, hwalls) with every non-tree adjacency walled.  The start
    tile and each visit's direction order come from the seeded stream, so the
    result is a pure function of (width, height, seed).
    """
    rng = RandomStream(seed)
    vwalls = np.ones((height, max(width - 1, 0)), dtype=np.uint8)
    hwalls = np.ones((max(height - 1, 0), width), dtype=np.uint8)
    n = width * height
    visited = np.zeros(n, dtype=np.uint8)

    start = rng.below(n)
    visited[start] = 1
    # Each frame: [cell, d0, d1, d2, d3, next_index]
    stack = [[start, 0, 1, 2, 3, 0]]
    _shuffle_dirs(rng, stack[0])
    while stack:
        frame = stack[-1]
        cell = frame[0]
        r, c = divmod(cell, width)
        advanced = False
        while frame[5] < 4:
            d = frame[1 + frame[5]]
            frame[5] += 1
            # Walls are all up during carving; only the border limits moves.
            nr = r + _DR[d]
            nc = c + _DC[d]
            if nr < 0 or nr >= height or nc < 0 or nc >= width:
                continue
            nxt = nr * width + nc
            if visited[nxt]:
                continue
            _remove_wall(vwalls, hwalls, r, c, d)
            visited[nxt] = 1
            new_frame = [nxt, 0, 1, 2, 3, 0]
            _shuffle_dirs(rng, new_frame)
            stack.append(new_frame)
            advanced = True
            break
        if not advanced and frame[5] >= 4:
            stack.pop()
    return vwalls, hwalls


def _shuffle_dirs(rng: RandomStream, frame: list) -> None:
    # Fisher-Yates over frame slots 1..4, mirrored exactly in the compiled core.
    for i in range(3, 0, -1):
        j = rng.below(i + 1)
        frame[1 + i], frame[1 + j] = frame[1 + j], frame[1 + i]


def _remove_wall(vwalls, hwalls, r: int, c: int, d: int) -> None:
    if d == 0:
        hwalls[r - 1, c] = 0
    elif d == 1:
        hwalls[r, c] = 0
    elif d == 2:
        vwalls[r, c] = 0
    else:
        vwalls[r, c - 1] = 0


def bfs_tree(vwalls, hwalls, source_r: int, source_c: int):
    """Breadth-first distances and discovery parents from one source tile.

    Returns (dist, parent) as int32 arrays of shape (height, width); -1 marks
    unreachable tiles (and the source's parent).  Neighbors are scanned in the
    fixed direction order, which pins the discovery tree and therefore every
    tie-break that downstream code derives from it.
    """
    height = vwalls.shape[0]
    width = hwalls.shape[1]
    n = width * height
    dist = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    head = 0
    tail = 0
    src = source_r * width + source_c
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        cell = queue[head]
        head += 1
        r, c = divmod(int(cell), width)
        base = dist[cell] + 1
        for d in range(4):
            if _blocked(vwalls, hwalls, r, c, d, width, height):
                continue
            nxt = (r + _DR[d]) * width + (c + _DC[d])
            if dist[nxt] < 0:
                dist[nxt] = base
                parent[nxt] = cell
                queue[tail] = nxt
                tail += 1
    return dist.reshape(height, width), parent.reshape(height, width)


def enumerate_paths(vwalls, hwalls, sr: int, sc: int, tr: int, tc: int, cap: int):
    """All simple paths from source to target in depth-first emission order.

    Returns (paths, hit_cap) where paths is a list of int32 flat-index arrays.
    Enumeration stops after emitting cap + 1 paths so the caller can detect
    overflow without unbounded memory.
    """
    height = vwalls.shape[0]
    width = hwalls.shape[1]
    src = sr * width + sc
    tgt = tr * width + tc
    on_path = np.zeros(width * height, dtype=np.uint8)
    path = [src]
    next_dir = [0]
    on_path[src] = 1
    paths: list[np.ndarray] = []
    hit_cap = False
    while path:
        cell = path[-1]
        if cell == tgt:
            paths.append(np.asarray(path, dtype=np.int32))
            if len(paths) > cap:
                hit_cap = True
                break
            on_path[cell] = 0
            path.pop()
            next_dir.pop()
            continue
        d = next_dir[-1]
        if d == 4:
            on_path[cell] = 0
            path.pop()
            next_dir.pop()
            continue
        next_dir[-1] += 1
        r, c = divmod(cell, width)
        if _blocked(vwalls, hwalls, r, c, d, width, height):
            continue
        nxt = (r + _DR[d]) * width + (c + _DC[d])
        if on_path[nxt]:
            continue
        on_path[nxt] = 1
        path.append(nxt)
        next_dir.append(0)
    return paths, hit_cap


def count_paths_up_to(vwalls, hwalls, sr: int, sc: int, tr: int, tc: int, limit: int) -> int:
    """Count simple source-to-target paths, stopping early at limit."""
    height = vwalls.shape[0]
    width = hwalls.shape[1]
    src = sr * width + sc
    tgt = tr * width + tc
    on_path = np.zeros(width * height, dtype=np.uint8)
    path = [src]
    next_dir = [0]
    on_path[src] = 1
    count = 0
    while path:
        cell = path[-1]
        if cell == tgt:
            count += 1
            if count >= limit:
                break
            on_path[cell] = 0
            path.pop()
            next_dir.pop()
            continue
        d = next_dir[-1]
        if d == 4:
            on_path[cell] = 0
            path.pop()
            next_dir.pop()
            continue
        next_dir[-1] += 1
        r, c = divmod(cell, width)
        if _blocked(vwalls, hwalls, r, c, d, width, height):
            continue
        nxt = (r + _DR[d]) * width + (c + _DC[d])
        if on_path[nxt]:
            continue
        on_path[nxt] = 1
        path.append(nxt)
        next_dir.append(0)
    return count
