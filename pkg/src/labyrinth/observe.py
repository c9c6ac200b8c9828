"""Observation encodings: full image, occluded image, and flat vector.

Images are square RGB rasters (default 600x600) regardless of maze shape, so
non-square mazes get anisotropic cells.  Cell (r, c) covers the pixel block
[r*size//height, (r+1)*size//height) x [c*size//width, (c+1)*size//width).
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .errors import SizeTooSmall
from .tasks import Setting

if TYPE_CHECKING:
    from .env import EnvConfig, EnvState

DEFAULT_SIZE = 600

# Fixed palette; all nine colors pairwise distinct.
FLOOR = (255, 255, 255)
WALL = (0, 0, 0)
START = (255, 0, 0)
GOAL = (0, 0, 255)
AGENT = (0, 255, 0)
OCCLUDED = (128, 128, 128)
KEY = (255, 255, 0)
DOOR = (139, 69, 19)
ICE = (170, 220, 255)

PALETTE = {
    "floor": FLOOR,
    "wall": WALL,
    "start": START,
    "goal": GOAL,
    "agent": AGENT,
    "occluded": OCCLUDED,
    "key": KEY,
    "door": DOOR,
    "ice": ICE,
}

OCCLUSION_RADIUS = 1  # Chebyshev radius of the visible window around the agent


def wall_thickness(size: int) -> int:
    return max(1, size // 200)


def _check_size(config: "EnvConfig", size: int) -> None:
    dims = config.graph.dims
    least = 8 * max(dims.width, dims.height)
    if size < least:
        raise SizeTooSmall(f"size {size} below minimum {least} for {dims.width}x{dims.height}")


def _edges(count: int, size: int) -> list:
    return [i * size // count for i in range(count + 1)]


def _tile_colors(config: "EnvConfig", state: "EnvState") -> dict:
    task = config.task
    colors = {task.start: START, task.goal: GOAL}
    if task.setting is Setting.key_door:
        colors[task.door] = DOOR
        if not state.has_key:
            colors[task.key] = KEY
    if task.setting is Setting.ice:
        for pos in task.ice:
            colors[pos] = ICE
    return colors


def _paint_walls(canvas: np.ndarray, config: "EnvConfig", size: int) -> None:
    graph = config.graph
    width, height = graph.dims.width, graph.dims.height
    xs = _edges(width, size)
    ys = _edges(height, size)
    t = wall_thickness(size)
    half = t // 2
    canvas[:t, :] = WALL
    canvas[size - t :, :] = WALL
    canvas[:, :t] = WALL
    canvas[:, size - t :] = WALL
    for r in range(height):
        for c in range(width - 1):
            if graph.vwalls[r, c]:
                x = xs[c + 1] - half
                canvas[ys[r] : ys[r + 1], max(0, x) : min(size, x + t)] = WALL
    for r in range(height - 1):
        for c in range(width):
            if graph.hwalls[r, c]:
                y = ys[r + 1] - half
                canvas[max(0, y) : min(size, y + t), xs[c] : xs[c + 1]] = WALL


def _paint_agent(canvas: np.ndarray, config: "EnvConfig", state: "EnvState", size: int) -> None:
    dims = config.graph.dims
    xs = _edges(dims.width, size)
    ys = _edges(dims.height, size)
    r, c = state.agent
    x0, x1 = xs[c], xs[c + 1]
    y0, y1 = ys[r], ys[r + 1]
    # Diamond inscribed in the central 60% of the cell.
    cx = (x0 + x1) / 2
    cy = (y0 + y1) / 2
    rx = 0.3 * (x1 - x0)
    ry = 0.3 * (y1 - y0)
    yy, xx = np.ogrid[y0:y1, x0:x1]
    mask = np.abs(xx + 0.5 - cx) / rx + np.abs(yy + 0.5 - cy) / ry <= 1.0
    block = canvas[y0:y1, x0:x1]
    block[mask] = AGENT


def render_full(
    config: "EnvConfig",
    state: "EnvState",
    size: int = DEFAULT_SIZE,
    draw_agent: bool = True,
) -> np.ndarray:
    """Fully observable RGB image of shape (size, size, 3), dtype uint8."""
    _check_size(config, size)
    dims = config.graph.dims
    xs = _edges(dims.width, size)
    ys = _edges(dims.height, size)
    canvas = np.empty((size, size, 3), dtype=np.uint8)
    canvas[:] = FLOOR
    for (r, c), color in _tile_colors(config, state).items():
        canvas[ys[r] : ys[r + 1], xs[c] : xs[c + 1]] = color
    _paint_walls(canvas, config, size)
    if draw_agent:
        _paint_agent(canvas, config, state, size)
    return canvas


def visible_tiles(config: "EnvConfig", state: "EnvState") -> set:
    """Tiles shown under occlusion: the window around the agent plus start and goal."""
    dims = config.graph.dims
    r, c = state.agent
    visible = {
        (rr, cc)
        for rr in range(r - OCCLUSION_RADIUS, r + OCCLUSION_RADIUS + 1)
        for cc in range(c - OCCLUSION_RADIUS, c + OCCLUSION_RADIUS + 1)
        if dims.contains((rr, cc))
    }
    visible.add(config.task.start)
    visible.add(config.task.goal)
    return visible


def render_occluded(
    config: "EnvConfig",
    state: "EnvState",
    size: int = DEFAULT_SIZE,
    draw_agent: bool = True,
) -> np.ndarray:
    """Like render_full, but everything away from the agent is flat gray.

    The visible window keeps its incident walls, and the start and goal tiles
    are never obscured.
    """
    full = render_full(config, state, size, draw_agent)
    dims = config.graph.dims
    xs = _edges(dims.width, size)
    ys = _edges(dims.height, size)
    t = wall_thickness(size)
    mask = np.zeros((size, size), dtype=bool)
    for r, c in visible_tiles(config, state):
        y0 = max(0, ys[r] - t)
        y1 = min(size, ys[r + 1] + t)
        x0 = max(0, xs[c] - t)
        x1 = min(size, xs[c + 1] + t)
        mask[y0:y1, x0:x1] = True
    full[~mask] = OCCLUDED
    return full


def vector_length(dims, setting: Setting) -> int:
    """Length of the flat encoding for a maze shape and setting."""
    width, height = dims.width, dims.height
    base = 6 + height * (width - 1) + (height - 1) * width
    if setting is Setting.key_door:
        return base + 5
    if setting is Setting.ice:
        return base + width * height
    return base


def encode_vector(config: "EnvConfig", state: "EnvState") -> np.ndarray:
    """Flat int32 encoding: positions, wall bits, then setting extras.

    Layout: [agent_r, agent_c, start_r, start_c, goal_r, goal_c], vertical
    wall bits row-major, horizontal wall bits row-major, then for key_door
    [key_r, key_c, door_r, door_c, has_key] or for ice a row-major tile
    bitmask.
    """
    task = config.task
    parts = [
        np.array(
            [*state.agent, *task.start, *task.goal],
            dtype=np.int32,
        ),
        config.graph.vwalls.reshape(-1).astype(np.int32),
        config.graph.hwalls.reshape(-1).astype(np.int32),
    ]
    if task.setting is Setting.key_door:
        parts.append(
            np.array([*task.key, *task.door, int(state.has_key)], dtype=np.int32)
        )
    elif task.setting is Setting.ice:
        dims = config.graph.dims
        mask = np.zeros(dims.tiles, dtype=np.int32)
        for r, c in task.ice:
            mask[r * dims.width + c] = 1
        parts.append(mask)
    return np.concatenate(parts)


def decode_vector(dims, setting: Setting, vector: np.ndarray) -> dict:
    """Inverse of encode_vector, for round-trip checks and debugging."""
    width, height = dims.width, dims.height
    expected = vector_length(dims, setting)
    if vector.shape != (expected,):
        raise ValueError(f"expected vector of length {expected}, got {vector.shape}")
    pos = [int(v) for v in vector[:6]]
    n_v = height * (width - 1)
    n_h = (height - 1) * width
    vwalls = vector[6 : 6 + n_v].reshape(height, width - 1).astype(np.uint8)
    hwalls = vector[6 + n_v : 6 + n_v + n_h].reshape(height - 1, width).astype(np.uint8)
    out = {
        "agent": (pos[0], pos[1]),
        "start": (pos[2], pos[3]),
        "goal": (pos[4], pos[5]),
        "vwalls": vwalls,
        "hwalls": hwalls,
    }
    extra = vector[6 + n_v + n_h :]
    if setting is Setting.key_door:
        out["key"] = (int(extra[0]), int(extra[1]))
        out["door"] = (int(extra[2]), int(extra[3]))
        out["has_key"] = bool(extra[4])
    elif setting is Setting.ice:
        out["ice"] = frozenset(
            (i // width, i % width) for i in range(width * height) if extra[i]
        )
    return out
