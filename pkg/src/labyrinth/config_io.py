"""Parser and serializer for the .labyrinth configuration language.

A document is three header flags, then a grid block:

    key_and_lock: False
    icy_floor: False
    occlusion: False
    labyrinth:
    -------------
    |   |     E |
    |   +   + - |
    |           |
    |   + - +   |
    | S |       |
    -------------
    end

For a width-w, height-h maze the grid block is 2h+1 lines of 4w+1 characters.
The tile symbol of cell (r, c) sits at column 4c+2 of line 2r+1; a vertical
wall between (r, c) and (r, c+1) is a pipe at column 4(c+1) of that line; a
horizontal wall between rows r and r+1 is any dash within columns
[4c+1, 4c+3] of line 2(r+1).  Junction characters at columns 4c of wall lines
carry no information.  Text between triple-quote pairs is comment.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Optional, TYPE_CHECKING

import numpy as np

from .errors import (
    BadGeometry,
    BadHeader,
    BadTiles,
    MutualExclusion,
)
from .grid_graph import Dims, LabyrinthGraph, Position
from .tasks import Setting, TaskSpec

if TYPE_CHECKING:
    from .env import EnvConfig

HEADER_KEYS = ("key_and_lock", "icy_floor", "occlusion")
TILE_SYMBOLS = " SEKDI"

_HEADER_RE = re.compile(r"^(\w+):\s*(\S+)$")


@dataclass(frozen=True)
class ConfigDocument:
    """One parsed or to-be-serialized configuration."""

    graph: LabyrinthGraph
    start: Position
    goal: Position
    key: Optional[Position] = None
    door: Optional[Position] = None
    ice: frozenset = frozenset()
    key_and_lock: bool = False
    icy_floor: bool = False
    occlusion: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "ice", frozenset(self.ice))
        if sum((self.key_and_lock, self.icy_floor, self.occlusion)) > 1:
            raise MutualExclusion("key_and_lock, icy_floor, and occlusion are mutually exclusive")
        if self.start == self.goal:
            raise ValueError("start and goal occupy the same tile")
        if not self.key_and_lock and (self.key is not None or self.door is not None):
            raise ValueError("key and door require key_and_lock")
        if not self.icy_floor and self.ice:
            raise ValueError("ice tiles require icy_floor")
        dims = self.graph.dims
        for pos in self._marked():
            if not dims.contains(pos):
                raise ValueError(f"marking {pos} out of bounds for {dims.width}x{dims.height}")

    def _marked(self):
        yield self.start
        yield self.goal
        if self.key is not None:
            yield self.key
        if self.door is not None:
            yield self.door
        yield from sorted(self.ice)

    @property
    def setting(self) -> Setting:
        if self.key_and_lock:
            return Setting.key_door
        if self.icy_floor:
            return Setting.ice
        if self.occlusion:
            return Setting.occluded
        return Setting.navigation

    @classmethod
    def from_task(cls, graph: LabyrinthGraph, task: TaskSpec) -> "ConfigDocument":
        return cls(
            graph=graph,
            start=task.start,
            goal=task.goal,
            key=task.key,
            door=task.door,
            ice=task.ice,
            key_and_lock=task.setting is Setting.key_door,
            icy_floor=task.setting is Setting.ice,
            occlusion=task.setting is Setting.occluded,
        )

    def to_task(self) -> TaskSpec:
        return TaskSpec(
            setting=self.setting,
            start=self.start,
            goal=self.goal,
            key=self.key,
            door=self.door,
            ice=self.ice,
        )


def _strip_comments(text: str) -> list:
    """Split into (lineno, text) pairs with triple-quoted spans removed."""
    out = []
    in_comment = False
    for lineno, line in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        kept = []
        rest = line
        while rest:
            idx = rest.find('"""')
            if in_comment:
                if idx < 0:
                    rest = ""
                else:
                    rest = rest[idx + 3 :]
                    in_comment = False
            else:
                if idx < 0:
                    kept.append(rest)
                    rest = ""
                else:
                    kept.append(rest[:idx])
                    rest = rest[idx + 3 :]
                    in_comment = True
        out.append((lineno, "".join(kept).rstrip()))
    return out


def _dedent(lines: list) -> list:
    indents = [len(text) - len(text.lstrip(" ")) for _, text in lines if text]
    cut = min(indents, default=0)
    return [(n, text[cut:] if text else text) for n, text in lines]


def parse(text: str) -> ConfigDocument:
    """Parse configuration text; errors carry 1-based line numbers."""
    lines = [(n, t) for n, t in _dedent(_strip_comments(text)) if t]
    flags = {}
    flag_lines = {}
    i = 0
    while i < len(lines) and lines[i][1] != "labyrinth:":
        lineno, line = lines[i]
        match = _HEADER_RE.match(line)
        if not match:
            # a line that is not even header-shaped means the block structure
            # is off (usually a missing 'labyrinth:' marker)
            raise BadGeometry(f"expected a header or 'labyrinth:', got {line!r}", line=lineno)
        key, value = match.groups()
        if key not in HEADER_KEYS:
            raise BadHeader(f"unknown header key {key!r}", line=lineno)
        if key in flags:
            raise BadHeader(f"duplicate header key {key!r}", line=lineno)
        if value not in ("True", "False"):
            raise BadHeader(f"{key} must be True or False, got {value!r}", line=lineno)
        flags[key] = value == "True"
        flag_lines[key] = lineno
        i += 1
    missing = [key for key in HEADER_KEYS if key not in flags]
    if missing:
        raise BadHeader(f"missing header key(s): {', '.join(missing)}")
    if i == len(lines):
        raise BadGeometry("missing 'labyrinth:' block")
    if sum(flags.values()) > 1:
        culprit = max((flag_lines[k] for k in HEADER_KEYS if flags[k]))
        raise MutualExclusion(
            "at most one of key_and_lock, icy_floor, occlusion may be True", line=culprit
        )
    grid_start = i + 1
    j = grid_start
    while j < len(lines) and lines[j][1] != "end":
        j += 1
    if j == len(lines):
        raise BadGeometry("missing 'end' after the grid block", line=lines[-1][0])
    if j + 1 < len(lines):
        raise BadGeometry("unexpected content after 'end'", line=lines[j + 1][0])
    grid = lines[grid_start:j]
    graph, markings = _parse_grid(grid)
    return _document_from_markings(graph, markings, flags)


def _parse_grid(grid: list):
    if len(grid) < 3 or len(grid) % 2 == 0:
        lineno = grid[0][0] if grid else None
        raise BadGeometry(f"grid block needs an odd number of lines >= 3, got {len(grid)}", line=lineno)
    first_no, first = grid[0]
    if (len(first) - 1) % 4 != 0 or len(first) < 5:
        raise BadGeometry(f"grid lines must be 4*width+1 characters, got {len(first)}", line=first_no)
    width = (len(first) - 1) // 4
    height = (len(grid) - 1) // 2
    dims = Dims(width, height)
    vwalls = np.zeros((height, width - 1), dtype=np.uint8)
    hwalls = np.zeros((height - 1, width), dtype=np.uint8)
    markings = {}

    for index, (lineno, line) in enumerate(grid):
        if len(line) != 4 * width + 1:
            raise BadGeometry(
                f"expected {4 * width + 1} characters, got {len(line)}", line=lineno
            )
        if index == 0 or index == len(grid) - 1:
            if set(line) != {"-"}:
                raise BadGeometry("border line must be all dashes", line=lineno)
            continue
        if line[0] != "|" or line[-1] != "|":
            raise BadGeometry("interior lines must start and end with '|'", line=lineno)
        r = (index - 1) // 2
        if index % 2 == 1:
            _parse_tile_line(line, lineno, r, width, vwalls, markings)
        else:
            _parse_wall_line(line, lineno, r, width, hwalls)

    graph = LabyrinthGraph.from_arrays(dims, vwalls, hwalls)
    return graph, markings


def _parse_tile_line(line: str, lineno: int, r: int, width: int, vwalls, markings) -> None:
    for c in range(width):
        for col in (4 * c + 1, 4 * c + 3):
            if line[col] != " ":
                raise BadGeometry(f"column {col} must be a space, got {line[col]!r}", line=lineno)
        symbol = line[4 * c + 2]
        if symbol not in TILE_SYMBOLS:
            raise BadTiles(f"unknown tile symbol {symbol!r}", line=lineno)
        if symbol != " ":
            markings.setdefault(symbol, []).append(((r, c), lineno))
        if c < width - 1:
            sep = line[4 * (c + 1)]
            if sep == "|":
                vwalls[r, c] = 1
            elif sep != " ":
                raise BadGeometry(f"cell separator must be '|' or space, got {sep!r}", line=lineno)


def _parse_wall_line(line: str, lineno: int, r: int, width: int, hwalls) -> None:
    for c in range(width):
        span = line[4 * c + 1 : 4 * c + 4]
        bad = set(span) - {" ", "-"}
        if bad:
            raise BadGeometry(f"wall span may hold only dashes and spaces, got {span!r}", line=lineno)
        if "-" in span:
            hwalls[r, c] = 1
        if c < width - 1:
            junction = line[4 * (c + 1)]
            if junction not in "+ ":
                raise BadGeometry(f"junction must be '+' or space, got {junction!r}", line=lineno)


def _document_from_markings(graph: LabyrinthGraph, markings: dict, flags: dict) -> ConfigDocument:
    def sole(symbol: str) -> tuple:
        entries = markings.get(symbol, [])
        if len(entries) != 1:
            count = len(entries)
            lineno = entries[1][1] if count > 1 else None
            raise BadTiles(f"expected exactly one {symbol!r} tile, found {count}", line=lineno)
        return entries[0][0]

    start = sole("S")
    goal = sole("E")
    key = door = None
    ice: frozenset = frozenset()
    if flags["key_and_lock"]:
        key = sole("K")
        door = sole("D")
    else:
        _warn_ignored(markings, "K", "key_and_lock is False")
        _warn_ignored(markings, "D", "key_and_lock is False")
    if flags["icy_floor"]:
        ice = frozenset(pos for pos, _ in markings.get("I", []))
    else:
        _warn_ignored(markings, "I", "icy_floor is False")
    return ConfigDocument(
        graph=graph,
        start=start,
        goal=goal,
        key=key,
        door=door,
        ice=ice,
        key_and_lock=flags["key_and_lock"],
        icy_floor=flags["icy_floor"],
        occlusion=flags["occlusion"],
    )


def _warn_ignored(markings: dict, symbol: str, reason: str) -> None:
    for _, lineno in markings.get(symbol, []):
        warnings.warn(f"line {lineno}: {symbol!r} marking ignored ({reason})", stacklevel=4)


def _junction_mark(graph: LabyrinthGraph, r: int, j: int) -> bool:
    # '+' exactly where one of the four incident interior walls exists.
    vwalls, hwalls = graph.vwalls, graph.hwalls
    return bool(
        vwalls[r, j - 1] or vwalls[r + 1, j - 1] or hwalls[r, j - 1] or hwalls[r, j]
    )


def _grid_lines(doc: ConfigDocument) -> list:
    graph = doc.graph
    width, height = graph.dims.width, graph.dims.height
    glyphs = {doc.start: "S", doc.goal: "E"}
    if doc.key_and_lock:
        glyphs[doc.key] = "K"
        glyphs[doc.door] = "D"
    if doc.icy_floor:
        for pos in doc.ice:
            glyphs[pos] = "I"

    border = "-" * (4 * width + 1)
    lines = [border]
    for r in range(height):
        parts = ["|"]
        for c in range(width):
            parts.append(f" {glyphs.get((r, c), ' ')} ")
            if c < width - 1:
                parts.append("|" if graph.vwalls[r, c] else " ")
        parts.append("|")
        lines.append("".join(parts))
        if r < height - 1:
            parts = ["|"]
            for c in range(width):
                parts.append(" - " if graph.hwalls[r, c] else "   ")
                if c < width - 1:
                    parts.append("+" if _junction_mark(graph, r, c + 1) else " ")
            parts.append("|")
            lines.append("".join(parts))
    lines.append(border)
    return lines


def serialize(doc: ConfigDocument) -> str:
    """Emit the canonical text: fixed header order, centered dashes, minimal '+'."""
    lines = [f"{key}: {getattr(doc, key)}" for key in HEADER_KEYS]
    lines.append("labyrinth:")
    lines.extend(_grid_lines(doc))
    lines.append("end")
    return "\n".join(lines) + "\n"


def save(path, source) -> None:
    """Write the canonical serialization of an env, config, or document."""
    doc = _as_document(source)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(doc))


def load(path) -> "EnvConfig":
    """Read a .labyrinth file into a ready-to-run EnvConfig."""
    from .env import EnvConfig

    with open(path, "r", encoding="utf-8") as handle:
        doc = parse(handle.read())
    return EnvConfig.create(doc.graph, doc.to_task())


def _as_document(source) -> ConfigDocument:
    if isinstance(source, ConfigDocument):
        return source
    config = getattr(source, "config", source)
    return ConfigDocument.from_task(config.graph, config.task)
