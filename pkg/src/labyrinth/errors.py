"""Exception hierarchy for the labyrinth toolkit.

Every domain failure raises a subclass of :class:`LabyrinthError` so callers
(and the CLI) can distinguish data problems from programming errors.
"""

from __future__ import annotations


class LabyrinthError(Exception):
    """Base class for all domain errors raised by this package."""


class Unsatisfiable(LabyrinthError):
    """A requested condition cannot hold for the given structure or dims."""


class Degenerate(LabyrinthError):
    """The maze is too small for the requested placement."""


class NoPath(LabyrinthError):
    """No route exists between the two tiles."""


class PathCapExceeded(LabyrinthError):
    """Path enumeration found more routes than the configured cap."""


class AtTarget(LabyrinthError):
    """No action can be chosen because the position already is the target."""


class NoSharedTile(LabyrinthError):
    """The routes between start and goal have no common interior tile."""


class NoKeyCandidate(LabyrinthError):
    """No tile qualifies as a key location for this structure."""


class NeedsBraiding(LabyrinthError):
    """The structure has a single solution; extra openings are required."""


class NoUniqueTiles(LabyrinthError):
    """Every route's tiles also appear on other routes; nothing can be frozen."""


class InvalidPlacement(LabyrinthError):
    """A task placement violates an invariant (the message names which one)."""


class DisconnectedStructure(LabyrinthError):
    """The wall set cuts the grid into unreachable regions."""


class EpisodeOver(LabyrinthError):
    """step() was called after the episode terminated or truncated."""


class SizeTooSmall(LabyrinthError):
    """The requested image size cannot fit one pixel block per tile."""


class ParseError(LabyrinthError):
    """Base for configuration-text errors; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadHeader(ParseError):
    """Unknown, duplicate, or missing header key."""


class BadGeometry(ParseError):
    """Grid block has wrong line widths/counts or a broken border."""


class BadTiles(ParseError):
    """Zero or multiple start/goal marks, or conflicting tile marks."""


class MutualExclusion(ParseError):
    """More than one of the three setting flags is enabled."""


class SplitsExhausted(LabyrinthError):
    """Unique structures could not be found within the attempt budget."""


class EmptyInput(LabyrinthError):
    """An aggregate was requested over zero samples."""


class BadDistribution(LabyrinthError):
    """Input vectors are not probability distributions of matching shape."""
