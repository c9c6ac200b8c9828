"""Kernel backend selection.

The hot loops (maze carving, breadth-first search, simple-path enumeration)
exist twice: a Cython extension (``_core``) and a pure-Python module
(``pure``) with bit-identical behavior.  The compiled backend is preferred
when it imports cleanly; set ``LABYRINTH_PURE_PYTHON=1`` to force the
fallback, for example to benchmark one against the other.
"""

from __future__ import annotations

import os

from . import pure as _pure

if os.environ.get("LABYRINTH_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND_NAME: str = _impl.BACKEND_NAME

generate_perfect = _impl.generate_perfect
bfs_tree = _impl.bfs_tree
enumerate_paths = _impl.enumerate_paths
count_paths_up_to = _impl.count_paths_up_to


def backends() -> dict:
    """Map of importable backend name -> module, for parity tests and benchmarks."""
    found = {"pure": _pure}
    try:
        from . import _core  # type: ignore[attr-defined]

        found["compiled"] = _core
    except ImportError:
        pass
    return found
