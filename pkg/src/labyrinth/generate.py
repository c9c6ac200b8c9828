"""Split-generation entry point: python -m labyrinth.generate --width 5 ..."""

from __future__ import annotations

import sys

from .cli import main as _cli_main


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    return _cli_main(["generate", *argv])


if __name__ == "__main__":
    raise SystemExit(main())
