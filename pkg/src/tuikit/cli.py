"""Command-line entry point for the demo gallery."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .backend import BackendError, Mode, TerminalSize
from .demo.app import RunConfig, replay, run_interactive
from .events import ScriptParseError

EXIT_OK = 0
EXIT_SCRIPT = 2
EXIT_BACKEND = 3


def parse_size(text: str) -> TerminalSize:
    try:
        cols, rows = (int(p) for p in text.lower().split("x"))
        return TerminalSize(rows, cols)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 80x24, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tuikit", description="Terminal UI toolkit demo gallery.")
    p.add_argument("--demo", type=int, choices=range(1, 10), metavar="{1-9}", help="start a demo directly")
    p.add_argument("--backend", choices=["ansi", "headless"], default="ansi")
    p.add_argument("--size", type=parse_size, default=TerminalSize(24, 80), help="headless size COLSxROWS")
    p.add_argument("--script", type=Path, help="input script to replay (headless)")
    p.add_argument("--snapshot-dir", type=Path, help="where SNAP directives write their files")
    p.add_argument("--glyphs", choices=["ascii", "unicode"], default="ascii")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    backend = Mode.HEADLESS if args.backend == "headless" else Mode.REAL
    try:
        cfg = RunConfig(args.demo, backend, args.script, args.glyphs, args.snapshot_dir, args.size)
    except ValueError as exc:
        print(f"tuikit: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    try:
        return replay(cfg) if backend is Mode.HEADLESS else run_interactive(cfg)
    except ScriptParseError as exc:
        print(f"tuikit: {exc}", file=sys.stderr)
        return EXIT_SCRIPT
    except BackendError as exc:
        print(f"tuikit: {exc}", file=sys.stderr)
        return EXIT_BACKEND


if __name__ == "__main__":
    sys.exit(main())
