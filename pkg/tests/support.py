"""Shared helpers for driving screens headlessly in tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from tuikit.backend import Cell, HeadlessSession, InputEvent, KeyEvent, Key, MouseEvent, MouseKind, TerminalSize
from tuikit.events import Screen
from tuikit.geometry import Rect
from tuikit.render import DiffStats, FrameBuffer

SIZE = TerminalSize(24, 80)


@dataclass
class Recorder:
    """Wraps a headless session and remembers every run presented per flush."""

    session: HeadlessSession
    flushes: list[list[tuple[int, int, int]]] = field(default_factory=list)

    def __post_init__(self) -> None:
        inner = self.session.present

        def present(writes):
            runs = list(writes)
            self.flushes.append([(x, y, len(cells)) for x, y, cells in runs])
            inner(runs)

        self.session.present = present  # type: ignore[method-assign]

    def last_cells_in(self, rect: Rect) -> int:
        return cells_in(self.flushes[-1], rect) if self.flushes else 0

    def last_rows_in(self, rect: Rect) -> set[int]:
        return rows_in(self.flushes[-1], rect) if self.flushes else set()


def cells_in(runs: Iterable[tuple[int, int, int]], rect: Rect) -> int:
    total = 0
    for x, y, n in runs:
        total += Rect(x, y, n, 1).intersect(rect).area
    return total


def rows_in(runs: Iterable[tuple[int, int, int]], rect: Rect) -> set[int]:
    return {y for x, y, n in runs if not Rect(x, y, n, 1).intersect(rect).is_empty()}


@dataclass
class Harness:
    screen: Screen
    session: HeadlessSession
    fb: FrameBuffer
    rec: Recorder

    def step(self, ev: InputEvent, dt: int = 0) -> DiffStats:
        self.session.clock_ms += dt
        return self.screen.step(ev)

    def key(self, key: Key, char: str = "") -> DiffStats:
        return self.step(KeyEvent(key, char))

    def type(self, text: str) -> None:
        for ch in text:
            self.step(KeyEvent.of(ch))

    def click(self, x: int, y: int, dt: int = 1000) -> DiffStats:
        """Press and release; returns the stats of the press flush."""
        stats = self.step(MouseEvent(x, y, kind=MouseKind.PRESS), dt)
        self.step(MouseEvent(x, y, kind=MouseKind.RELEASE))
        return stats

    def play(self, items) -> None:
        """Feed script items and dispatch until the queue drains or the screen exits."""
        self.session.feed(items)
        while self.session.pending_input and self.screen.exit_reason is None:
            ev = self.screen.next_event()
            self.screen.step(ev)

    def grid(self) -> list[list[Cell]]:
        return [list(row) for row in self.session.grid]

    def text(self) -> list[str]:
        return self.session.snapshot().text()


def start(screen: Screen, size: TerminalSize = SIZE, *, unicode: bool = False) -> Harness:
    session = HeadlessSession(size)
    rec = Recorder(session)
    fb = FrameBuffer(size, unicode=unicode)
    screen.start(session, fb)
    return Harness(screen, session, fb, rec)


def full_redraw(screen: Screen) -> list[list[Cell]]:
    """Paint everything from scratch into a fresh buffer (the oracle for incremental redraw)."""
    fb = FrameBuffer(screen.fb.size, unicode=screen.fb.unicode)
    screen.damage_redraw(fb, fb.screen_rect)
    return fb.back


def first_diff(a: list[list[Cell]], b: list[list[Cell]]) -> tuple[int, int] | None:
    for y, (ra, rb) in enumerate(zip(a, b), start=1):
        for x, (ca, cb) in enumerate(zip(ra, rb), start=1):
            if ca != cb:
                return x, y
    return None
