"""Main menu, demo registry and the application driver."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from ..backend import (
    Color, InputExhausted, Key, KeyEvent, Mode, MouseEvent, MouseKind, Session, Snapshot, TerminalSize,
    close_session, open_session,
)
from ..events import ExitReason, HandlerRegistry, Screen, Verdict, parse_script
from ..geometry import Rect
from ..render import BorderStyle, FrameBuffer, fixed_width
from ..widgets import Frame, Widget, inverse
from .screens import BUILDERS

log = logging.getLogger(__name__)

TITLE_TEXT = "TUI LIBRARY DEMO"
PROMPT = "Enter choice (1-9):"
MENU_COLORS = (Color.WHITE, Color.BLUE)
EXIT_CHOICE = 9


@dataclass(frozen=True)
class DemoEntry:
    number: int
    title: str
    setup: Callable[..., Screen]
    teardown: Callable[[Screen], None] = Screen.teardown


@dataclass
class DemoRegistry:
    entries: list[DemoEntry] = field(default_factory=list)
    exit_number: int = EXIT_CHOICE

    def __post_init__(self) -> None:
        nums = [e.number for e in self.entries]
        if nums != list(range(1, len(nums) + 1)) or self.exit_number != len(nums) + 1:
            raise ValueError("demo numbers must be contiguous from 1, followed by the exit entry")

    def labels(self) -> list[str]:
        return [f"{e.number}. {e.title}" for e in self.entries] + [f"{self.exit_number}. Exit"]

    def get(self, n: int) -> DemoEntry:
        return self.entries[n - 1]


def default_registry() -> DemoRegistry:
    titles = [
        "Form Demo", "Grid/Table Demo", "Menu Bar Demo", "Window Manager Demo",
        "Tree View Demo", "Tab Control Demo", "Controls Demo", "Menu + Tabs Demo",
    ]
    return DemoRegistry([DemoEntry(i + 1, t, BUILDERS[i + 1]) for i, t in enumerate(titles)])


class MainMenu(Widget):
    """Title box, numbered options and the choice prompt."""

    focusable = True
    width = 45

    def __init__(self, registry: DemoRegistry, size: TerminalSize) -> None:
        x = max(1, (size.cols - self.width) // 2 + 1)
        super().__init__(Rect(x, 2, self.width, 20), colors=MENU_COLORS)
        self.registry = registry
        self.labels = registry.labels()
        self.highlight = 0
        self.typed = ""

    def option_rows(self) -> list[int]:
        """Absolute row of each option; the exit entry sits after a blank row."""
        top = self.abs_rect.y + 6
        rows = [top + i for i in range(len(self.labels) - 1)]
        return rows + [rows[-1] + 2]

    @property
    def prompt_pos(self) -> tuple[int, int]:
        r = self.abs_rect
        return r.x, self.option_rows()[-1] + 4

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.base_colors()
        r = self.abs_rect
        fb.fill_rect(r, " ", *colors)
        fb.draw_border(Rect(r.x, r.y, r.w, 3), BorderStyle.SINGLE, *colors)
        fb.put_text(r.x + 1, r.y + 1, TITLE_TEXT.center(r.w - 2), *colors)
        rows = self.option_rows()
        box = Rect(r.x, r.y + 4, r.w, rows[-1] - r.y - 2)
        fb.draw_border(box, BorderStyle.SINGLE, *colors)
        for i, (label, y) in enumerate(zip(self.labels, rows)):
            c = inverse(colors) if i == self.highlight and self.focused else colors
            fb.put_text(r.x + 3, y, fixed_width(label, r.w - 6), *c)
        px, py = self.prompt_pos
        fb.put_text(px, py, fixed_width(f"{PROMPT} {self.typed}", r.w), *colors)

    def focus_damage(self) -> list:
        return []

    def cursor_position(self) -> tuple[int, int]:
        px, py = self.prompt_pos
        return px + len(PROMPT) + 1 + len(self.typed), py

    def _choose(self, n: int, screen: Screen) -> None:
        screen.exit(ExitReason.REQUESTED, n)

    def handle_key(self, ev: KeyEvent, screen: Screen) -> bool:
        n = len(self.labels)
        if ev.key is Key.CHAR and ev.char.isdigit() and 1 <= int(ev.char) <= n:
            self._choose(int(ev.char), screen)
            return True
        if ev.key in (Key.UP, Key.DOWN):
            self.highlight = (self.highlight + (1 if ev.key is Key.DOWN else -1)) % n
            self.mark_dirty()
            return True
        if ev.key is Key.ENTER:
            self._choose(self.highlight + 1, screen)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        for i, row in enumerate(self.option_rows()):
            if ev.y == row:
                self._choose(i + 1, screen)
                return True
        return False


def build_main_menu(registry: HandlerRegistry, demos: DemoRegistry, size: TerminalSize) -> Screen:
    scr = Screen(registry, escape_exits=False)
    scr.set_background(Frame(Rect(1, 1, size.cols, size.rows), colors=MENU_COLORS))
    scr.register(MainMenu(demos, size))
    return scr


class App:
    """Runs the main menu and the demos on one session until exit."""

    def __init__(self, session: Session, fb: FrameBuffer, demos: DemoRegistry | None = None) -> None:
        self.session = session
        self.fb = fb
        self.registry = HandlerRegistry()
        self.demos = demos or default_registry()
        self.history: list[int] = []

    def run_screen(self, scr: Screen) -> ExitReason:
        try:
            return scr.run(self.session, self.fb)
        finally:
            scr.teardown()

    def main_menu(self) -> int:
        scr = build_main_menu(self.registry, self.demos, self.session.size())
        self.run_screen(scr)
        return scr.result if scr.result is not None else EXIT_CHOICE

    def run_demo(self, n: int) -> ExitReason:
        entry = self.demos.get(n)
        scr = entry.setup(self.registry, self.session.size())
        try:
            return scr.run(self.session, self.fb)
        finally:
            entry.teardown(scr)

    def run(self, demo: int | None = None) -> int:
        """Return the process exit code; exhausting scripted input ends the run."""
        try:
            if demo is not None:
                if demo != EXIT_CHOICE:
                    self.history.append(demo)
                    self.run_demo(demo)
                return 0
            while True:
                choice = self.main_menu()
                if choice == EXIT_CHOICE:
                    return 0
                self.history.append(choice)
                self.run_demo(choice)
        except InputExhausted:
            log.debug("scripted input exhausted")
            return 0


def write_snapshot(directory: Path, name: str, snap: Snapshot) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{name}.txt").write_text("\n".join(snap.text()) + "\n", encoding="utf-8")
    (directory / f"{name}.colors").write_text("\n".join(snap.color_map()) + "\n", encoding="utf-8")


def snapshot_writer(directory: Path) -> Callable[[str, Snapshot], Any]:
    def write(name: str, snap: Snapshot) -> None:
        write_snapshot(directory, name, snap)

    return write


@dataclass
class RunConfig:
    demo: int | None = None
    backend: Mode = Mode.HEADLESS
    script: Path | None = None
    glyphs: str = "ascii"
    snapshot_out: Path | None = None
    size: TerminalSize = TerminalSize(24, 80)

    def __post_init__(self) -> None:
        if self.demo is not None and not 1 <= self.demo <= EXIT_CHOICE:
            raise ValueError(f"demo must be 1..{EXIT_CHOICE}, got {self.demo}")
        if self.backend is Mode.REAL and (self.snapshot_out is not None or self.script is not None):
            raise ValueError("scripts and snapshots need the headless backend")


def replay(cfg: RunConfig) -> int:
    """Drive the whole application from a script on a headless session.

    Every ``SNAP name`` writes ``name.txt`` and ``name.colors``; a ``final``
    snapshot is written once the script runs out. Parse errors propagate.
    """
    items = parse_script(cfg.script.read_text(encoding="utf-8")) if cfg.script else []
    session = open_session(Mode.HEADLESS, cfg.size, raise_when_exhausted=True)
    try:
        if cfg.snapshot_out is not None:
            session.on_snap = snapshot_writer(cfg.snapshot_out)
        session.feed(items)
        fb = FrameBuffer(cfg.size, unicode=cfg.glyphs == "unicode")
        code = App(session, fb).run(cfg.demo)
        if cfg.snapshot_out is not None:
            write_snapshot(cfg.snapshot_out, "final", session.snapshot())
        return code
    finally:
        close_session(session)


def run_interactive(cfg: RunConfig) -> int:
    session = open_session(Mode.REAL)
    try:
        fb = FrameBuffer(session.size(), unicode=cfg.glyphs == "unicode")
        return App(session, fb).run(cfg.demo)
    finally:
        close_session(session)
