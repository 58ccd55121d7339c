"""Double-buffered cell framebuffer.

Everything draws into the back buffer.  :meth:`FrameBuffer.flush` diffs the
back buffer against the front buffer (what the terminal shows), coalesces
changed cells into horizontal runs and presents them in one batch.
"""

from __future__ import annotations

import contextlib
import enum
import unicodedata
from dataclasses import dataclass
from typing import Iterator

from .backend import BLANK, Cell, Color, Session, TerminalSize
from .geometry import Rect

__all__ = [
    "BLANK", "BorderStyle", "Cell", "ClipStackUnderflow", "ControlCharacter",
    "DiffStats", "FrameBuffer", "SizeMismatch", "TooSmall", "coalesce_runs", "fixed_width",
]


class ControlCharacter(ValueError):
    pass


class TooSmall(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class ClipStackUnderflow(IndexError):
    pass


class BorderStyle(enum.Enum):
    SINGLE = "SINGLE"
    DOUBLE = "DOUBLE"


# (top-left, top-right, bottom-left, bottom-right, horizontal, vertical)
_ASCII_BORDERS = {
    BorderStyle.SINGLE: ("+", "+", "+", "+", "-", "|"),
    BorderStyle.DOUBLE: ("+", "+", "+", "+", "=", "|"),
}
_UNICODE_BORDERS = {
    BorderStyle.SINGLE: ("┌", "┐", "└", "┘", "─", "│"),
    BorderStyle.DOUBLE: ("╔", "╗", "╚", "╝", "═", "║"),
}


@dataclass(frozen=True)
class DiffStats:
    cells_written: int
    runs: int


def fixed_width(text: str, w: int) -> str:
    """Pad with spaces or truncate so the result is exactly ``w`` long."""
    if w < 0:
        raise ValueError("width must be non-negative")
    return text[:w].ljust(w)


def _is_control(ch: str) -> bool:
    return unicodedata.category(ch) == "Cc"


def coalesce_runs(cols: list[int]) -> list[tuple[int, int]]:
    """Group sorted column indices into maximal (start, length) runs."""
    runs: list[tuple[int, int]] = []
    for c in cols:
        if runs and runs[-1][0] + runs[-1][1] == c:
            runs[-1] = (runs[-1][0], runs[-1][1] + 1)
        else:
            runs.append((c, 1))
    return runs


class FrameBuffer:
    def __init__(self, size: TerminalSize, *, unicode: bool = False) -> None:
        self.size = size
        self.unicode = unicode
        self.back: list[list[Cell]] = self._blank_grid(size)
        self.front: list[list[Cell]] = self._blank_grid(size)
        self.clip_stack: list[Rect] = []
        self.cursor_req: tuple[int, int] | None = None
        self._clip = self.screen_rect

    @staticmethod
    def _blank_grid(size: TerminalSize) -> list[list[Cell]]:
        return [[BLANK] * size.cols for _ in range(size.rows)]

    @property
    def screen_rect(self) -> Rect:
        return Rect(1, 1, self.size.cols, self.size.rows)

    @property
    def clip(self) -> Rect:
        """The effective clip: screen bounds intersected with every pushed rect."""
        return self._clip

    def push_clip(self, r: Rect) -> None:
        self.clip_stack.append(r)
        self._clip = self._clip.intersect(r)

    def pop_clip(self) -> Rect:
        if not self.clip_stack:
            raise ClipStackUnderflow("pop_clip on an empty clip stack")
        r = self.clip_stack.pop()
        self._recompute_clip()
        return r

    def _recompute_clip(self) -> None:
        clip = self.screen_rect
        for r in self.clip_stack:
            clip = clip.intersect(r)
        self._clip = clip

    @contextlib.contextmanager
    def clipped(self, *rects: Rect) -> Iterator[None]:
        for r in rects:
            self.push_clip(r)
        try:
            yield
        finally:
            for _ in rects:
                self.pop_clip()

    def resize(self, size: TerminalSize) -> None:
        """Reallocate both buffers; the next flush repaints everything drawn."""
        self.size = size
        self.back = self._blank_grid(size)
        self.front = self._blank_grid(size)
        self.clip_stack.clear()
        self._clip = self.screen_rect
        if self.cursor_req and not self.screen_rect.contains(*self.cursor_req):
            self.cursor_req = None

    # -- drawing -----------------------------------------------------------

    def get(self, x: int, y: int) -> Cell:
        return self.back[y - 1][x - 1]

    def put_cell(self, x: int, y: int, cell: Cell) -> None:
        if self._clip.contains(x, y):
            self.back[y - 1][x - 1] = cell

    def put_text(self, x: int, y: int, text: str, fg: Color, bg: Color) -> None:
        for ch in text:
            if _is_control(ch):
                raise ControlCharacter(f"control character {ch!r} in {text!r}")
        clip = self._clip
        if not (clip.y <= y <= clip.bottom):
            return
        start = max(x, clip.x)
        stop = min(x + len(text) - 1, clip.right)
        row = self.back[y - 1]
        for px in range(start, stop + 1):
            row[px - 1] = Cell(text[px - x], fg, bg)

    def fill_rect(self, r: Rect, glyph: str, fg: Color, bg: Color) -> None:
        area = r.intersect(self._clip)
        if area.is_empty():
            return
        if _is_control(glyph):
            raise ControlCharacter(f"control character {glyph!r}")
        cell = Cell(glyph, fg, bg)
        for py in range(area.y, area.y + area.h):
            self.back[py - 1][area.x - 1 : area.x - 1 + area.w] = [cell] * area.w

    def border_glyphs(self, style: BorderStyle) -> tuple[str, ...]:
        return (_UNICODE_BORDERS if self.unicode else _ASCII_BORDERS)[style]

    def draw_border(self, r: Rect, style: BorderStyle, fg: Color, bg: Color) -> None:
        if r.w < 2 or r.h < 2:
            raise TooSmall(f"border needs at least 2x2 cells, got {r.w}x{r.h}")
        tl, tr, bl, br, hz, vt = self.border_glyphs(style)
        inner = r.w - 2
        self.put_text(r.x, r.y, tl + hz * inner + tr, fg, bg)
        self.put_text(r.x, r.bottom, bl + hz * inner + br, fg, bg)
        for py in range(r.y + 1, r.bottom):
            self.put_text(r.x, py, vt, fg, bg)
            self.put_text(r.right, py, vt, fg, bg)

    def hline(self, x: int, y: int, length: int, fg: Color, bg: Color, glyph: str | None = None) -> None:
        if glyph is None:
            glyph = self.border_glyphs(BorderStyle.SINGLE)[4]
        self.put_text(x, y, glyph * length, fg, bg)

    # -- region save/restore (popups) -------------------------------------

    def copy_region(self, r: Rect) -> list[list[Cell]]:
        r = r.intersect(self.screen_rect)
        return [list(self.back[py - 1][r.x - 1 : r.x - 1 + r.w]) for py in range(r.y, r.y + r.h)]

    def paste_region(self, r: Rect, cells: list[list[Cell]]) -> None:
        r = r.intersect(self.screen_rect)
        for i, row in enumerate(cells):
            self.back[r.y - 1 + i][r.x - 1 : r.x - 1 + len(row)] = row

    def clear(self, cell: Cell = BLANK) -> None:
        for row in self.back:
            row[:] = [cell] * len(row)

    # -- presentation ------------------------------------------------------

    def diff_cells(self) -> list[tuple[int, int]]:
        """1-based (x, y) of every cell where back differs from front."""
        out = []
        for y, (brow, frow) in enumerate(zip(self.back, self.front), start=1):
            if brow == frow:
                continue
            out.extend((x, y) for x, (b, f) in enumerate(zip(brow, frow), start=1) if b != f)
        return out

    def flush(self, session: Session) -> DiffStats:
        if session.size() != self.size:
            raise SizeMismatch(f"framebuffer {self.size} vs terminal {session.size()}")
        writes = []
        cells_written = 0
        for y, (brow, frow) in enumerate(zip(self.back, self.front), start=1):
            if brow == frow:
                continue
            cols = [x for x in range(len(brow)) if brow[x] != frow[x]]
            for start, length in coalesce_runs(cols):
                writes.append((start + 1, y, brow[start : start + length]))
                cells_written += length
            frow[:] = brow
        session.present(writes)
        cursor = self.cursor_req
        if cursor is not None and not self.screen_rect.contains(*cursor):
            cursor = None
        session.set_cursor(cursor)
        return DiffStats(cells_written, len(writes))
