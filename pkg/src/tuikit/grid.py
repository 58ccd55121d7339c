"""Editable table with optional headers and row numbers.

Layout inside the outer border, top to bottom: a header row and a dashed
separator row (only when some column has a title), then the data rows.
Left to right: the right-aligned row-number column, a one-space gap, then
the data columns separated by single spaces.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .backend import Color, Key, KeyEvent, MouseEvent, MouseKind, ResizeEvent, TickEvent
from .events import EventKind, Verdict
from .geometry import EMPTY, Rect
from .render import BorderStyle, FrameBuffer, fixed_width
from .widgets import SELECTED, SELECTED_IDLE, TextBoxState, Widget

if TYPE_CHECKING:
    from .events import Screen

HEADER = (Color.YELLOW, Color.BLUE)
CELLS = (Color.WHITE, Color.BLUE)
EDITING = (Color.BLACK, Color.WHITE)


class GridMode(enum.Enum):
    NAVIGATE = "NAVIGATE"
    EDIT = "EDIT"


class MouseResult(enum.Enum):
    SELECTED = "SELECTED"
    EDIT_STARTED = "EDIT_STARTED"
    IGNORED = "IGNORED"


class EditResult(enum.Enum):
    COMMITTED = "COMMITTED"
    CANCELLED = "CANCELLED"


@dataclass(frozen=True)
class GridColumn:
    title: str | None
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError("column width must be positive")


class Grid(Widget):
    focusable = True

    def __init__(
        self,
        x: int,
        y: int,
        columns: Sequence[GridColumn],
        rows: Sequence[Sequence[str]],
        *,
        show_row_numbers: bool = True,
        row_number_title: str = "#",
        visible_rows: int | None = None,
        width: int | None = None,
    ) -> None:
        if not columns:
            raise ValueError("a grid needs at least one column")
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]
        for i, r in enumerate(self.rows):
            if len(r) != len(self.columns):
                raise ValueError(f"row {i} has {len(r)} cells, expected {len(self.columns)}")
        self.show_row_numbers = show_row_numbers
        self.row_number_title = row_number_title
        self.cur_row = 0
        self.cur_col = 0
        self.scroll_top = 0
        self.mode = GridMode.NAVIGATE
        self.edit_buffer: TextBoxState | None = None
        self.last_repaint: list[Rect] = []
        n = visible_rows if visible_rows is not None else max(1, len(self.rows))
        w = width if width is not None else self.content_width + 2
        super().__init__(Rect(x, y, w, n + 2 + (2 if self.has_header else 0)))

    # -- layout ------------------------------------------------------------

    @property
    def has_header(self) -> bool:
        return any(c.title for c in self.columns)

    @property
    def rn_width(self) -> int:
        if not self.show_row_numbers:
            return 0
        title = self.row_number_title if self.has_header else ""
        return max(1, len(str(len(self.rows))), len(title))

    @property
    def content_width(self) -> int:
        rn = self.rn_width + 1 if self.show_row_numbers else 0
        return rn + sum(c.width for c in self.columns) + len(self.columns) - 1

    @property
    def inner(self) -> Rect:
        return self.abs_rect.inset(1, 1, 1, 1)

    @property
    def data_y0(self) -> int:
        return self.abs_rect.y + 1 + (2 if self.has_header else 0)

    @property
    def page_rows(self) -> int:
        return max(0, self.rect.h - 2 - (2 if self.has_header else 0))

    def col_x(self, c: int) -> int:
        x = self.abs_rect.x + 1 + (self.rn_width + 1 if self.show_row_numbers else 0)
        return x + sum(col.width for col in self.columns[:c]) + c

    def cell_rect(self, r: int, c: int) -> Rect:
        """Absolute rect of cell (r, c), clipped to the interior; EMPTY if scrolled out."""
        row = r - self.scroll_top
        if not 0 <= row < self.page_rows:
            return EMPTY
        return Rect(self.col_x(c), self.data_y0 + row, self.columns[c].width, 1).intersect(self.inner)

    def rownum_rect(self, r: int) -> Rect:
        row = r - self.scroll_top
        if not self.show_row_numbers or not 0 <= row < self.page_rows:
            return EMPTY
        return Rect(self.abs_rect.x + 1, self.data_y0 + row, self.rn_width, 1).intersect(self.inner)

    @property
    def data_region(self) -> Rect:
        inner = self.inner
        return Rect(inner.x, self.data_y0, inner.w, self.page_rows).intersect(inner)

    def cell_at(self, ax: int, ay: int) -> tuple[int, int] | None:
        """The cell whose glyphs occupy absolute position (ax, ay), if any."""
        if not self.inner.contains(ax, ay):
            return None
        row = ay - self.data_y0
        if not 0 <= row < self.page_rows:
            return None
        r = self.scroll_top + row
        if r >= len(self.rows):
            return None
        for c, col in enumerate(self.columns):
            x0 = self.col_x(c)
            if x0 <= ax < x0 + col.width:
                return r, c
        return None

    # -- drawing -----------------------------------------------------------

    def paint(self, fb: FrameBuffer) -> None:
        r = self.abs_rect
        fb.fill_rect(r, " ", *CELLS)
        fb.draw_border(r, BorderStyle.SINGLE, *CELLS)
        inner = self.inner
        fb.push_clip(inner)
        try:
            self._paint_inner(fb)
        finally:
            fb.pop_clip()

    def _paint_inner(self, fb: FrameBuffer) -> None:
        inner = self.inner
        rnw = self.rn_width
        if self.has_header:
            if self.show_row_numbers:
                fb.put_text(inner.x, inner.y, self.row_number_title[:rnw].rjust(rnw), *HEADER)
            for c, col in enumerate(self.columns):
                fb.put_text(self.col_x(c), inner.y, fixed_width(col.title or "", col.width), *HEADER)
            fb.put_text(inner.x, inner.y + 1, "-" * self.content_width, *CELLS)
        focused = self.focused
        for row in range(self.page_rows):
            r = self.scroll_top + row
            if r >= len(self.rows):
                break
            y = self.data_y0 + row
            if self.show_row_numbers:
                colors = (SELECTED if focused else SELECTED_IDLE) if r == self.cur_row else CELLS
                fb.put_text(inner.x, y, str(r + 1).rjust(rnw), *colors)
            for c, col in enumerate(self.columns):
                colors = CELLS
                text = fixed_width(self.rows[r][c], col.width)
                if (r, c) == (self.cur_row, self.cur_col):
                    if self.mode is GridMode.EDIT and self.edit_buffer is not None:
                        colors = EDITING
                        text = self.edit_buffer.visible_text(col.width)
                    else:
                        colors = SELECTED if focused else SELECTED_IDLE
                fb.put_text(self.col_x(c), y, text, *colors)

    def focus_damage(self) -> list[Rect]:
        if not self.showing or not self.rows:
            return []
        return [self.cell_rect(self.cur_row, self.cur_col), self.rownum_rect(self.cur_row)]

    def cursor_position(self) -> tuple[int, int] | None:
        if self.mode is not GridMode.EDIT or self.edit_buffer is None:
            return None
        cell = self.cell_rect(self.cur_row, self.cur_col)
        if cell.is_empty():
            return None
        return cell.x + self.edit_buffer.cursor - self.edit_buffer.view_offset, cell.y

    # -- navigation --------------------------------------------------------

    def _scroll_into_view(self) -> bool:
        old = self.scroll_top
        h = max(1, self.page_rows)
        self.scroll_top = max(self.scroll_top, self.cur_row - h + 1)
        self.scroll_top = max(0, min(self.scroll_top, self.cur_row))
        return self.scroll_top != old

    def select(self, r: int, c: int) -> list[Rect]:
        """Move the selection; return the rects that need repainting."""
        if not self.rows:
            return []
        r = max(0, min(len(self.rows) - 1, r))
        c = max(0, min(len(self.columns) - 1, c))
        old_r, old_c = self.cur_row, self.cur_col
        if (r, c) == (old_r, old_c):
            return []
        old_cell = self.cell_rect(old_r, old_c)
        old_rn = self.rownum_rect(old_r)
        self.cur_row, self.cur_col = r, c
        if self._scroll_into_view():
            rects = [self.data_region]
        else:
            rects = [old_cell, self.cell_rect(r, c)]
            if r != old_r:
                rects += [old_rn, self.rownum_rect(r)]
        rects = [x for x in rects if not x.is_empty()]
        for x in rects:
            self.invalidate(x)
        return rects

    def navigate(self, key: Key) -> list[Rect]:
        if self.mode is not GridMode.NAVIGATE:
            return []
        r, c = self.cur_row, self.cur_col
        page = max(1, self.page_rows)
        moves = {
            Key.UP: (r - 1, c),
            Key.DOWN: (r + 1, c),
            Key.LEFT: (r, c - 1),
            Key.RIGHT: (r, c + 1),
            Key.KEY_PGUP: (r - page, c),
            Key.KEY_PGDOWN: (r + page, c),
            Key.HOME: (r, 0),
            Key.END: (r, len(self.columns) - 1),
        }
        if key not in moves:
            return []
        self.last_repaint = self.select(*moves[key])
        return self.last_repaint

    def grid_mouse(self, x: int, y: int, verdict: Verdict) -> MouseResult:
        """Classify a click at widget-local (x, y) and update the selection."""
        r = self.abs_rect
        cell = self.cell_at(r.x + x - 1, r.y + y - 1)
        if cell is None:
            self.last_repaint = []
            return MouseResult.IGNORED
        if verdict is Verdict.ACCEPT_DOUBLE or cell == (self.cur_row, self.cur_col):
            self.last_repaint = self.select(*cell)
            return MouseResult.EDIT_STARTED
        self.last_repaint = self.select(*cell)
        return MouseResult.SELECTED

    # -- events ------------------------------------------------------------

    def handle_key(self, ev: KeyEvent, screen: Screen) -> bool:
        if ev.key is Key.ENTER:
            if self.rows:
                self.edit_loop(screen)
            return True
        old = (self.cur_row, self.cur_col)
        self.navigate(ev.key)
        if (self.cur_row, self.cur_col) != old:
            self.emit(EventKind.CHANGE, (self.cur_row, self.cur_col))
            return True
        return ev.key in (Key.UP, Key.DOWN, Key.LEFT, Key.RIGHT, Key.KEY_PGUP, Key.KEY_PGDOWN, Key.HOME, Key.END)

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        if screen.focus_changed_on_press and verdict is Verdict.ACCEPT_SINGLE:
            # A click that only brings focus to the grid never starts editing.
            r = self.abs_rect
            cell = self.cell_at(r.x + x - 1, r.y + y - 1)
            if cell is not None:
                self.select(*cell)
            return True
        old = (self.cur_row, self.cur_col)
        result = self.grid_mouse(x, y, verdict)
        if (self.cur_row, self.cur_col) != old:
            self.emit(EventKind.CHANGE, (self.cur_row, self.cur_col))
        if result is MouseResult.EDIT_STARTED:
            self.edit_loop(screen)
        return result is not MouseResult.IGNORED

    def edit_loop(self, screen: Screen) -> EditResult:
        """Modal in-place editing of the selected cell."""
        r, c = self.cur_row, self.cur_col
        width = self.columns[c].width
        original = self.rows[r][c]
        buf = TextBoxState(original, len(original), 0)
        buf.scroll(width)
        self.edit_buffer = buf
        self.mode = GridMode.EDIT
        cell = self.cell_rect(r, c)
        self.invalidate(cell)
        result = EditResult.CANCELLED
        while True:
            ev = screen.pump()
            if isinstance(ev, KeyEvent):
                if ev.key is Key.ENTER:
                    result = EditResult.COMMITTED
                    break
                if ev.key is Key.ESC:
                    break
                if buf.apply(ev):
                    buf.scroll(width)
                    self.invalidate(cell)
            elif isinstance(ev, MouseEvent):
                if ev.kind is not MouseKind.PRESS:
                    continue
                if cell.contains(ev.x, ev.y):
                    buf.cursor = min(len(buf.text), buf.view_offset + ev.x - cell.x)
                    buf.scroll(width)
                    continue
                result = EditResult.COMMITTED
                # The click that ended editing must not pair into a double click.
                screen.click_filter.forget(self.id)
                screen.reinject(ev)
                break
            elif isinstance(ev, ResizeEvent):
                result = EditResult.COMMITTED
                screen.reinject(ev)
                break
            elif not isinstance(ev, TickEvent):
                break
        if result is EditResult.COMMITTED:
            self.rows[r][c] = buf.text
        self.mode = GridMode.NAVIGATE
        self.edit_buffer = None
        self.invalidate(self.cell_rect(r, c))
        if result is EditResult.COMMITTED and buf.text != original:
            self.emit(EventKind.CHANGE, (r, c))
        return result
