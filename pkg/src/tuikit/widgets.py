"""Widget base classes and the simple controls.

A widget's ``rect`` is relative to its parent's content origin (absolute for
top-level widgets).  ``paint`` draws the widget's own visuals at absolute
coordinates and must cover every cell of its rect; the caller sets the clip.
Containers paint themselves and then their visible children.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Iterator, Sequence

from .backend import Color, Key, KeyEvent, MouseEvent, MouseKind, TerminalSize
from .events import ClickFilter, EventKind, Verdict
from .geometry import EMPTY, Rect
from .render import BorderStyle, FrameBuffer, fixed_width

if TYPE_CHECKING:
    from .events import Screen

Colors = tuple[Color, Color]

TEXT: Colors = (Color.WHITE, Color.BLUE)
FIELD: Colors = (Color.BLACK, Color.CYAN)
BUTTON: Colors = (Color.BLACK, Color.GREY)
SELECTED: Colors = (Color.BLACK, Color.CYAN)
SELECTED_IDLE: Colors = (Color.BLACK, Color.GREY)


def inverse(colors: Colors) -> Colors:
    return colors[1], colors[0]


class Changed(enum.Enum):
    CHANGED = "CHANGED"
    UNCHANGED = "UNCHANGED"
    REJECTED = "REJECTED"


class Widget:
    """Base widget: geometry, visibility, dirty tracking and event hooks."""

    focusable = False
    global_keys = False

    def __init__(self, rect: Rect, *, colors: Colors | None = None, visible: bool = True) -> None:
        self.rect = rect
        self.colors = colors
        self._visible = visible
        self.dirty = True
        self.damage: list[Rect] = []
        self.parent: Container | None = None
        self.screen: Screen | None = None
        self.id: int | None = None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} id={self.id} rect={self.rect}>"

    # -- geometry ----------------------------------------------------------

    @property
    def abs_rect(self) -> Rect:
        if self.parent is None:
            return self.rect
        ox, oy = self.parent.content_origin()
        return self.rect.translate(ox - 1, oy - 1)

    @property
    def parent_clip(self) -> Rect | None:
        return None if self.parent is None else self.parent.child_clip(self)

    def visible_rect(self) -> Rect:
        r = self.abs_rect
        pc = self.parent_clip
        return r if pc is None else r.intersect(pc)

    def move_to(self, x: int, y: int) -> None:
        self._relayout(self.rect.moved_to(x, y))

    def resize(self, w: int, h: int) -> None:
        self._relayout(self.rect.resized(w, h))

    def _relayout(self, rect: Rect) -> None:
        if self.showing:
            self.invalidate(self.visible_rect())
        self.rect = rect
        self.mark_dirty()

    # -- state -------------------------------------------------------------

    @property
    def visible(self) -> bool:
        return self._visible

    @visible.setter
    def visible(self, value: bool) -> None:
        if value == self._visible:
            return
        if self.screen is not None and self.showing:
            self.screen.invalidate(self.visible_rect())
        self._visible = value
        self.dirty = True
        if not value and self.screen is not None:
            f = self.screen.focus
            if f is self or (f is not None and self in list(f.ancestors())):
                self.screen.set_focus(None)

    @property
    def showing(self) -> bool:
        """Visible, and every ancestor is showing this widget."""
        if not self._visible:
            return False
        p = self.parent
        return p is None or (p.showing and p.shows_child(self))

    @property
    def focused(self) -> bool:
        return self.screen is not None and self.screen.focus is self

    def base_colors(self) -> Colors:
        if self.colors is not None:
            return self.colors
        p = self.parent
        while p is not None:
            c = p.content_colors()
            if c is not None:
                return c
            p = p.parent
        return TEXT

    def mark_dirty(self) -> None:
        self.dirty = True

    def invalidate(self, rect: Rect | None = None) -> None:
        """Record damage in absolute coordinates (whole widget by default)."""
        if rect is None:
            self.dirty = True
        elif not rect.is_empty():
            self.damage.append(rect)

    def ancestors(self) -> Iterator[Container]:
        p = self.parent
        while p is not None:
            yield p
            p = p.parent

    # -- tree --------------------------------------------------------------

    def children(self) -> Sequence[Widget]:
        return ()

    def paint_list(self) -> Iterator[Widget]:
        if self._visible:
            yield self

    def focus_candidates(self) -> Iterator[Widget]:
        if self.focusable and self._visible:
            yield self

    def hit_test(self, x: int, y: int) -> Widget | None:
        if self._visible and self.visible_rect().contains(x, y):
            return self
        return None

    # -- drawing -----------------------------------------------------------

    def paint(self, fb: FrameBuffer) -> None:
        fg, bg = self.base_colors()
        fb.fill_rect(self.abs_rect, " ", fg, bg)

    def draw(self, fb: FrameBuffer) -> None:
        """Paint this widget and its visible descendants, each within its clip."""
        for w in self.paint_list():
            fb.push_clip(w.visible_rect())
            try:
                w.paint(fb)
            finally:
                fb.pop_clip()
            w.dirty = False
            w.damage.clear()

    def cursor_position(self) -> tuple[int, int] | None:
        return None

    # -- events ------------------------------------------------------------

    def handle_key(self, ev: KeyEvent, screen: Screen) -> bool:
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        return False

    def handle_global_key(self, ev: KeyEvent, screen: Screen) -> bool:
        return False

    def on_focus(self, screen: Screen) -> None:
        pass

    def on_blur(self, screen: Screen) -> None:
        pass

    def focus_damage(self) -> list[Rect]:
        """Cells whose look depends on focus; repainted on focus change."""
        return [self.visible_rect()] if self.showing else []

    def on_descendant_press(self, w: Widget, screen: Screen) -> None:
        pass

    def on_child_focused(self, w: Widget) -> None:
        pass

    def on_screen_resize(self, size: TerminalSize) -> None:
        pass

    def emit(self, kind: EventKind, event: Any = None) -> None:
        if self.screen is not None:
            self.screen.emit(self, kind, event)


class Container(Widget):
    """A widget with children laid out relative to its content origin."""

    def __init__(self, rect: Rect, *, colors: Colors | None = None, visible: bool = True) -> None:
        super().__init__(rect, colors=colors, visible=visible)
        self._children: list[Widget] = []

    def add(self, child: Widget) -> Widget:
        if child.parent is not None:
            raise ValueError(f"{child!r} already has a parent")
        child.parent = self
        self._children.append(child)
        if self.screen is not None:
            self.screen.adopt(child)
        child.mark_dirty()
        return child

    def remove(self, child: Widget) -> None:
        if child.showing:
            self.invalidate(child.visible_rect())
        self._children.remove(child)
        if self.screen is not None:
            self.screen.unadopt(child)
        child.parent = None

    def children(self) -> Sequence[Widget]:
        return tuple(self._children)

    def content_origin(self) -> tuple[int, int]:
        r = self.abs_rect
        return r.x, r.y

    def content_rect(self) -> Rect:
        return self.abs_rect

    def content_colors(self) -> Colors | None:
        return self.colors

    def child_clip(self, child: Widget | None = None) -> Rect:
        return self.content_rect().intersect(self.visible_rect())

    def shows_child(self, child: Widget) -> bool:
        return True

    def visible_children(self) -> list[Widget]:
        return [c for c in self._children if c.visible and self.shows_child(c)]

    def paint_list(self) -> Iterator[Widget]:
        if not self._visible:
            return
        yield self
        for c in self.visible_children():
            yield from c.paint_list()

    def focus_candidates(self) -> Iterator[Widget]:
        if not self._visible:
            return
        if self.focusable:
            yield self
        for c in self.visible_children():
            yield from c.focus_candidates()

    def hit_test(self, x: int, y: int) -> Widget | None:
        if not self._visible or not self.visible_rect().contains(x, y):
            return None
        for c in reversed(self.visible_children()):
            hit = c.hit_test(x, y)
            if hit is not None:
                return hit
        return self


class Frame(Container):
    """Filled background, optionally bordered and titled; also a group box."""

    def __init__(
        self,
        rect: Rect,
        *,
        title: str = "",
        border: BorderStyle | None = None,
        glyph: str = " ",
        colors: Colors | None = None,
    ) -> None:
        super().__init__(rect, colors=colors)
        self.title = title
        self.border = border
        self.glyph = glyph

    def content_rect(self) -> Rect:
        r = self.abs_rect
        return r.inset(1, 1, 1, 1) if self.border else r

    def content_origin(self) -> tuple[int, int]:
        r = self.content_rect()
        return r.x, r.y

    def paint(self, fb: FrameBuffer) -> None:
        fg, bg = self.base_colors()
        r = self.abs_rect
        fb.fill_rect(r, self.glyph, fg, bg)
        if self.border and r.w >= 2 and r.h >= 2:
            fb.draw_border(r, self.border, fg, bg)
            if self.title:
                fb.put_text(r.x + 2, r.y, fixed_width(f" {self.title} ", max(0, r.w - 4)).rstrip(), fg, bg)

    def on_screen_resize(self, size: TerminalSize) -> None:
        if self.parent is None and self.rect.x == 1 and self.rect.y == 1:
            self.rect = Rect(1, 1, size.cols, size.rows)
            self.mark_dirty()


class Label(Widget):
    """Static text; never focusable."""

    def __init__(self, x: int, y: int, text: str, width: int | None = None, *, colors: Colors | None = None) -> None:
        lines = text.split("\n")
        w = width if width is not None else max(len(s) for s in lines)
        super().__init__(Rect(x, y, w, len(lines)), colors=colors)
        self._text = text

    @property
    def focusable(self) -> bool:  # type: ignore[override]
        return False

    @property
    def text(self) -> str:
        return self._text

    @text.setter
    def text(self, value: str) -> None:
        if value != self._text:
            self._text = value
            self.mark_dirty()

    def paint(self, fb: FrameBuffer) -> None:
        fg, bg = self.base_colors()
        r = self.abs_rect
        lines = self._text.split("\n")
        for i in range(r.h):
            fb.put_text(r.x, r.y + i, fixed_width(lines[i] if i < len(lines) else "", r.w), fg, bg)


class Button(Widget):
    """``[ label ]``; ENTER, SPACE or a click fires CLICK."""

    focusable = True

    def __init__(self, x: int, y: int, label: str, *, colors: Colors | None = None) -> None:
        super().__init__(Rect(x, y, len(label) + 4, 1), colors=colors)
        self.label = label

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.colors or BUTTON
        fg, bg = inverse(colors) if self.focused else colors
        r = self.abs_rect
        fb.put_text(r.x, r.y, fixed_width(f"[ {self.label} ]", r.w), fg, bg)

    def handle_key(self, ev: KeyEvent, screen: Screen) -> bool:
        if ev.key in (Key.ENTER, Key.SPACE):
            self.emit(EventKind.CLICK, ev)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is MouseKind.PRESS:
            self.emit(EventKind.CLICK, ev)
            return True
        return False


# --------------------------------------------------------------------------
# Single-line text entry
# --------------------------------------------------------------------------


@dataclass
class TextBoxState:
    """Line-editing state shared by TextBox and grid cell editing."""

    text: str = ""
    cursor: int = 0
    view_offset: int = 0

    def scroll(self, width: int) -> None:
        """Keep the cursor within ``view_offset .. view_offset + width - 1``."""
        width = max(1, width)
        self.view_offset = max(self.view_offset, self.cursor - width + 1)
        self.view_offset = max(0, min(self.view_offset, self.cursor))

    def visible_text(self, width: int) -> str:
        return fixed_width(self.text[self.view_offset :], width)

    def apply(self, ev: KeyEvent) -> bool:
        """Apply an editing key; return True when text or cursor changed."""
        t, c = self.text, self.cursor
        ch = ev.text
        if ch:
            t, c = t[:c] + ch + t[c:], c + 1
        elif ev.key is Key.LEFT:
            c = max(0, c - 1)
        elif ev.key is Key.RIGHT:
            c = min(len(t), c + 1)
        elif ev.key is Key.HOME:
            c = 0
        elif ev.key is Key.END:
            c = len(t)
        elif ev.key is Key.BACKSPACE:
            if c > 0:
                t, c = t[: c - 1] + t[c:], c - 1
        elif ev.key is Key.DELETE:
            t = t[:c] + t[c + 1 :]
        else:
            return False
        changed = (t, c) != (self.text, self.cursor)
        self.text, self.cursor = t, c
        return changed


class TextBox(Widget):
    """Single-line input with horizontal scrolling."""

    focusable = True

    def __init__(self, x: int, y: int, width: int, text: str = "", *, colors: Colors | None = None) -> None:
        super().__init__(Rect(x, y, width, 1), colors=colors)
        self.state = TextBoxState()
        self.set_text(text)

    @property
    def text(self) -> str:
        return self.state.text

    def set_text(self, text: str) -> None:
        self.state = TextBoxState(text, len(text), 0)
        self.state.scroll(self.rect.w)
        self.mark_dirty()

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.colors or FIELD
        fg, bg = inverse(colors) if self.focused else colors
        r = self.abs_rect
        fb.put_text(r.x, r.y, self.state.visible_text(r.w), fg, bg)

    def cursor_position(self) -> tuple[int, int]:
        r = self.abs_rect
        return r.x + self.state.cursor - self.state.view_offset, r.y

    def handle_key(self, ev: KeyEvent, screen: Screen | None = None) -> bool:
        before = (self.state.text, self.state.view_offset)
        old_text = self.state.text
        changed = self.state.apply(ev)
        if not changed:
            return False
        self.state.scroll(self.rect.w)
        if (self.state.text, self.state.view_offset) != before:
            self.mark_dirty()
        if self.state.text != old_text:
            self.emit(EventKind.CHANGE, ev)
        return True

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        self.state.cursor = min(len(self.state.text), self.state.view_offset + x - 1)
        self.state.scroll(self.rect.w)
        return True


# --------------------------------------------------------------------------
# Multi-line text entry
# --------------------------------------------------------------------------


@dataclass
class EditBoxState:
    lines: list[str]
    cur_line: int = 0
    cur_col: int = 0
    scroll_top: int = 0
    col_offset: int = 0


class EditBox(Widget):
    """Bordered multi-line editor; no word wrap, lines scroll horizontally."""

    focusable = True

    def __init__(self, x: int, y: int, width: int, height: int, text: str = "", *, colors: Colors | None = None) -> None:
        if width < 3 or height < 3:
            raise ValueError("EditBox needs at least 3x3 cells")
        super().__init__(Rect(x, y, width, height), colors=colors)
        self.state = EditBoxState([""])
        self.set_text(text)

    @property
    def text(self) -> str:
        return "\n".join(self.state.lines)

    def set_text(self, text: str) -> None:
        self.state = EditBoxState(text.split("\n"))
        self.mark_dirty()

    @property
    def inner(self) -> Rect:
        return self.abs_rect.inset(1, 1, 1, 1)

    def _row_rect(self, line: int) -> Rect:
        inner = self.inner
        row = line - self.state.scroll_top
        if not 0 <= row < inner.h:
            return EMPTY
        return Rect(inner.x, inner.y + row, inner.w, 1)

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.colors or FIELD
        r = self.abs_rect
        fg, bg = colors
        fb.fill_rect(r, " ", fg, bg)
        bfg, bbg = inverse(colors) if self.focused else colors
        fb.draw_border(r, BorderStyle.SINGLE, bfg, bbg)
        inner = self.inner
        st = self.state
        for row in range(inner.h):
            i = st.scroll_top + row
            text = st.lines[i] if i < len(st.lines) else ""
            fb.put_text(inner.x, inner.y + row, fixed_width(text[st.col_offset :], inner.w), fg, bg)

    def focus_damage(self) -> list[Rect]:
        if not self.showing:
            return []
        r = self.abs_rect
        return [Rect(r.x, r.y, r.w, 1), Rect(r.x, r.bottom, r.w, 1), Rect(r.x, r.y, 1, r.h), Rect(r.right, r.y, 1, r.h)]

    def cursor_position(self) -> tuple[int, int]:
        inner = self.inner
        st = self.state
        return inner.x + st.cur_col - st.col_offset, inner.y + st.cur_line - st.scroll_top

    def _scroll(self) -> bool:
        st = self.state
        inner = self.inner
        before = (st.scroll_top, st.col_offset)
        h, w = max(1, inner.h), max(1, inner.w)
        st.scroll_top = max(st.scroll_top, st.cur_line - h + 1)
        st.scroll_top = max(0, min(st.scroll_top, st.cur_line))
        st.col_offset = max(st.col_offset, st.cur_col - w + 1)
        st.col_offset = max(0, min(st.col_offset, st.cur_col))
        return (st.scroll_top, st.col_offset) != before

    def _damage_from(self, line: int) -> None:
        inner = self.inner
        row = max(0, line - self.state.scroll_top)
        if row < inner.h:
            self.invalidate(Rect(inner.x, inner.y + row, inner.w, inner.h - row))

    def handle_key(self, ev: KeyEvent, screen: Screen | None = None) -> bool:
        st = self.state
        lines = st.lines
        before = (list(lines), st.cur_line, st.cur_col)
        rows_from: int | None = None
        ch = ev.text
        k = ev.key
        if ch:
            s = lines[st.cur_line]
            lines[st.cur_line] = s[: st.cur_col] + ch + s[st.cur_col :]
            st.cur_col += 1
            self.invalidate(self._row_rect(st.cur_line))
        elif k is Key.ENTER:
            s = lines[st.cur_line]
            lines[st.cur_line : st.cur_line + 1] = [s[: st.cur_col], s[st.cur_col :]]
            rows_from = st.cur_line
            st.cur_line += 1
            st.cur_col = 0
        elif k is Key.BACKSPACE:
            if st.cur_col > 0:
                s = lines[st.cur_line]
                lines[st.cur_line] = s[: st.cur_col - 1] + s[st.cur_col :]
                st.cur_col -= 1
                self.invalidate(self._row_rect(st.cur_line))
            elif st.cur_line > 0:
                prev = lines[st.cur_line - 1]
                lines[st.cur_line - 1 : st.cur_line + 1] = [prev + lines[st.cur_line]]
                st.cur_line -= 1
                st.cur_col = len(prev)
                rows_from = st.cur_line
        elif k is Key.DELETE:
            s = lines[st.cur_line]
            if st.cur_col < len(s):
                lines[st.cur_line] = s[: st.cur_col] + s[st.cur_col + 1 :]
                self.invalidate(self._row_rect(st.cur_line))
            elif st.cur_line + 1 < len(lines):
                lines[st.cur_line : st.cur_line + 2] = [s + lines[st.cur_line + 1]]
                rows_from = st.cur_line
        elif k in (Key.UP, Key.DOWN, Key.KEY_PGUP, Key.KEY_PGDOWN):
            page = max(1, self.inner.h)
            delta = {Key.UP: -1, Key.DOWN: 1, Key.KEY_PGUP: -page, Key.KEY_PGDOWN: page}[k]
            st.cur_line = max(0, min(len(lines) - 1, st.cur_line + delta))
            st.cur_col = min(st.cur_col, len(lines[st.cur_line]))
        elif k is Key.LEFT:
            if st.cur_col > 0:
                st.cur_col -= 1
            elif st.cur_line > 0:
                st.cur_line -= 1
                st.cur_col = len(lines[st.cur_line])
        elif k is Key.RIGHT:
            if st.cur_col < len(lines[st.cur_line]):
                st.cur_col += 1
            elif st.cur_line + 1 < len(lines):
                st.cur_line += 1
                st.cur_col = 0
        elif k is Key.HOME:
            st.cur_col = 0
        elif k is Key.END:
            st.cur_col = len(lines[st.cur_line])
        else:
            return False
        if (lines, st.cur_line, st.cur_col) == before:
            return False
        if self._scroll():
            self.invalidate(self.inner)
        elif rows_from is not None:
            self._damage_from(rows_from)
        if lines != before[0]:
            self.emit(EventKind.CHANGE, ev)
        return True

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        st = self.state
        row, col = y - 2, x - 2
        if not (0 <= row < self.inner.h and 0 <= col < self.inner.w):
            return True
        st.cur_line = min(len(st.lines) - 1, st.scroll_top + row)
        st.cur_col = min(len(st.lines[st.cur_line]), st.col_offset + col)
        if self._scroll():
            self.invalidate(self.inner)
        return True


# --------------------------------------------------------------------------
# Lists
# --------------------------------------------------------------------------


def row_to_index(local_y: int, scroll_top: int, bordered: bool, count: int, visible_rows: int) -> int | None:
    """Map a 1-based local row to an item index (None for borders and blanks)."""
    r = local_y - 1 - (1 if bordered else 0)
    if r < 0 or r >= visible_rows:
        return None
    i = scroll_top + r
    return i if i < count else None


@dataclass
class ListBoxState:
    items: list[str]
    selected: int | None = None
    scroll_top: int = 0


class ListBox(Widget):
    focusable = True

    def __init__(
        self,
        x: int,
        y: int,
        width: int,
        height: int,
        items: Sequence[str] = (),
        *,
        bordered: bool = True,
        title: str = "",
        colors: Colors | None = None,
    ) -> None:
        super().__init__(Rect(x, y, width, height), colors=colors)
        self.bordered = bordered
        self.title = title
        self.state = ListBoxState(list(items), 0 if items else None)

    @property
    def items(self) -> list[str]:
        return self.state.items

    @property
    def selected(self) -> int | None:
        return self.state.selected

    @property
    def selected_text(self) -> str | None:
        s = self.state.selected
        return None if s is None else self.state.items[s]

    @property
    def inner(self) -> Rect:
        r = self.abs_rect
        return r.inset(1, 1, 1, 1) if self.bordered else r

    @property
    def visible_rows(self) -> int:
        return self.inner.h

    def set_items(self, items: Sequence[str]) -> None:
        self.state = ListBoxState(list(items), 0 if items else None)
        self.mark_dirty()

    def item_rect(self, i: int | None) -> Rect:
        if i is None:
            return EMPTY
        inner = self.inner
        row = i - self.state.scroll_top
        if not 0 <= row < inner.h:
            return EMPTY
        return Rect(inner.x, inner.y + row, inner.w, 1)

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.base_colors()
        fg, bg = colors
        r = self.abs_rect
        if self.bordered:
            fb.draw_border(r, BorderStyle.SINGLE, fg, bg)
            if self.title:
                fb.put_text(r.x + 1, r.y, fixed_width(self.title, max(0, r.w - 2)).rstrip(), fg, bg)
        inner = self.inner
        st = self.state
        for row in range(inner.h):
            i = st.scroll_top + row
            text = st.items[i] if i < len(st.items) else ""
            c = colors
            if i == st.selected:
                c = SELECTED if self.focused else SELECTED_IDLE
            fb.put_text(inner.x, inner.y + row, fixed_width(text, inner.w), *c)

    def focus_damage(self) -> list[Rect]:
        return [self.item_rect(self.state.selected)] if self.showing else []

    def select(self, i: int | None) -> bool:
        """Select ``i`` (clamped), scrolling it into view; True when changed."""
        st = self.state
        if not st.items:
            return False
        i = max(0, min(len(st.items) - 1, 0 if i is None else i))
        if i == st.selected:
            return False
        old = st.selected
        old_top = st.scroll_top
        st.selected = i
        h = max(1, self.visible_rows)
        st.scroll_top = max(st.scroll_top, i - h + 1)
        st.scroll_top = max(0, min(st.scroll_top, i))
        if st.scroll_top != old_top:
            self.invalidate(self.inner)
        else:
            st.scroll_top = old_top
            self.invalidate(self.item_rect(old))
            self.invalidate(self.item_rect(i))
        self.emit(EventKind.CHANGE, i)
        return True

    def handle_key(self, ev: KeyEvent, screen: Screen | None = None) -> bool:
        st = self.state
        if not st.items:
            return False
        cur = st.selected if st.selected is not None else 0
        page = max(1, self.visible_rows)
        k = ev.key
        if k is Key.UP:
            return self.select(cur - 1)
        if k is Key.DOWN:
            return self.select(cur + 1)
        if k is Key.KEY_PGUP:
            return self.select(cur - page)
        if k is Key.KEY_PGDOWN:
            return self.select(cur + page)
        if k is Key.HOME:
            return self.select(0)
        if k is Key.END:
            return self.select(len(st.items) - 1)
        if k is Key.ENTER and st.selected is not None:
            self.emit(EventKind.CLICK, st.selected)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        i = self.index_at(y)
        if i is None:
            return False
        self.select(i)
        if verdict is Verdict.ACCEPT_DOUBLE:
            self.emit(EventKind.CLICK, i)
        return True

    def index_at(self, local_y: int) -> int | None:
        st = self.state
        return row_to_index(local_y, st.scroll_top, self.bordered, len(st.items), self.visible_rows)


class ComboBox(Widget):
    """One-line selector that opens its list in a popup."""

    focusable = True
    max_popup_rows = 8

    def __init__(self, x: int, y: int, width: int, items: Sequence[str], *, colors: Colors | None = None) -> None:
        if width < 4:
            raise ValueError("ComboBox needs at least 4 cells")
        super().__init__(Rect(x, y, width, 1), colors=colors)
        self.items = list(items)
        self.selected: int | None = 0 if self.items else None
        self.is_open = False

    @property
    def selected_text(self) -> str:
        return "" if self.selected is None else self.items[self.selected]

    def set_selected(self, i: int | None) -> None:
        if i is not None:
            i = max(0, min(len(self.items) - 1, i))
        if i != self.selected:
            self.selected = i
            self.mark_dirty()
            self.emit(EventKind.CHANGE, i)

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.colors or FIELD
        fg, bg = inverse(colors) if self.focused else colors
        r = self.abs_rect
        fb.put_text(r.x, r.y, fixed_width(self.selected_text, r.w - 3) + "[v]", fg, bg)

    def handle_key(self, ev: KeyEvent, screen: Screen) -> bool:
        if not self.items:
            return False
        cur = self.selected or 0
        if ev.key is Key.UP:
            self.set_selected(cur - 1)
            return True
        if ev.key is Key.DOWN:
            self.set_selected(cur + 1)
            return True
        if ev.key in (Key.ENTER, Key.SPACE):
            self.open_popup(screen)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is MouseKind.PRESS and self.items:
            self.open_popup(screen)
            return True
        return False

    def popup_rect(self, screen_rect: Rect) -> Rect:
        r = self.abs_rect
        h = min(len(self.items), self.max_popup_rows) + 2
        y = r.y + 1
        if y + h - 1 > screen_rect.bottom and r.y - h >= screen_rect.y:
            y = r.y - h
        x = min(r.x, max(1, screen_rect.right - r.w + 1))
        return Rect(x, y, r.w, h).intersect(screen_rect)

    def open_popup(self, screen: Screen) -> int | None:
        """Modal list popup; returns the chosen index or None if cancelled."""
        from .nav import popup_close, popup_open

        fb = screen.fb
        region = self.popup_rect(fb.screen_rect)
        if region.h < 3:
            return None
        rows = region.h - 2
        hl = self.selected or 0
        top = max(0, hl - rows + 1)
        snap = popup_open(fb, region)
        self.is_open = True
        colors = self.colors or FIELD

        def paint() -> None:
            fg, bg = colors
            fb.fill_rect(region, " ", fg, bg)
            fb.draw_border(region, BorderStyle.SINGLE, fg, bg)
            for row in range(rows):
                i = top + row
                text = self.items[i] if i < len(self.items) else ""
                c = inverse(colors) if i == hl else colors
                fb.put_text(region.x + 1, region.y + 1 + row, fixed_width(text, region.w - 2), *c)

        chosen: int | None = None
        fb.cursor_req = None
        paint()
        while True:
            ev = screen.pump(redraw=False)
            if isinstance(ev, KeyEvent):
                if ev.key is Key.ESC:
                    break
                if ev.key in (Key.ENTER, Key.SPACE):
                    chosen = hl
                    break
                step = {Key.UP: -1, Key.DOWN: 1, Key.KEY_PGUP: -rows, Key.KEY_PGDOWN: rows}.get(ev.key)
                if ev.key is Key.HOME:
                    step = -hl
                elif ev.key is Key.END:
                    step = len(self.items) - 1 - hl
                if step:
                    hl = max(0, min(len(self.items) - 1, hl + step))
                    top = max(min(top, hl), hl - rows + 1)
                    paint()
            elif isinstance(ev, MouseEvent):
                if ev.kind is not MouseKind.PRESS:
                    continue
                if not region.contains(ev.x, ev.y):
                    screen.reinject(ev)
                    break
                if screen.click_filter.filter(self.id, screen.now_ms()) is Verdict.REJECT:
                    continue
                i = row_to_index(ev.y - region.y + 1, top, True, len(self.items), rows)
                if i is not None:
                    chosen = i
                    break
            elif not _is_tick(ev):
                screen.reinject(ev)
                break
        self.is_open = False
        popup_close(fb, snap, screen)
        if chosen is not None:
            self.set_selected(chosen)
        self.mark_dirty()
        return chosen


def _is_tick(ev: Any) -> bool:
    from .backend import TickEvent

    return isinstance(ev, TickEvent)


# --------------------------------------------------------------------------
# Toggles and numeric controls
# --------------------------------------------------------------------------


class CheckBox(Widget):
    """``[x] label``; SPACE/ENTER or a click toggles."""

    focusable = True

    def __init__(self, x: int, y: int, label: str, checked: bool = False, *, colors: Colors | None = None) -> None:
        super().__init__(Rect(x, y, len(label) + 4, 1), colors=colors)
        self.label = label
        self.checked = checked

    def set_checked(self, value: bool) -> None:
        if value != self.checked:
            self.checked = value
            self.mark_dirty()
            self.emit(EventKind.CHANGE, value)

    def toggle(self) -> None:
        self.set_checked(not self.checked)

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.base_colors()
        fg, bg = inverse(colors) if self.focused else colors
        r = self.abs_rect
        mark = "x" if self.checked else " "
        fb.put_text(r.x, r.y, fixed_width(f"[{mark}] {self.label}", r.w), fg, bg)

    def handle_key(self, ev: KeyEvent, screen: Screen | None = None) -> bool:
        if ev.key in (Key.SPACE, Key.ENTER):
            self.toggle()
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is MouseKind.PRESS:
            self.toggle()
            return True
        return False


class Via(enum.Enum):
    KEY = "KEY"
    MOUSE = "MOUSE"


def checkbox_toggle(cb: CheckBox, via: Via, t_ms: int, cf: ClickFilter) -> Changed:
    """Toggle ``cb``; mouse toggles pass through the click filter first."""
    if via is Via.MOUSE and cf.filter(cb.id if cb.id is not None else id(cb), t_ms) is Verdict.REJECT:
        return Changed.REJECTED
    cb.toggle()
    return Changed.CHANGED


class ProgressBar(Widget):
    """``[####----] NN%`` for a value in 0..100."""

    def __init__(self, x: int, y: int, width: int, value: int = 0, *, colors: Colors | None = None) -> None:
        if width < 8:
            raise ValueError("ProgressBar needs at least 8 cells")
        super().__init__(Rect(x, y, width, 1), colors=colors)
        self._value = 0
        self.value = value

    @property
    def value(self) -> int:
        return self._value

    @value.setter
    def value(self, v: int) -> None:
        v = max(0, min(100, int(v)))
        if v != self._value:
            self._value = v
            self.mark_dirty()

    @property
    def inner_width(self) -> int:
        return self.rect.w - 7

    def filled(self) -> int:
        iw = self.inner_width
        return (self._value * iw * 2 + 100) // 200

    def render_text(self) -> str:
        iw = self.inner_width
        n = self.filled()
        return "[" + "#" * n + "-" * (iw - n) + "]" + f"{self._value:4d}%"

    def paint(self, fb: FrameBuffer) -> None:
        fg, bg = self.base_colors()
        r = self.abs_rect
        fb.put_text(r.x, r.y, self.render_text(), fg, bg)


_NUMERIC = re.compile(r"-?[0-9]+")


@dataclass
class SpinnerState:
    value: int
    min: int
    max: int
    step: int = 1

    def __post_init__(self) -> None:
        if self.min > self.max:
            raise ValueError("min must not exceed max")
        if self.step <= 0:
            raise ValueError("step must be positive")
        self.value = max(self.min, min(self.max, self.value))


def spinner_accepts(text: str, allow_negative: bool) -> bool:
    if not _NUMERIC.fullmatch(text):
        return False
    return allow_negative or not text.startswith("-")


class Spinner(Widget):
    """``[-] value [+]`` with digit-only direct entry."""

    focusable = True

    def __init__(
        self,
        x: int,
        y: int,
        width: int,
        value: int = 0,
        min: int = 0,
        max: int = 100,
        step: int = 1,
        *,
        colors: Colors | None = None,
    ) -> None:
        if width < 7:
            raise ValueError("Spinner needs at least 7 cells")
        super().__init__(Rect(x, y, width, 1), colors=colors)
        self.state = SpinnerState(value, min, max, step)
        self.edit_text: str | None = None

    @property
    def value(self) -> int:
        return self.state.value

    def _set(self, v: int) -> Changed:
        st = self.state
        v = max(st.min, min(st.max, v))
        if v == st.value:
            return Changed.UNCHANGED
        st.value = v
        self.mark_dirty()
        self.emit(EventKind.CHANGE, v)
        return Changed.CHANGED

    def increment(self) -> Changed:
        return self._set(self.state.value + self.state.step)

    def decrement(self) -> Changed:
        return self._set(self.state.value - self.state.step)

    def edit(self, text: str) -> Changed:
        if not spinner_accepts(text, self.state.min < 0):
            return Changed.REJECTED
        self._set(int(text))
        return Changed.CHANGED

    @property
    def field_width(self) -> int:
        return self.rect.w - 6

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.colors or FIELD
        r = self.abs_rect
        fw = self.field_width
        fc = inverse(colors) if self.focused else colors
        text = self.edit_text if self.edit_text is not None else str(self.state.value)
        fb.put_text(r.x, r.y, "[-]", *BUTTON)
        fb.put_text(r.x + 3, r.y, fixed_width(text.rjust(fw) if self.edit_text is None else text, fw), *fc)
        fb.put_text(r.right - 2, r.y, "[+]", *BUTTON)

    def cursor_position(self) -> tuple[int, int] | None:
        if self.edit_text is None:
            return None
        r = self.abs_rect
        return r.x + 3 + min(len(self.edit_text), self.field_width - 1), r.y

    def _commit(self) -> None:
        text, self.edit_text = self.edit_text, None
        if text:
            self.edit(text)
        self.mark_dirty()

    def on_blur(self, screen: Screen) -> None:
        if self.edit_text is not None:
            self._commit()

    def handle_key(self, ev: KeyEvent, screen: Screen | None = None) -> bool:
        ch = ev.char if ev.key is Key.CHAR else ""
        if self.edit_text is not None:
            if ev.key is Key.ENTER:
                self._commit()
            elif ev.key is Key.BACKSPACE:
                self.edit_text = self.edit_text[:-1]
            elif ch.isascii() and ch.isdigit() or (ch == "-" and not self.edit_text and self.state.min < 0):
                if len(self.edit_text) < self.field_width - 1:
                    self.edit_text += ch
            else:
                return ev.key is Key.CHAR
            self.mark_dirty()
            return True
        if ev.key in (Key.UP, Key.RIGHT) or ch == "+":
            self.increment()
            return True
        if ev.key in (Key.DOWN, Key.LEFT) or ch == "-":
            self.decrement()
            return True
        if ev.key is Key.ENTER:
            self.edit_text = ""
            self.mark_dirty()
            return True
        if ch.isascii() and ch.isdigit():
            self.edit_text = ch
            self.mark_dirty()
            return True
        return ev.key is Key.CHAR

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        if self.edit_text is not None:
            self._commit()
        if x <= 3:
            self.decrement()
        elif x >= self.rect.w - 2:
            self.increment()
        return True


class Orientation(enum.Enum):
    HORIZONTAL = "HORIZONTAL"
    VERTICAL = "VERTICAL"


@dataclass
class ScrollBarState:
    orientation: Orientation
    value: int
    min: int
    max: int

    def __post_init__(self) -> None:
        if self.min > self.max:
            raise ValueError("min must not exceed max")
        self.value = max(self.min, min(self.max, self.value))


def track_value(pos: int, track_len: int, lo: int, hi: int) -> int:
    """Value for a click at 1-based ``pos`` on a track of ``track_len`` cells."""
    pos = max(1, min(track_len, pos))
    if track_len <= 1:
        return lo
    num = (pos - 1) * (hi - lo)
    den = track_len - 1
    return max(lo, min(hi, lo + (2 * num + den) // (2 * den)))


class ScrollBar(Widget):
    """Arrow-capped scroll bar with an optional value label 2 cells away."""

    focusable = True

    def __init__(
        self,
        x: int,
        y: int,
        length: int,
        orientation: Orientation = Orientation.HORIZONTAL,
        min: int = 0,
        max: int = 100,
        value: int = 0,
        *,
        label_width: int = 0,
        colors: Colors | None = None,
    ) -> None:
        if length < 3:
            raise ValueError("ScrollBar needs at least 3 cells")
        self.length = length
        self.label_width = label_width
        gap = 2 + label_width if label_width else 0
        if orientation is Orientation.HORIZONTAL:
            rect = Rect(x, y, length + gap, 1)
        else:
            rect = Rect(x, y, 1 + gap, length)
        super().__init__(rect, colors=colors)
        self.state = ScrollBarState(orientation, value, min, max)

    @property
    def value(self) -> int:
        return self.state.value

    @property
    def track_len(self) -> int:
        return self.length - 2

    def set_value(self, v: int) -> bool:
        st = self.state
        v = max(st.min, min(st.max, v))
        if v == st.value:
            return False
        st.value = v
        self.mark_dirty()
        self.emit(EventKind.CHANGE, v)
        return True

    def click_track(self, pos: int) -> int:
        st = self.state
        self.set_value(track_value(pos, self.track_len, st.min, st.max))
        return st.value

    def click(self, pos: int) -> int:
        """Handle a click at 1-based ``pos`` along the bar (arrows included)."""
        if pos <= 1:
            self.set_value(self.state.value - 1)
        elif pos >= self.length:
            self.set_value(self.state.value + 1)
        else:
            self.click_track(pos - 1)
        return self.state.value

    def thumb_pos(self) -> int:
        st = self.state
        if st.max == st.min or self.track_len <= 1:
            return 1
        return 1 + ((st.value - st.min) * (self.track_len - 1) * 2 + (st.max - st.min)) // (2 * (st.max - st.min))

    def _bar_origin(self) -> tuple[int, int]:
        r = self.abs_rect
        if self.state.orientation is Orientation.HORIZONTAL:
            return r.x, r.y
        return r.right, r.y

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.base_colors()
        fb.fill_rect(self.abs_rect, " ", *colors)
        bar = inverse(colors) if self.focused else colors
        thumb = self.thumb_pos()
        horiz = self.state.orientation is Orientation.HORIZONTAL
        track = "-" if horiz else "|"
        cells = ("<" if horiz else "^") + "".join(
            "#" if i == thumb else track for i in range(1, self.track_len + 1)
        ) + (">" if horiz else "v")
        bx, by = self._bar_origin()
        if horiz:
            fb.put_text(bx, by, cells, *bar)
        else:
            for i, ch in enumerate(cells):
                fb.put_text(bx, by + i, ch, *bar)
        if self.label_width:
            label = fixed_width(str(self.state.value), self.label_width)
            r = self.abs_rect
            if horiz:
                fb.put_text(bx + self.length + 2, by, label, *colors)
            else:
                fb.put_text(r.x, r.bottom, label, *colors)

    def handle_key(self, ev: KeyEvent, screen: Screen | None = None) -> bool:
        st = self.state
        page = max(1, (st.max - st.min) // 10)
        k = ev.key
        delta = {Key.LEFT: -1, Key.UP: -1, Key.RIGHT: 1, Key.DOWN: 1, Key.KEY_PGUP: -page, Key.KEY_PGDOWN: page}.get(k)
        if delta is not None:
            self.set_value(st.value + delta)
            return True
        if k is Key.HOME:
            self.set_value(st.min)
            return True
        if k is Key.END:
            self.set_value(st.max)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        if self.state.orientation is Orientation.HORIZONTAL:
            if x <= self.length:
                self.click(x)
        elif x == self.rect.w:
            self.click(y)
        return True
