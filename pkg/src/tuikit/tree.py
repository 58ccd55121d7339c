"""Tree view with ``[+]``/``[-]`` expander glyphs and row-bounded repaint."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator, Sequence

from .backend import Key, KeyEvent, MouseEvent, MouseKind
from .events import EventKind, Verdict
from .geometry import EMPTY, Rect
from .render import BorderStyle, FrameBuffer, fixed_width
from .widgets import SELECTED, SELECTED_IDLE, Colors, Widget

if TYPE_CHECKING:
    from .events import Screen

INDENT = 2
GLYPH_COLLAPSED = "[+] "
GLYPH_EXPANDED = "[-] "
GLYPH_LEAF = "    "


class NotAParent(ValueError):
    pass


@dataclass(eq=False)
class TreeNode:
    label: str
    children: list[TreeNode] = field(default_factory=list)
    expanded: bool = False

    @property
    def is_parent(self) -> bool:
        return bool(self.children)

    def walk(self) -> Iterator[TreeNode]:
        yield self
        for c in self.children:
            yield from c.walk()


def flatten(roots: Sequence[TreeNode]) -> list[tuple[TreeNode, int]]:
    """Preorder list of visible nodes, descending only into expanded ones."""
    out: list[tuple[TreeNode, int]] = []
    stack = [(n, 0) for n in reversed(roots)]
    while stack:
        node, depth = stack.pop()
        out.append((node, depth))
        if node.expanded:
            stack.extend((c, depth + 1) for c in reversed(node.children))
    return out


def row_text(node: TreeNode, depth: int) -> str:
    glyph = GLYPH_LEAF
    if node.is_parent:
        glyph = GLYPH_EXPANDED if node.expanded else GLYPH_COLLAPSED
    return " " * (INDENT * depth) + glyph + node.label


class TreeView(Widget):
    focusable = True

    def __init__(
        self,
        x: int,
        y: int,
        width: int,
        height: int,
        roots: Sequence[TreeNode],
        *,
        title: str = "",
        bordered: bool = True,
        colors: Colors | None = None,
    ) -> None:
        super().__init__(Rect(x, y, width, height), colors=colors)
        self.roots = list(roots)
        self.title = title
        self.bordered = bordered
        self.current = 0
        self.scroll_top = 0
        self._visible_rows = flatten(self.roots)

    @property
    def visible_nodes(self) -> list[tuple[TreeNode, int]]:
        return self._visible_rows

    def refresh_rows(self) -> None:
        self._visible_rows = flatten(self.roots)
        self.current = max(0, min(self.current, len(self._visible_rows) - 1))

    @property
    def inner(self) -> Rect:
        r = self.abs_rect
        return r.inset(1, 1, 1, 1) if self.bordered else r

    @property
    def page_rows(self) -> int:
        return self.inner.h

    def row_rect(self, i: int) -> Rect:
        inner = self.inner
        row = i - self.scroll_top
        if not 0 <= row < inner.h:
            return EMPTY
        return Rect(inner.x, inner.y + row, inner.w, 1)

    def rows_rects(self, rows: set[int]) -> list[Rect]:
        return [r for r in (self.row_rect(i) for i in sorted(rows)) if not r.is_empty()]

    # -- drawing -----------------------------------------------------------

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.base_colors()
        r = self.abs_rect
        fb.fill_rect(r, " ", *colors)
        if self.bordered:
            fb.draw_border(r, BorderStyle.SINGLE, *colors)
            if self.title:
                fb.put_text(r.x + 1, r.y, fixed_width(f" {self.title} ", max(0, r.w - 2)).rstrip(), *colors)
        inner = self.inner
        for row in range(inner.h):
            i = self.scroll_top + row
            if i >= len(self._visible_rows):
                break
            node, depth = self._visible_rows[i]
            c = colors
            if i == self.current:
                c = SELECTED if self.focused else SELECTED_IDLE
            fb.put_text(inner.x, inner.y + row, fixed_width(row_text(node, depth), inner.w), *c)

    def focus_damage(self) -> list[Rect]:
        return self.rows_rects({self.current}) if self.showing else []

    # -- state changes -----------------------------------------------------

    def _scroll_into_view(self) -> bool:
        old = self.scroll_top
        h = max(1, self.page_rows)
        self.scroll_top = max(self.scroll_top, self.current - h + 1)
        self.scroll_top = max(0, min(self.scroll_top, self.current))
        return self.scroll_top != old

    def select_row(self, i: int) -> set[int]:
        """Select visible row ``i``; return the rows to repaint."""
        if not self._visible_rows:
            return set()
        i = max(0, min(len(self._visible_rows) - 1, i))
        old = self.current
        if i == old:
            return set()
        self.current = i
        if self._scroll_into_view():
            rows = set(range(self.scroll_top, self.scroll_top + self.page_rows))
        else:
            rows = {old, i}
        for rect in self.rows_rects(rows):
            self.invalidate(rect)
        self.emit(EventKind.CHANGE, i)
        return rows

    def navigate(self, key: Key) -> set[int]:
        page = max(1, self.page_rows)
        target = {
            Key.UP: self.current - 1,
            Key.DOWN: self.current + 1,
            Key.HOME: 0,
            Key.END: len(self._visible_rows) - 1,
            Key.KEY_PGUP: self.current - page,
            Key.KEY_PGDOWN: self.current + page,
        }.get(key)
        if target is None:
            return set()
        return self.select_row(target)

    def toggle(self, row: int) -> set[int]:
        """Expand or collapse the node at visible ``row``; return rows to repaint."""
        node, _depth = self._visible_rows[row]
        if not node.is_parent:
            raise NotAParent(node.label)
        cur_node = self._visible_rows[self.current][0]
        node.expanded = not node.expanded
        self._visible_rows = flatten(self.roots)
        index = {id(n): i for i, (n, _) in enumerate(self._visible_rows)}
        self.current = index.get(id(cur_node), row)
        old_top = self.scroll_top
        self._scroll_into_view()
        start = row if self.scroll_top == old_top else self.scroll_top
        rows = set(range(max(start, self.scroll_top), self.scroll_top + self.page_rows))
        for rect in self.rows_rects(rows):
            self.invalidate(rect)
        self.emit(EventKind.CHANGE, row)
        return rows

    def row_at(self, local_y: int) -> int | None:
        r = local_y - 1 - (1 if self.bordered else 0)
        if not 0 <= r < self.page_rows:
            return None
        i = self.scroll_top + r
        return i if i < len(self._visible_rows) else None

    def glyph_hit(self, row: int, local_x: int) -> bool:
        node, depth = self._visible_rows[row]
        if not node.is_parent:
            return False
        start = (1 if self.bordered else 0) + INDENT * depth + 1
        return start <= local_x <= start + 2

    # -- events ------------------------------------------------------------

    def handle_key(self, ev: KeyEvent, screen: Screen | None = None) -> bool:
        if not self._visible_rows:
            return False
        node = self._visible_rows[self.current][0]
        ch = ev.char if ev.key is Key.CHAR else ""
        if ev.key in (Key.ENTER, Key.SPACE) or (ch == "+" and not node.expanded) or (ch == "-" and node.expanded):
            if node.is_parent:
                self.toggle(self.current)
            return True
        if ch in ("+", "-"):
            return True
        if ev.key in (Key.UP, Key.DOWN, Key.HOME, Key.END, Key.KEY_PGUP, Key.KEY_PGDOWN):
            self.navigate(ev.key)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        row = self.row_at(y)
        if row is None:
            return False
        if self.glyph_hit(row, x):
            self.toggle(row)
        else:
            self.select_row(row)
        return True
