"""Menu bar with nested dropdowns, tab control, and popup save/restore.

Every dropdown level is a popup: the cells it covers are copied before it
draws and written back when it closes, followed by a damage redraw of the
region so widgets that changed underneath show their current state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Sequence

from .backend import Color, Key, KeyEvent, MouseEvent, MouseKind, ResizeEvent, TickEvent
from .events import EventKind, Verdict
from .geometry import Rect
from .render import BorderStyle, Cell, FrameBuffer, fixed_width
from .widgets import Colors, Container, Widget, inverse

if TYPE_CHECKING:
    from .events import Screen

MENU: Colors = (Color.BLACK, Color.GREY)
MENU_HIGHLIGHT: Colors = (Color.WHITE, Color.BLACK)
TAB_BODY: Colors = (Color.WHITE, Color.BLUE)


# --------------------------------------------------------------------------
# Popups
# --------------------------------------------------------------------------


@dataclass
class PopupSnapshot:
    region: Rect
    saved: list[list[Cell]]


def popup_open(fb: FrameBuffer, region: Rect) -> PopupSnapshot:
    region = region.intersect(fb.screen_rect)
    return PopupSnapshot(region, fb.copy_region(region))


def popup_close(fb: FrameBuffer, snap: PopupSnapshot, scr: Screen | None = None) -> None:
    """Write the saved cells back, then let live widgets repaint the region."""
    if snap.region.is_empty():
        return
    fb.paste_region(snap.region, snap.saved)
    if scr is not None:
        scr.damage_redraw(fb, snap.region)


# --------------------------------------------------------------------------
# Menus
# --------------------------------------------------------------------------


class MenuKind(enum.Enum):
    ACTION = "ACTION"
    CHECK = "CHECK"
    SEPARATOR = "SEPARATOR"
    SUBMENU = "SUBMENU"


MenuAction = Callable[["Screen", "MenuItem"], Any]


@dataclass(eq=False)
class MenuItem:
    kind: MenuKind
    label: str = ""
    checked: bool = False
    shortcut_hint: str | None = None
    children: list[MenuItem] = field(default_factory=list)
    action: MenuAction | None = None

    def __post_init__(self) -> None:
        if self.kind is MenuKind.SEPARATOR and (self.label or self.action):
            raise ValueError("a separator has no label or action")
        if self.kind is MenuKind.SUBMENU and not self.children:
            raise ValueError(f"submenu {self.label!r} needs at least one child")
        if self.kind is not MenuKind.SUBMENU and self.children:
            raise ValueError("only submenus have children")

    @classmethod
    def item(cls, label: str, action: MenuAction | None = None, hint: str | None = None) -> MenuItem:
        return cls(MenuKind.ACTION, label, shortcut_hint=hint, action=action)

    @classmethod
    def check(cls, label: str, checked: bool = False, hint: str | None = None) -> MenuItem:
        return cls(MenuKind.CHECK, label, checked=checked, shortcut_hint=hint)

    @classmethod
    def separator(cls) -> MenuItem:
        return cls(MenuKind.SEPARATOR)

    @classmethod
    def submenu(cls, label: str, children: Sequence[MenuItem]) -> MenuItem:
        return cls(MenuKind.SUBMENU, label, children=list(children))

    @property
    def selectable(self) -> bool:
        return self.kind is not MenuKind.SEPARATOR


def first_selectable(items: Sequence[MenuItem]) -> int:
    for i, it in enumerate(items):
        if it.selectable:
            return i
    return 0


def step_selectable(items: Sequence[MenuItem], index: int, direction: int) -> int:
    """Next selectable index from ``index`` in ``direction``, wrapping."""
    n = len(items)
    for k in range(1, n + 1):
        j = (index + direction * k) % n
        if items[j].selectable:
            return j
    return index


def dropdown_layout(items: Sequence[MenuItem]) -> tuple[int, int, int, bool]:
    """(prefix width, label width, hint width, has submenu) for a dropdown."""
    prefix = 4 if any(i.kind is MenuKind.CHECK for i in items) else 0
    label_w = max((len(i.label) for i in items), default=0)
    hint_w = max((len(i.shortcut_hint or "") for i in items), default=0)
    has_sub = any(i.kind is MenuKind.SUBMENU for i in items)
    return prefix, label_w, hint_w, has_sub


def dropdown_size(items: Sequence[MenuItem]) -> tuple[int, int]:
    prefix, label_w, hint_w, has_sub = dropdown_layout(items)
    inner = 1 + prefix + label_w + (2 + hint_w if hint_w else 0) + (2 if has_sub else 0) + 1
    return inner + 2, len(items) + 2


def item_text(item: MenuItem, layout: tuple[int, int, int, bool]) -> str:
    prefix, label_w, hint_w, has_sub = layout
    text = " "
    if prefix:
        text += ("[x] " if item.checked else "[ ] ") if item.kind is MenuKind.CHECK else "    "
    text += item.label.ljust(label_w)
    if hint_w:
        text += "  " + (item.shortcut_hint or "").rjust(hint_w)
    if has_sub:
        text += " >" if item.kind is MenuKind.SUBMENU else "  "
    return text + " "


def paint_dropdown(fb: FrameBuffer, rect: Rect, items: Sequence[MenuItem], highlight: int | None) -> None:
    fb.fill_rect(rect, " ", *MENU)
    fb.draw_border(rect, BorderStyle.SINGLE, *MENU)
    layout = dropdown_layout(items)
    tl, tr, bl, br, hz, vt = fb.border_glyphs(BorderStyle.SINGLE)
    for i, item in enumerate(items):
        y = rect.y + 1 + i
        if item.kind is MenuKind.SEPARATOR:
            fb.put_text(rect.x, y, tl + hz * (rect.w - 2) + tr, *MENU)
            continue
        colors = MENU_HIGHLIGHT if i == highlight else MENU
        fb.put_text(rect.x + 1, y, fixed_width(item_text(item, layout), rect.w - 2), *colors)


@dataclass
class MenuLevel:
    items: list[MenuItem]
    index: int
    rect: Rect
    snapshot: PopupSnapshot


class MenuBar(Widget):
    """One-row bar of top-level menus; F10 or a click opens the modal loop."""

    global_keys = True

    def __init__(self, y: int, width: int, menus: Sequence[MenuItem], *, x: int = 1) -> None:
        super().__init__(Rect(x, y, width, 1))
        for m in menus:
            if m.kind is not MenuKind.SUBMENU:
                raise ValueError("top-level menu entries must be submenus")
        self.menus = list(menus)
        self.open_index: int | None = None
        self.levels: list[MenuLevel] = []
        self.last_path: list[int] | None = None

    def title_spans(self) -> list[tuple[int, int]]:
        """Absolute (x, width) of every top-level title."""
        x = self.abs_rect.x + 1
        out = []
        for m in self.menus:
            w = len(m.label) + 2
            out.append((x, w))
            x += w
        return out

    def title_at(self, x: int, y: int) -> int | None:
        if y != self.abs_rect.y:
            return None
        for i, (tx, w) in enumerate(self.title_spans()):
            if tx <= x < tx + w:
                return i
        return None

    def paint(self, fb: FrameBuffer) -> None:
        r = self.abs_rect
        fb.fill_rect(r, " ", *MENU)
        for i, (tx, _w) in enumerate(self.title_spans()):
            colors = MENU_HIGHLIGHT if i == self.open_index else MENU
            fb.put_text(tx, r.y, f" {self.menus[i].label} ", *colors)

    def on_screen_resize(self, size) -> None:
        if self.rect.w != size.cols and self.rect.x == 1:
            self.rect = Rect(1, self.rect.y, size.cols, 1)
            self.mark_dirty()

    def handle_global_key(self, ev: KeyEvent, screen: Screen) -> bool:
        if ev.key is Key.F10 and self.visible:
            self.last_path = menubar_loop(self, screen)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        t = self.title_at(ev.x, ev.y)
        if t is None:
            return False
        self.last_path = menubar_loop(self, screen, t)
        return True

    # -- modal loop helpers ---------------------------------------------------

    def path(self) -> list[int]:
        return [self.open_index if self.open_index is not None else 0] + [lv.index for lv in self.levels]

    def _repaint_bar(self, fb: FrameBuffer) -> None:
        with fb.clipped(self.visible_rect()):
            self.paint(fb)

    def _place(self, fb: FrameBuffer, items: list[MenuItem], x: int, y: int, left_alt: int | None) -> Rect:
        w, h = dropdown_size(items)
        scr = fb.screen_rect
        if x + w - 1 > scr.right:
            x = left_alt - w + 1 if left_alt is not None and left_alt - w + 1 >= 1 else scr.right - w + 1
        x = max(1, x)
        top_limit = self.abs_rect.bottom + 1
        if y + h - 1 > scr.bottom:
            y = scr.bottom - h + 1
        y = max(min(top_limit, scr.bottom), y)
        return Rect(x, y, w, h)

    def _push_level(self, fb: FrameBuffer, items: list[MenuItem], rect: Rect) -> None:
        snap = popup_open(fb, rect)
        level = MenuLevel(items, first_selectable(items), rect, snap)
        self.levels.append(level)
        paint_dropdown(fb, rect, items, level.index)

    def _pop_level(self, fb: FrameBuffer, screen: Screen) -> None:
        level = self.levels.pop()
        popup_close(fb, level.snapshot, screen)
        for lv in self.levels:
            if lv.rect.intersects(level.snapshot.region):
                with fb.clipped(level.snapshot.region):
                    paint_dropdown(fb, lv.rect, lv.items, lv.index)

    def _close_all(self, fb: FrameBuffer, screen: Screen) -> None:
        while self.levels:
            self._pop_level(fb, screen)

    def _open_top(self, fb: FrameBuffer, screen: Screen, t: int) -> None:
        self._close_all(fb, screen)
        self.open_index = t
        self._repaint_bar(fb)
        tx, _w = self.title_spans()[t]
        items = self.menus[t].children
        self._push_level(fb, items, self._place(fb, items, tx, self.abs_rect.y + 1, None))

    def _open_child(self, fb: FrameBuffer) -> None:
        level = self.levels[-1]
        item = level.items[level.index]
        y = level.rect.y + 1 + level.index - 1
        rect = self._place(fb, item.children, level.rect.right + 1, y, level.rect.x - 1)
        self._push_level(fb, item.children, rect)

    def _set_highlight(self, fb: FrameBuffer, index: int) -> None:
        level = self.levels[-1]
        level.index = index
        paint_dropdown(fb, level.rect, level.items, index)


def menubar_loop(mb: MenuBar, scr: Screen, start: int = 0) -> list[int] | None:
    """Run the menu until an action fires (returns its path) or it is dismissed."""
    fb = scr.fb
    if not mb.menus:
        return None
    mb.levels = []
    mb._open_top(fb, scr, start)
    result: list[int] | None = None
    activated: MenuItem | None = None
    fb.cursor_req = None
    n = len(mb.menus)
    while True:
        ev = scr.pump(redraw=False)
        if isinstance(ev, KeyEvent):
            level = mb.levels[-1]
            item = level.items[level.index]
            k = ev.key
            if k is Key.ESC:
                if len(mb.levels) > 1:
                    mb._pop_level(fb, scr)
                    continue
                break
            if k in (Key.UP, Key.DOWN):
                mb._set_highlight(fb, step_selectable(level.items, level.index, -1 if k is Key.UP else 1))
            elif k is Key.HOME:
                mb._set_highlight(fb, step_selectable(level.items, -1, 1))
            elif k is Key.END:
                mb._set_highlight(fb, step_selectable(level.items, 0, -1))
            elif k is Key.RIGHT:
                if item.kind is MenuKind.SUBMENU:
                    mb._open_child(fb)
                else:
                    mb._open_top(fb, scr, (mb.open_index + 1) % n)
            elif k is Key.LEFT:
                if len(mb.levels) > 1:
                    mb._pop_level(fb, scr)
                else:
                    mb._open_top(fb, scr, (mb.open_index - 1) % n)
            elif k in (Key.ENTER, Key.SPACE):
                if item.kind is MenuKind.SUBMENU:
                    mb._open_child(fb)
                elif item.kind is MenuKind.CHECK:
                    item.checked = not item.checked
                    mb._set_highlight(fb, level.index)
                elif item.kind is MenuKind.ACTION:
                    result, activated = mb.path(), item
                    break
        elif isinstance(ev, MouseEvent):
            if ev.kind is not MouseKind.PRESS:
                continue
            t = mb.title_at(ev.x, ev.y)
            if t is not None:
                if t == mb.open_index:
                    break
                mb._open_top(fb, scr, t)
                continue
            depth = next((d for d in range(len(mb.levels) - 1, -1, -1) if mb.levels[d].rect.contains(ev.x, ev.y)), None)
            if depth is None:
                mb._close_all(fb, scr)
                scr.reinject(ev)
                break
            if scr.click_filter.filter(mb.id, scr.now_ms()) is Verdict.REJECT:
                continue
            while len(mb.levels) > depth + 1:
                mb._pop_level(fb, scr)
            level = mb.levels[-1]
            i = ev.y - level.rect.y - 1
            if not 0 <= i < len(level.items) or not level.items[i].selectable:
                continue
            mb._set_highlight(fb, i)
            item = level.items[i]
            if item.kind is MenuKind.SUBMENU:
                mb._open_child(fb)
            elif item.kind is MenuKind.CHECK:
                item.checked = not item.checked
                mb._set_highlight(fb, i)
            else:
                result, activated = mb.path(), item
                break
        elif isinstance(ev, ResizeEvent):
            scr.reinject(ev)
            break
        elif not isinstance(ev, TickEvent):
            break
    mb._close_all(fb, scr)
    mb.open_index = None
    mb._repaint_bar(fb)
    mb.mark_dirty()
    if activated is not None:
        mb.emit(EventKind.CLICK, result)
        if activated.action is not None:
            activated.action(scr, activated)
    return result


# --------------------------------------------------------------------------
# Tabs
# --------------------------------------------------------------------------


@dataclass(eq=False)
class TabPage:
    title: str
    widgets: list[Widget] = field(default_factory=list)


class TabControl(Container):
    """Header row of page titles above a framed content area.

    Children are added per page; only the active page's children are shown,
    hit-tested or reachable by focus traversal.  F11 cycles pages.
    """

    global_keys = True

    def __init__(self, rect: Rect, titles: Sequence[str], *, colors: Colors | None = None) -> None:
        if not titles:
            raise ValueError("a tab control needs at least one page")
        if rect.w < 4 or rect.h < 4:
            raise ValueError("tab control needs at least 4x4 cells")
        super().__init__(rect, colors=colors)
        self.pages = [TabPage(t) for t in titles]
        self.active = 0

    def add_to(self, page: int | str, widget: Widget) -> Widget:
        if isinstance(page, str):
            page = [p.title for p in self.pages].index(page)
        self.pages[page].widgets.append(widget)
        return self.add(widget)

    def page_of(self, widget: Widget) -> int | None:
        for i, p in enumerate(self.pages):
            if widget in p.widgets:
                return i
        return None

    def shows_child(self, child: Widget) -> bool:
        return child in self.pages[self.active].widgets

    def content_origin(self) -> tuple[int, int]:
        r = self.abs_rect
        return r.x + 1, r.y + 2

    def content_rect(self) -> Rect:
        return self.abs_rect.inset(1, 2, 1, 1)

    def content_colors(self) -> Colors:
        return self.colors or TAB_BODY

    def header_spans(self) -> list[tuple[int, int]]:
        x = self.abs_rect.x + 1
        out = []
        for p in self.pages:
            w = len(p.title) + 2
            out.append((x, w))
            x += w + 1
        return out

    def paint(self, fb: FrameBuffer) -> None:
        colors = self.content_colors()
        r = self.abs_rect
        fb.fill_rect(r, " ", *colors)
        for i, (x, _w) in enumerate(self.header_spans()):
            c = inverse(colors) if i == self.active else colors
            fb.put_text(x, r.y, f" {self.pages[i].title} ", *c)
        fb.draw_border(Rect(r.x, r.y + 1, r.w, r.h - 1), BorderStyle.SINGLE, *colors)

    def switch(self, target: int, *, relative: bool = False) -> None:
        n = len(self.pages)
        new = (self.active + target) % n if relative else target
        if not 0 <= new < n:
            raise IndexError(f"no tab page {target}")
        if new == self.active:
            return
        scr = self.screen
        had_focus = scr is not None and scr.focus is not None and self.page_of(scr.focus) == self.active
        self.active = new
        self.mark_dirty()
        if scr is not None and (had_focus or scr.focus is None or scr.focus is self):
            first = next(iter(self.focus_candidates()), None)
            scr.set_focus(first)
        self.emit(EventKind.CHANGE, new)

    def handle_global_key(self, ev: KeyEvent, screen: Screen) -> bool:
        if ev.key is Key.F11 and self.showing:
            self.switch(1, relative=True)
            return True
        return False

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS or y != 1:
            return False
        for i, (hx, w) in enumerate(self.header_spans()):
            if hx <= ev.x < hx + w:
                self.switch(i)
                return True
        return False
