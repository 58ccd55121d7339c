"""Overlapping windows on a desktop with a taskbar.

Windows are children of the :class:`Desktop` kept in back-to-front order.
Moves and resizes damage only ``union_bounds(old, new)``; the screen then
repaints every widget touching that rect in z-order.  Restoring a window to
its normal size repaints the whole desktop.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Sequence

from .backend import Color, Key, KeyEvent, MouseEvent, MouseKind, TerminalSize
from .events import EventKind, Verdict
from .geometry import Rect
from .render import BorderStyle, FrameBuffer, fixed_width
from .widgets import Colors, Container, Widget

if TYPE_CHECKING:
    from .events import Screen

DESKTOP: Colors = (Color.WHITE, Color.BLUE)
WINDOW: Colors = (Color.BLACK, Color.GREY)
TITLE_ACTIVE: Colors = (Color.WHITE, Color.CYAN)
TITLE_INACTIVE: Colors = (Color.BLACK, Color.GREY)
TASKBAR: Colors = (Color.BLACK, Color.GREY)
TASK_ACTIVE: Colors = (Color.WHITE, Color.BLACK)
TASK_MINIMIZED: Colors = (Color.DARKGREY, Color.GREY)

MIN_W = 6
MIN_H = 4


class WindowState(enum.Enum):
    NORMAL = "NORMAL"
    MINIMIZED = "MINIMIZED"
    MAXIMIZED = "MAXIMIZED"


class DragMode(enum.Enum):
    IDLE = "IDLE"
    MOVING = "MOVING"
    RESIZING = "RESIZING"


class RouteResult(enum.Enum):
    HANDLED = "HANDLED"
    PASS_TO_ACTIVE = "PASS_TO_ACTIVE"


class TitleZone(enum.Enum):
    MINIMIZE = "MINIMIZE"
    MAXIMIZE = "MAXIMIZE"
    CLOSE = "CLOSE"
    DRAG = "DRAG"


@dataclass
class DragState:
    mode: DragMode = DragMode.IDLE
    window: Window | None = None
    dx: int = 0
    dy: int = 0


class Window(Container):
    """Titled, bordered container; children are clipped to the interior."""

    def __init__(self, rect: Rect, title: str, *, colors: Colors | None = None) -> None:
        rect = Rect(rect.x, rect.y, max(MIN_W, rect.w), max(MIN_H, rect.h))
        super().__init__(rect, colors=colors)
        self.title = title
        self.state = WindowState.NORMAL
        self.restore_rect = rect
        self.focused_child: Widget | None = None
        self._pre_min_state = WindowState.NORMAL

    @property
    def desktop(self) -> Desktop | None:
        return self.parent if isinstance(self.parent, Desktop) else None

    def content_origin(self) -> tuple[int, int]:
        r = self.abs_rect
        return r.x + 1, r.y + 1

    def content_rect(self) -> Rect:
        return self.abs_rect.inset(1, 1, 1, 1)

    def content_colors(self) -> Colors:
        return self.colors or WINDOW

    @property
    def is_active(self) -> bool:
        d = self.desktop
        return d is not None and d.active is self

    def button_spans(self) -> list[tuple[TitleZone, int]]:
        """(zone, local start column) for each title button that fits."""
        w = self.rect.w
        spans = [(TitleZone.MINIMIZE, w - 8), (TitleZone.MAXIMIZE, w - 5), (TitleZone.CLOSE, w - 2)]
        return [(z, x) for z, x in spans if x >= 1]

    def title_zone(self, lx: int) -> TitleZone:
        for zone, start in self.button_spans():
            if start <= lx <= start + 2:
                return zone
        return TitleZone.DRAG

    def is_grip(self, lx: int, ly: int) -> bool:
        return lx == self.rect.w and ly == self.rect.h

    def paint(self, fb: FrameBuffer) -> None:
        r = self.abs_rect
        body = self.content_colors()
        fb.fill_rect(r, " ", *body)
        title_colors = TITLE_ACTIVE if self.is_active else TITLE_INACTIVE
        buttons = {TitleZone.MINIMIZE: "[-]", TitleZone.MAXIMIZE: "[□]" if fb.unicode else "[^]", TitleZone.CLOSE: "[X]"}
        spans = self.button_spans()
        title_w = (spans[0][1] - 1 if spans else r.w)
        fb.put_text(r.x, r.y, fixed_width(" " + self.title, title_w), *title_colors)
        for zone, start in spans:
            fb.put_text(r.x + start - 1, r.y, buttons[zone], *title_colors)
        _tl, _tr, bl, _br, hz, vt = fb.border_glyphs(BorderStyle.SINGLE)
        for py in range(r.y + 1, r.bottom):
            fb.put_text(r.x, py, vt, *body)
            fb.put_text(r.right, py, vt, *body)
        grip = "+" if not fb.unicode else "┘"
        fb.put_text(r.x, r.bottom, bl + hz * (r.w - 2), *body)
        fb.put_text(r.right, r.bottom, grip, *body)

    def focus_candidates(self) -> Iterator[Widget]:
        if self.state is WindowState.MINIMIZED:
            return iter(())
        return super().focus_candidates()

    def on_child_focused(self, w: Widget) -> None:
        self.focused_child = w

    def on_descendant_press(self, w: Widget, screen: Screen) -> None:
        d = self.desktop
        if d is not None:
            d.raise_window(self)

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        d = self.desktop
        if d is None:
            return False
        if ev.kind is MouseKind.RELEASE:
            return d.end_drag(ev.x, ev.y)
        d.raise_window(self)
        if y == 1:
            zone = self.title_zone(x)
            if zone is TitleZone.MINIMIZE:
                d.set_state(self, WindowState.MINIMIZED)
            elif zone is TitleZone.MAXIMIZE:
                to = WindowState.NORMAL if self.state is WindowState.MAXIMIZED else WindowState.MAXIMIZED
                d.set_state(self, to)
            elif zone is TitleZone.CLOSE:
                d.close_window(self)
            elif self.state is not WindowState.MAXIMIZED:
                d.drag = DragState(DragMode.MOVING, self, x - 1, y - 1)
                screen.capture = self
            return True
        if self.is_grip(x, y) and self.state is WindowState.NORMAL:
            d.drag = DragState(DragMode.RESIZING, self, 0, 0)
            screen.capture = self
        return True


class Taskbar(Widget):
    """Bottom-row strip listing every window; clicking an entry activates it."""

    def __init__(self, rect: Rect) -> None:
        super().__init__(rect, colors=TASKBAR)

    @property
    def desktop(self) -> Desktop:
        assert isinstance(self.parent, Desktop)
        return self.parent

    def entries(self) -> list[tuple[Window, int, int]]:
        x = self.abs_rect.x + 1
        out = []
        for w in self.desktop.creation_order:
            width = len(w.title) + 2
            out.append((w, x, width))
            x += width + 1
        return out

    def paint(self, fb: FrameBuffer) -> None:
        r = self.abs_rect
        fb.fill_rect(r, " ", *TASKBAR)
        active = self.desktop.active
        for w, x, width in self.entries():
            colors = TASKBAR
            if w is active:
                colors = TASK_ACTIVE
            elif w.state is WindowState.MINIMIZED:
                colors = TASK_MINIMIZED
            fb.put_text(x, r.y, f"[{w.title}]", *colors)

    def handle_mouse(self, ev: MouseEvent, x: int, y: int, verdict: Verdict, screen: Screen) -> bool:
        if ev.kind is not MouseKind.PRESS:
            return False
        for w, ex, width in self.entries():
            if ex <= ev.x < ex + width:
                d = self.desktop
                if w.state is WindowState.MINIMIZED:
                    d.set_state(w, w._pre_min_state)
                else:
                    d.raise_window(w)
                return True
        return False


class Desktop(Container):
    """Blue background, windows in z-order, and a taskbar on the last row."""

    global_keys = True

    def __init__(self, rect: Rect, *, colors: Colors | None = None) -> None:
        super().__init__(rect, colors=colors or DESKTOP)
        self.taskbar = Taskbar(Rect(1, rect.h, rect.w, 1))
        self.creation_order: list[Window] = []
        self.drag = DragState()
        super().add(self.taskbar)

    # -- structure -----------------------------------------------------------

    @property
    def windows(self) -> list[Window]:
        """Back-to-front."""
        return [c for c in self._children if isinstance(c, Window)]

    @property
    def area(self) -> Rect:
        """Absolute rect available to windows (everything above the taskbar)."""
        r = self.abs_rect
        return Rect(r.x, r.y, r.w, max(0, r.h - 1))

    @property
    def active(self) -> Window | None:
        for w in reversed(self.windows):
            if w.state is not WindowState.MINIMIZED:
                return w
        return None

    def add_window(self, window: Window) -> Window:
        window.parent = self
        self._children.insert(len(self._children) - 1, window)
        self.creation_order.append(window)
        if self.screen is not None:
            self.screen.adopt(window)
        self._damage_window_area(window)
        self.taskbar.mark_dirty()
        return window

    def add(self, child: Widget) -> Widget:
        if isinstance(child, Window):
            return self.add_window(child)
        raise TypeError("only windows can be added to a desktop")

    def child_clip(self, child: Widget | None = None) -> Rect:
        if child is self.taskbar:
            return self.visible_rect()
        return self.area.intersect(self.visible_rect())

    def shows_child(self, child: Widget) -> bool:
        return not (isinstance(child, Window) and child.state is WindowState.MINIMIZED)

    def focus_candidates(self) -> Iterator[Widget]:
        a = self.active
        if a is None or not self.visible:
            return iter(())
        return a.focus_candidates()

    def paint(self, fb: FrameBuffer) -> None:
        fb.fill_rect(self.area, " ", *self.base_colors())

    def on_screen_resize(self, size: TerminalSize) -> None:
        if self.parent is None:
            self.rect = Rect(self.rect.x, self.rect.y, size.cols - self.rect.x + 1, size.rows - self.rect.y + 1)
            self.taskbar.rect = Rect(1, self.rect.h, self.rect.w, 1)
            for w in self.windows:
                if w.state is WindowState.MAXIMIZED:
                    w.rect = self._area_local()
            self.mark_dirty()

    def _area_local(self) -> Rect:
        return Rect(1, 1, self.rect.w, max(MIN_H, self.rect.h - 1))

    def _damage_window_area(self, w: Window) -> None:
        self.invalidate(w.abs_rect.intersect(self.area))

    def _damage_title(self, w: Window | None) -> None:
        if w is not None and w.state is not WindowState.MINIMIZED:
            r = w.abs_rect
            self.invalidate(Rect(r.x, r.y, r.w, 1).intersect(self.area))

    def _focus_active(self) -> None:
        scr = self.screen
        a = self.active
        if scr is None:
            return
        if a is None:
            scr.set_focus(None)
            return
        candidates = list(a.focus_candidates())
        target = a.focused_child if a.focused_child in candidates else (candidates[0] if candidates else None)
        scr.set_focus(target)

    # -- operations ----------------------------------------------------------

    def raise_window(self, w: Window) -> None:
        old = self.active
        if self.windows and self.windows[-1] is w and old is w:
            return
        self._children.remove(w)
        self._children.insert(len(self._children) - 1, w)
        if w.state is WindowState.MINIMIZED:
            w.state = w._pre_min_state
        self._damage_window_area(w)
        if old is not w:
            self._damage_title(old)
        self.taskbar.mark_dirty()
        self._focus_active()

    def cycle(self, direction: int = 1) -> Window | None:
        """Activate the next non-minimized window in creation order."""
        order = [w for w in self.creation_order if w.state is not WindowState.MINIMIZED]
        if not order:
            return None
        a = self.active
        i = order.index(a) if a in order else -1
        target = order[(i + direction) % len(order)]
        self.raise_window(target)
        return target

    def move(self, w: Window, x: int, y: int) -> Rect:
        """Move ``w`` so its top-left is at absolute (x, y); return the damage."""
        if w.state is not WindowState.NORMAL:
            return Rect(0, 0, 0, 0)
        area = self.area
        x = max(area.x, min(x, max(area.x, area.right - w.rect.w + 1)))
        y = max(area.y, min(y, area.bottom))
        old = w.abs_rect
        ox, oy = self.content_origin()
        w.rect = w.rect.moved_to(x - ox + 1, y - oy + 1)
        damage = old.union_bounds(w.abs_rect).intersect(area)
        if w.abs_rect != old:
            self.invalidate(damage)
        return damage

    def resize_window(self, w: Window, width: int, height: int) -> Rect:
        if w.state is not WindowState.NORMAL:
            return Rect(0, 0, 0, 0)
        area = self.area
        r = w.abs_rect
        width = max(MIN_W, min(width, area.right - r.x + 1))
        height = max(MIN_H, min(height, area.bottom - r.y + 1))
        old = r
        w.rect = w.rect.resized(width, height)
        damage = old.union_bounds(w.abs_rect).intersect(area)
        if w.abs_rect != old:
            self.invalidate(damage)
        return damage

    def set_state(self, w: Window, to: WindowState) -> None:
        frm = w.state
        if to is frm:
            return
        full = self.abs_rect
        if to is WindowState.MAXIMIZED:
            if frm is WindowState.NORMAL:
                w.restore_rect = w.rect
            w.state = to
            w.rect = self._area_local()
            self.raise_window(w)
            self.invalidate(full)
        elif to is WindowState.MINIMIZED:
            self._damage_window_area(w)
            if frm is WindowState.NORMAL:
                w.restore_rect = w.rect
            w._pre_min_state = frm
            w.state = to
            if self.drag.window is w:
                self.drag = DragState()
            self.taskbar.mark_dirty()
            self._damage_title(self.active)
            self._focus_active()
        else:
            w.rect = w.restore_rect
            w.state = to
            self.raise_window(w)
            # Restoring repaints the whole desktop: background, windows, taskbar.
            self.invalidate(full)
            self.mark_dirty()
        self.taskbar.mark_dirty()

    def close_window(self, w: Window) -> None:
        self._damage_window_area(w)
        if self.drag.window is w:
            self.drag = DragState()
        self._children.remove(w)
        self.creation_order.remove(w)
        if self.screen is not None:
            self.screen.unadopt(w)
        w.parent = None
        self.taskbar.mark_dirty()
        self._damage_title(self.active)
        self._focus_active()
        self.emit(EventKind.CHANGE, w)

    def end_drag(self, x: int, y: int) -> bool:
        drag, self.drag = self.drag, DragState()
        w = drag.window
        if w is None or w.parent is not self:
            return False
        if drag.mode is DragMode.MOVING:
            self.move(w, x - drag.dx, y - drag.dy)
        elif drag.mode is DragMode.RESIZING:
            r = w.abs_rect
            self.resize_window(w, x - r.x + 1, y - r.y + 1)
        return True

    def route(self, ev: KeyEvent | MouseEvent, screen: Screen | None = None) -> RouteResult:
        """Desktop-level routing: F12 and window raising; everything else passes on."""
        if isinstance(ev, KeyEvent):
            if ev.key is Key.F12:
                self.cycle(1)
                return RouteResult.HANDLED
            return RouteResult.PASS_TO_ACTIVE
        if ev.kind is MouseKind.PRESS:
            for w in reversed(self.windows):
                if w.state is WindowState.MINIMIZED or not w.visible_rect().contains(ev.x, ev.y):
                    continue
                self.raise_window(w)
                r = w.abs_rect
                if ev.y == r.y or w.is_grip(ev.x - r.x + 1, ev.y - r.y + 1):
                    if screen is not None:
                        w.handle_mouse(ev, ev.x - r.x + 1, ev.y - r.y + 1, Verdict.ACCEPT_SINGLE, screen)
                    return RouteResult.HANDLED
                return RouteResult.PASS_TO_ACTIVE
        return RouteResult.PASS_TO_ACTIVE

    def handle_global_key(self, ev: KeyEvent, screen: Screen) -> bool:
        if ev.key is Key.F12 and self.showing:
            self.cycle(1)
            return True
        return False

    def draw_all(self, fb: FrameBuffer) -> None:
        self.draw(fb)


def wm_move(d: Desktop, w: Window, x: int, y: int) -> Rect:
    return d.move(w, x, y)


def wm_resize(d: Desktop, w: Window, width: int, height: int) -> Rect:
    return d.resize_window(w, width, height)


def wm_set_state(d: Desktop, w: Window, to: WindowState) -> None:
    d.set_state(w, to)


def wm_draw_all(d: Desktop, fb: FrameBuffer) -> None:
    d.draw(fb)


def wm_route(d: Desktop, ev: KeyEvent | MouseEvent, screen: Screen | None = None) -> RouteResult:
    return d.route(ev, screen)


def window_titles(windows: Sequence[Window]) -> list[str]:
    return [w.title for w in windows]
