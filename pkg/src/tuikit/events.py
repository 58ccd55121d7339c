"""Event manager: the main loop, focus ring, mouse routing and damage redraw.

A :class:`Screen` owns a list of top-level widgets in back-to-front order.
``Screen.run`` repeatedly redraws damaged widgets into the back buffer,
flushes, polls for input and dispatches it.  Modal sub-loops (menus, cell
editing, popups) call :meth:`Screen.pump` instead of polling the session
themselves, so client code never writes an input loop.

Handlers are plain callables ``handler(screen, widget_id, event)``; any
state they need lives on the screen (``screen.state``) rather than in
captured variables.
"""

from __future__ import annotations

import enum
import itertools
import logging
import shlex
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

from .backend import (
    InputEvent,
    Key,
    KeyEvent,
    MouseButton,
    MouseEvent,
    MouseKind,
    ResizeEvent,
    ScriptItem,
    Session,
    Snap,
    TickEvent,
    Wait,
)
from .geometry import Rect
from .render import DiffStats, FrameBuffer

log = logging.getLogger(__name__)

_widget_ids = itertools.count(1)


class AlreadyRegistered(ValueError):
    pass


class ScriptParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class EventKind(enum.Enum):
    CLICK = "CLICK"
    CHANGE = "CHANGE"
    ACTIVATE = "ACTIVATE"
    BLUR = "BLUR"
    KEY = "KEY"


class ExitReason(enum.Enum):
    USER_ESCAPE = "USER_ESCAPE"
    REQUESTED = "REQUESTED"


class Verdict(enum.Enum):
    ACCEPT_SINGLE = "ACCEPT_SINGLE"
    ACCEPT_DOUBLE = "ACCEPT_DOUBLE"
    REJECT = "REJECT"


Handler = Callable[["Screen", "int | None", Any], Any]


@dataclass(frozen=True)
class HandlerRegistration:
    widget: Any
    event_kind: EventKind
    handler: Handler


@dataclass
class ClickFilter:
    """Per-widget click debouncing and double-click synthesis."""

    threshold_ms: int = 150
    dclick_ms: int = 400
    last_accepted: dict[Any, int] = field(default_factory=dict)
    last_widget: Any = None

    def __post_init__(self) -> None:
        if not 0 < self.threshold_ms < self.dclick_ms:
            raise ValueError("need 0 < threshold_ms < dclick_ms")

    def filter(self, widget: Any, t_ms: int) -> Verdict:
        last = self.last_accepted.get(widget)
        if last is not None:
            dt = t_ms - last
            if dt < self.threshold_ms:
                return Verdict.REJECT
            verdict = (
                Verdict.ACCEPT_DOUBLE
                if dt <= self.dclick_ms and self.last_widget == widget
                else Verdict.ACCEPT_SINGLE
            )
        else:
            verdict = Verdict.ACCEPT_SINGLE
        self.last_accepted[widget] = t_ms
        self.last_widget = widget
        return verdict

    def forget(self, widget: Any) -> None:
        self.last_accepted.pop(widget, None)
        if self.last_widget == widget:
            self.last_widget = None


class HandlerRegistry:
    """Handler and global-key-hook store, shareable between screens.

    ``dispatch_iterations`` counts every registration examined while
    dispatching; a screen that forgets to clean up shows up as a growing
    count on unrelated screens.
    """

    def __init__(self) -> None:
        self._handlers: dict[tuple[Any, EventKind], list[tuple[Screen, Handler]]] = {}
        self._hooks: list[tuple[Screen, Callable[[KeyEvent, Screen], bool]]] = []
        self.dispatch_iterations = 0

    def size(self) -> int:
        return sum(len(v) for v in self._handlers.values()) + len(self._hooks)

    @property
    def handler_count(self) -> int:
        return sum(len(v) for v in self._handlers.values())

    @property
    def hook_count(self) -> int:
        return len(self._hooks)

    def add(self, owner: Screen, widget_id: Any, kind: EventKind, handler: Handler) -> None:
        self._handlers.setdefault((widget_id, kind), []).append((owner, handler))

    def add_hook(self, owner: Screen, hook: Callable[[KeyEvent, Screen], bool]) -> None:
        self._hooks.append((owner, hook))

    def dispatch(self, owner: Screen, widget_id: Any, kind: EventKind, event: Any) -> int:
        called = 0
        for scr, handler in list(self._handlers.get((widget_id, kind), ())):
            self.dispatch_iterations += 1
            if scr is owner:
                handler(owner, widget_id, event)
                called += 1
        return called

    def run_hooks(self, owner: Screen, ev: KeyEvent) -> bool:
        for scr, hook in list(self._hooks):
            self.dispatch_iterations += 1
            if scr is owner and hook(ev, owner):
                return True
        return False

    def remove_owner(self, owner: Screen) -> None:
        for key in list(self._handlers):
            kept = [entry for entry in self._handlers[key] if entry[0] is not owner]
            if kept:
                self._handlers[key] = kept
            else:
                del self._handlers[key]
        self._hooks = [h for h in self._hooks if h[0] is not owner]

    def remove_widget(self, owner: Screen, widget_id: Any) -> None:
        for key in [k for k in self._handlers if k[0] == widget_id]:
            kept = [entry for entry in self._handlers[key] if entry[0] is not owner]
            if kept:
                self._handlers[key] = kept
            else:
                del self._handlers[key]


@dataclass(frozen=True)
class MouseTarget:
    widget: Any
    x: int
    y: int


class Screen:
    """A set of widgets plus the loop that drives them.

    ``state`` is a free-form dict for handler state.
    """

    def __init__(
        self,
        registry: HandlerRegistry | None = None,
        *,
        escape_exits: bool = True,
        click_filter: ClickFilter | None = None,
        tick_ms: int = 30,
    ) -> None:
        self.registry = registry if registry is not None else HandlerRegistry()
        self.escape_exits = escape_exits
        self.click_filter = click_filter if click_filter is not None else ClickFilter()
        self.tick_ms = tick_ms
        self.widgets: list[Any] = []
        self.background: Any = None
        self.menubar: Any = None
        self.focus: Any = None
        self.capture: Any = None
        self.state: dict[str, Any] = {}
        self.session: Session | None = None
        self.fb: FrameBuffer | None = None
        self.exit_reason: ExitReason | None = None
        self.result: Any = None
        self.last_stats: DiffStats | None = None
        self.flush_history: deque[DiffStats] = deque(maxlen=512)
        self.focus_changed_on_press = False
        self._damage: list[Rect] = []
        self._pending: deque[InputEvent] = deque()
        self._adopted: dict[int, Any] = {}

    # -- registration ------------------------------------------------------

    def register(self, widget: Any, handlers: Iterable[HandlerRegistration] = ()) -> int:
        if widget in self.widgets or widget is self.background or widget is self.menubar:
            raise AlreadyRegistered(f"{widget!r} is already registered")
        if getattr(widget, "screen", None) is not None:
            raise AlreadyRegistered(f"{widget!r} belongs to another screen")
        self.widgets.append(widget)
        self.adopt(widget)
        for reg in handlers:
            self.on(reg.widget if reg.widget is not None else widget, reg.event_kind, reg.handler)
        return widget.id

    def add(self, widget: Any, **handlers: Handler) -> Any:
        """Register ``widget`` with keyword handlers (``on_click=...``)."""
        self.register(widget)
        for name, fn in handlers.items():
            self.on(widget, EventKind[name.removeprefix("on_").upper()], fn)
        return widget

    def set_background(self, widget: Any) -> Any:
        if self.background is not None:
            self.unadopt(self.background)
        self.background = widget
        self.adopt(widget)
        return widget

    def add_menubar(self, menubar: Any) -> Any:
        self.menubar = menubar
        self.adopt(menubar)
        return menubar

    def adopt(self, widget: Any) -> None:
        """Attach a widget subtree (ids, screen backlink, global key hooks)."""
        if widget.id is None:
            widget.id = next(_widget_ids)
        widget.screen = self
        self._adopted[widget.id] = widget
        if getattr(widget, "global_keys", False):
            self.registry.add_hook(self, widget.handle_global_key)
        widget.mark_dirty()
        for child in widget.children():
            self.adopt(child)

    def unadopt(self, widget: Any) -> None:
        for child in widget.children():
            self.unadopt(child)
        if self.focus is widget:
            self.focus = None
        if self.capture is widget:
            self.capture = None
        self.registry.remove_widget(self, widget.id)
        if getattr(widget, "global_keys", False):
            self.registry._hooks = [
                h for h in self.registry._hooks
                if not (h[0] is self and getattr(h[1], "__self__", None) is widget)
            ]
        self.click_filter.forget(widget.id)
        self._adopted.pop(widget.id, None)
        widget.screen = None

    def on(self, widget: Any, kind: EventKind, handler: Handler) -> None:
        """Register ``handler`` for ``kind`` on ``widget`` (None = whole screen)."""
        wid = None
        if widget is not None:
            if widget.id is None:
                widget.id = next(_widget_ids)
            wid = widget.id
        self.registry.add(self, wid, kind, handler)

    def teardown(self) -> None:
        self.registry.remove_owner(self)
        for w in list(self._adopted.values()):
            w.screen = None
        self._adopted.clear()
        self.widgets.clear()
        self.background = None
        self.menubar = None
        self.focus = None
        self.capture = None
        self._damage.clear()
        self._pending.clear()

    def widget(self, widget_id: int) -> Any:
        return self._adopted[widget_id]

    def emit(self, widget: Any, kind: EventKind, event: Any = None) -> int:
        wid = widget.id if widget is not None else None
        return self.registry.dispatch(self, wid, kind, event)

    # -- traversal ---------------------------------------------------------

    def top_level(self) -> list[Any]:
        out = []
        if self.background is not None:
            out.append(self.background)
        out.extend(self.widgets)
        if self.menubar is not None:
            out.append(self.menubar)
        return out

    def paint_order(self) -> Iterator[Any]:
        for w in self.top_level():
            yield from w.paint_list()

    def focus_chain(self) -> list[Any]:
        chain = []
        for w in self.top_level():
            chain.extend(w.focus_candidates())
        return chain

    # -- focus -------------------------------------------------------------

    def set_focus(self, widget: Any) -> None:
        old = self.focus
        if widget is old:
            return
        self.focus = None
        if old is not None:
            old.on_blur(self)
            for r in old.focus_damage():
                self.invalidate(r)
            self.emit(old, EventKind.BLUR)
        self.focus = widget
        if widget is not None:
            for anc in widget.ancestors():
                anc.on_child_focused(widget)
            widget.on_focus(self)
            for r in widget.focus_damage():
                self.invalidate(r)
            self.emit(widget, EventKind.ACTIVATE)

    def focus_next(self, direction: int = 1) -> Any:
        chain = self.focus_chain()
        if not chain:
            return self.focus
        if self.focus in chain:
            i = (chain.index(self.focus) + direction) % len(chain)
        else:
            i = 0 if direction > 0 else len(chain) - 1
        self.set_focus(chain[i])
        return self.focus

    def focus_first(self) -> None:
        chain = self.focus_chain()
        if chain and self.focus not in chain:
            self.set_focus(chain[0])

    # -- mouse routing -----------------------------------------------------

    def route_mouse(self, m: MouseEvent) -> MouseTarget | None:
        for w in reversed(self.top_level()):
            if not w.visible:
                continue
            hit = w.hit_test(m.x, m.y)
            if hit is not None:
                r = hit.abs_rect
                return MouseTarget(hit, m.x - r.x + 1, m.y - r.y + 1)
        return None

    # -- damage & drawing --------------------------------------------------

    def invalidate(self, rect: Rect) -> None:
        if not rect.is_empty():
            self._damage.append(rect)

    def damage_redraw(self, fb: FrameBuffer, damaged: Rect) -> int:
        """Repaint every widget touching ``damaged``, back to front, clipped to it."""
        if damaged.is_empty():
            return 0
        count = 0
        for w in self.paint_order():
            area = w.visible_rect().intersect(damaged)
            if area.is_empty():
                continue
            fb.push_clip(area)
            try:
                w.paint(fb)
            finally:
                fb.pop_clip()
            count += 1
        return count

    def draw_all(self, fb: FrameBuffer | None = None) -> None:
        fb = fb or self.fb
        fb.clear()
        self.damage_redraw(fb, fb.screen_rect)
        self._clear_damage()

    def _clear_damage(self) -> None:
        self._damage.clear()
        for w in self._adopted.values():
            w.dirty = False
            w.damage.clear()

    def collect_damage(self) -> list[Rect]:
        rects = list(self._damage)
        for w in self._adopted.values():
            if not (w.dirty or w.damage):
                continue
            if w.showing:
                vis = w.visible_rect()
                if w.dirty:
                    rects.append(vis)
                rects.extend(r.intersect(vis) for r in w.damage)
        out: list[Rect] = []
        for r in rects:
            if not r.is_empty() and r not in out:
                out.append(r)
        return out

    def redraw_dirty(self, fb: FrameBuffer | None = None) -> int:
        fb = fb or self.fb
        rects = self.collect_damage()
        self._clear_damage()
        count = 0
        for r in rects:
            count += self.damage_redraw(fb, r)
        return count

    def update_cursor(self, fb: FrameBuffer | None = None) -> None:
        fb = fb or self.fb
        w = self.focus
        pos = None
        if w is not None and w.showing:
            pos = w.cursor_position()
            if pos is not None and not w.visible_rect().contains(*pos):
                pos = None
        fb.cursor_req = pos

    # -- loop --------------------------------------------------------------

    def now_ms(self) -> int:
        return self.session.now_ms() if self.session is not None else 0

    def start(self, session: Session, fb: FrameBuffer) -> DiffStats:
        """Attach to a session, draw everything and flush once."""
        self.session, self.fb = session, fb
        self.exit_reason = None
        self.result = None
        if fb.size != session.size():
            fb.resize(session.size())
            self.on_resize()
        self.focus_first()
        self.draw_all(fb)
        return self.refresh()

    def refresh(self, redraw: bool = True) -> DiffStats:
        if self.session.size() != self.fb.size:
            self.fb.resize(self.session.size())
            self.on_resize()
            self.draw_all(self.fb)
        if redraw:
            self.redraw_dirty(self.fb)
            self.update_cursor(self.fb)
        stats = self.fb.flush(self.session)
        self.last_stats = stats
        self.flush_history.append(stats)
        return stats

    def next_event(self) -> InputEvent:
        if self._pending:
            return self._pending.popleft()
        ev = self.session.poll_input(self.tick_ms)
        return ev if ev is not None else TickEvent()

    def pump(self, redraw: bool = True) -> InputEvent:
        """Flush pending drawing, then wait for the next event (for modal loops)."""
        self.refresh(redraw)
        return self.next_event()

    def reinject(self, ev: InputEvent) -> None:
        self._pending.appendleft(ev)

    def step(self, ev: InputEvent) -> DiffStats:
        """Dispatch one event, redraw what it damaged and flush."""
        self.dispatch(ev)
        return self.refresh()

    def run(self, session: Session, fb: FrameBuffer) -> ExitReason:
        self.start(session, fb)
        while self.exit_reason is None:
            self.step(self.next_event())
        return self.exit_reason

    def exit(self, reason: ExitReason = ExitReason.REQUESTED, result: Any = None) -> None:
        self.exit_reason = reason
        self.result = result

    def on_resize(self) -> None:
        size = self.fb.size
        for w in self.top_level():
            w.on_screen_resize(size)

    # -- dispatch ----------------------------------------------------------

    def dispatch(self, ev: InputEvent) -> None:
        if isinstance(ev, KeyEvent):
            self._dispatch_key(ev)
        elif isinstance(ev, MouseEvent):
            self._dispatch_mouse(ev)
        elif isinstance(ev, ResizeEvent):
            if self.fb is not None and ev.size != self.fb.size:
                self.fb.resize(ev.size)
                self.on_resize()
                self.draw_all(self.fb)

    def _dispatch_key(self, ev: KeyEvent) -> None:
        if self.registry.run_hooks(self, ev):
            return
        if ev.key is Key.ESC and self.escape_exits:
            self.exit(ExitReason.USER_ESCAPE)
            return
        if ev.key is Key.TAB:
            self.focus_next(+1)
            return
        if ev.key is Key.BACKTAB:
            self.focus_next(-1)
            return
        w = self.focus
        if w is not None and w.showing:
            if w.handle_key(ev, self):
                return
            if self.emit(w, EventKind.KEY, ev):
                return
        self.emit(None, EventKind.KEY, ev)

    def _dispatch_mouse(self, ev: MouseEvent) -> None:
        self.focus_changed_on_press = False
        if ev.kind is MouseKind.RELEASE:
            w, self.capture = self.capture, None
            if w is not None and w.screen is self:
                r = w.abs_rect
                w.handle_mouse(ev, ev.x - r.x + 1, ev.y - r.y + 1, Verdict.ACCEPT_SINGLE, self)
            return
        target = self.route_mouse(ev)
        if target is None:
            return
        w = target.widget
        verdict = self.click_filter.filter(w.id, self.now_ms())
        if verdict is Verdict.REJECT:
            log.debug("debounced click on %r", w)
            return
        for anc in list(w.ancestors()):
            anc.on_descendant_press(w, self)
        if w.focusable and w.showing and self.focus is not w:
            self.set_focus(w)
            self.focus_changed_on_press = True
        w.handle_mouse(ev, target.x, target.y, verdict, self)


# --------------------------------------------------------------------------
# Input scripts
# --------------------------------------------------------------------------


def parse_script(text: str) -> list[ScriptItem]:
    """Parse the line-oriented input-script format.

    ``KEY <name>``, ``CHAR <c>``, ``MOUSE <PRESS|RELEASE> <btn> <x> <y>``,
    ``WAIT <ms>`` and ``SNAP <name>``; blank lines and ``#`` comments are
    ignored.
    """
    items: list[ScriptItem] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        verb, _, rest = stripped.partition(" ")
        verb = verb.upper()
        if verb == "KEY":
            name = rest.strip().upper()
            if name == "KEY_PGDN":
                raise ScriptParseError(lineno, "unknown key KEY_PGDN (use KEY_PGDOWN)")
            try:
                key = Key[name]
            except KeyError:
                raise ScriptParseError(lineno, f"unknown key {rest.strip()!r}") from None
            if key is Key.CHAR:
                raise ScriptParseError(lineno, "use CHAR <c> for printable characters")
            items.append(KeyEvent(key))
        elif verb == "CHAR":
            ch = line.lstrip()[5:] if len(line.lstrip()) > 5 else ""
            if len(ch) != 1 or not ch.isprintable():
                raise ScriptParseError(lineno, f"CHAR needs exactly one printable character, got {ch!r}")
            items.append(KeyEvent.of(ch))
        elif verb == "MOUSE":
            parts = rest.split()
            if len(parts) != 4:
                raise ScriptParseError(lineno, "expected MOUSE <PRESS|RELEASE> <btn> <x> <y>")
            kind, btn, xs, ys = parts
            try:
                items.append(MouseEvent(int(xs), int(ys), MouseButton[btn.upper()], MouseKind[kind.upper()]))
            except (KeyError, ValueError):
                raise ScriptParseError(lineno, f"bad mouse event {rest!r}") from None
        elif verb == "WAIT":
            try:
                ms = int(rest.strip())
            except ValueError:
                raise ScriptParseError(lineno, f"bad WAIT duration {rest!r}") from None
            if ms < 0:
                raise ScriptParseError(lineno, "WAIT duration must be non-negative")
            items.append(Wait(ms))
        elif verb == "SNAP":
            name = rest.strip()
            if not name or "/" in name or "\\" in name or name.startswith("."):
                raise ScriptParseError(lineno, f"bad snapshot name {name!r}")
            items.append(Snap(name))
        else:
            raise ScriptParseError(lineno, f"unknown directive {verb!r}")
    return items


def format_script(items: Iterable[ScriptItem]) -> str:
    lines = []
    for item in items:
        if isinstance(item, KeyEvent):
            if item.key is Key.CHAR:
                lines.append(f"CHAR {item.char}")
            else:
                lines.append(f"KEY {item.key.name}")
        elif isinstance(item, MouseEvent):
            lines.append(f"MOUSE {item.kind.name} {item.button.name} {item.x} {item.y}")
        elif isinstance(item, Wait):
            lines.append(f"WAIT {item.ms}")
        elif isinstance(item, Snap):
            lines.append(f"SNAP {shlex.quote(item.name)}")
    return "\n".join(lines) + ("\n" if lines else "")
