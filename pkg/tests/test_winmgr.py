from __future__ import annotations

import random

import pytest

from support import full_redraw, start
from tuikit.backend import Key, KeyEvent, MouseEvent, MouseKind
from tuikit.events import Screen
from tuikit.geometry import Rect
from tuikit.widgets import TextBox
from tuikit.winmgr import (
    MIN_H, MIN_W, Desktop, RouteResult, TitleZone, Window, WindowState, window_titles, wm_move, wm_resize, wm_route,
    wm_set_state,
)


def _desk():
    scr = Screen()
    d = scr.add(Desktop(Rect(1, 1, 80, 24)))
    a = d.add_window(Window(Rect(3, 3, 20, 8), "A"))
    b = d.add_window(Window(Rect(10, 6, 25, 10), "B"))
    ta = a.add(TextBox(2, 2, 10))
    tb = b.add(TextBox(2, 2, 10))
    return scr, d, a, b, ta, tb, start(scr)


def test_creation_and_z_order():
    scr, d, a, b, ta, tb, h = _desk()
    assert window_titles(d.windows) == ["A", "B"]
    assert d.active is b and scr.focus is tb
    d.raise_window(a)
    assert window_titles(d.windows) == ["B", "A"] and scr.focus is ta
    assert window_titles(d.creation_order) == ["A", "B"]
    assert h.grid() != full_redraw(scr)  # not flushed yet
    h.screen.refresh()
    assert h.grid() == full_redraw(scr)


def test_minimum_size_enforced():
    w = Window(Rect(1, 1, 2, 1), "tiny")
    assert (w.rect.w, w.rect.h) == (MIN_W, MIN_H)
    scr, d, a, b, *_ = _desk()
    wm_resize(d, b, 1, 1)
    assert (b.rect.w, b.rect.h) == (MIN_W, MIN_H)


def test_move_is_clamped_to_area_and_damage_is_union():
    scr, d, a, b, *_ = _desk()
    old = b.abs_rect
    damage = wm_move(d, b, 70, 30)
    assert b.abs_rect.right == 80 and b.abs_rect.y == d.area.bottom
    assert damage == old.union_bounds(b.abs_rect).intersect(d.area)
    wm_move(d, b, -5, -5)
    assert (b.abs_rect.x, b.abs_rect.y) == (1, 1)


def test_state_machine_and_restore_rect():
    scr, d, a, b, ta, tb, h = _desk()
    normal = b.rect
    wm_set_state(d, b, WindowState.MAXIMIZED)
    assert b.rect == Rect(1, 1, 80, 23)
    assert wm_move(d, b, 5, 5).is_empty()
    wm_set_state(d, b, WindowState.MINIMIZED)
    assert d.active is a and scr.focus is ta
    assert b not in list(d.visible_children())
    wm_set_state(d, b, WindowState.NORMAL)
    assert b.rect == normal and d.active is b
    wm_set_state(d, a, WindowState.MINIMIZED)
    wm_set_state(d, b, WindowState.MINIMIZED)
    assert d.active is None and scr.focus is None
    h.screen.refresh()
    assert h.grid() == full_redraw(scr)


def test_taskbar_click_restores_previous_state():
    scr, d, a, b, ta, tb, h = _desk()
    wm_set_state(d, b, WindowState.MAXIMIZED)
    wm_set_state(d, b, WindowState.MINIMIZED)
    h.screen.refresh()
    entry = next(x for w, x, _ in d.taskbar.entries() if w is b)
    h.click(entry, 24)
    assert b.state is WindowState.MAXIMIZED and d.active is b
    assert h.grid() == full_redraw(scr)


def test_title_buttons_drag_and_grip():
    scr, d, a, b, ta, tb, h = _desk()
    r = b.abs_rect
    spans = dict(b.button_spans())
    assert b.title_zone(spans[TitleZone.CLOSE] + 1) is TitleZone.CLOSE
    assert b.title_zone(2) is TitleZone.DRAG
    # Drag by the title bar.
    h.step(MouseEvent(r.x + 2, r.y), 1000)
    h.step(MouseEvent(r.x + 12, r.y + 4, kind=MouseKind.RELEASE))
    assert b.abs_rect.moved_to(0, 0) == r.moved_to(0, 0) and (b.abs_rect.x, b.abs_rect.y) == (r.x + 10, r.y + 4)
    # Resize from the grip.
    r = b.abs_rect
    h.step(MouseEvent(r.right, r.bottom), 1000)
    h.step(MouseEvent(r.right - 5, r.bottom - 2, kind=MouseKind.RELEASE))
    assert (b.rect.w, b.rect.h) == (r.w - 5, r.h - 2)
    # Maximize button toggles; buttons move with the new width.
    spans = dict(b.button_spans())
    h.click(b.abs_rect.x + spans[TitleZone.MAXIMIZE], b.abs_rect.y)
    assert b.state is WindowState.MAXIMIZED
    spans = dict(b.button_spans())
    h.click(b.abs_rect.x + spans[TitleZone.MAXIMIZE], b.abs_rect.y)
    assert b.state is WindowState.NORMAL
    assert h.grid() == full_redraw(scr)


def test_close_removes_window_and_refocuses():
    scr, d, a, b, ta, tb, h = _desk()
    spans = dict(b.button_spans())
    h.click(b.abs_rect.x + spans[TitleZone.CLOSE], b.abs_rect.y)
    assert window_titles(d.windows) == ["A"] and b.parent is None and b.screen is None
    assert scr.focus is ta
    assert h.grid() == full_redraw(scr)


def test_f12_cycles_in_creation_order_skipping_minimized():
    scr, d, a, b, ta, tb, h = _desk()
    c = d.add_window(Window(Rect(40, 2, 20, 6), "C"))
    wm_set_state(d, b, WindowState.MINIMIZED)
    order = []
    for _ in range(4):
        h.key(Key.F12)
        order.append(d.active.title)
    assert order == ["A", "C", "A", "C"]
    assert wm_route(d, KeyEvent(Key.F12)) is RouteResult.HANDLED
    assert wm_route(d, KeyEvent(Key.UP)) is RouteResult.PASS_TO_ACTIVE


def test_children_never_paint_outside_interior():
    scr, d, a, b, ta, tb, h = _desk()
    b.add(TextBox(-3, 20, 50, "x" * 60))
    rng = random.Random(1)
    for _ in range(30):
        wm_move(d, b, rng.randint(1, 75), rng.randint(1, 20))
        wm_resize(d, b, rng.randint(1, 40), rng.randint(1, 20))
        h.screen.refresh()
        assert h.grid() == full_redraw(scr)
        inner = b.abs_rect.inset(1, 1, 1, 1)
        for child in b.children():
            assert child.visible_rect().intersect(inner) == child.visible_rect()


def test_desktop_only_accepts_windows():
    d = Desktop(Rect(1, 1, 80, 24))
    with pytest.raises(TypeError):
        d.add(TextBox(1, 1, 5))
