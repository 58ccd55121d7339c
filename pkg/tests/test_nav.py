from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from support import full_redraw, start
from tuikit.backend import Key, KeyEvent, MouseEvent, Snap, TerminalSize, Wait
from tuikit.events import Screen
from tuikit.geometry import Rect
from tuikit.nav import (
    MENU_HIGHLIGHT, MenuBar, MenuItem, MenuKind, TabControl, dropdown_size, item_text, dropdown_layout,
    step_selectable,
)
from tuikit.widgets import Button, Frame, TextBox


def test_menu_item_validation():
    with pytest.raises(ValueError):
        MenuItem(MenuKind.SEPARATOR, "x")
    with pytest.raises(ValueError):
        MenuItem.submenu("Empty", [])
    with pytest.raises(ValueError):
        MenuItem(MenuKind.ACTION, "a", children=[MenuItem.item("b")])
    with pytest.raises(ValueError):
        MenuBar(1, 80, [MenuItem.item("NotASubmenu")])


@given(st.lists(st.booleans(), min_size=1, max_size=10), st.data())
def test_step_selectable_matches_linear_scan(selectable, data):
    items = [MenuItem.item("x") if s else MenuItem.separator() for s in selectable]
    n = len(items)
    index = data.draw(st.integers(0, n - 1))
    direction = data.draw(st.sampled_from([-1, 1]))
    got = step_selectable(items, index, direction)
    candidates = [(index + direction * k) % n for k in range(1, n + 1)]
    want = next((j for j in candidates if selectable[j]), index)
    assert got == want


def test_dropdown_rows_have_uniform_width():
    items = [
        MenuItem.item("Open", hint="Ctrl+O"), MenuItem.check("Bold", True), MenuItem.separator(),
        MenuItem.submenu("More", [MenuItem.item("x")]),
    ]
    w, h = dropdown_size(items)
    layout = dropdown_layout(items)
    texts = [item_text(i, layout) for i in items if i.selectable]
    assert {len(t) for t in texts} == {w - 2}
    assert h == len(items) + 2
    assert texts[1].startswith(" [x] Bold")
    assert texts[2].rstrip().endswith(">")


def _menu_screen(size=TerminalSize(24, 80)):
    fired = []
    act = lambda scr, item: fired.append(item.label)
    menus = [
        MenuItem.submenu("File", [MenuItem.item("New", act), MenuItem.separator(), MenuItem.item("Quit", act)]),
        MenuItem.submenu("View", [
            MenuItem.check("Wrap"),
            MenuItem.submenu("Zoom", [MenuItem.item("In", act), MenuItem.item("Out", act)]),
        ]),
    ]
    scr = Screen()
    scr.set_background(Frame(Rect(1, 1, size.cols, size.rows), glyph="."))
    scr.add(TextBox(5, 5, 20, "underneath"))
    mb = scr.add_menubar(MenuBar(1, size.cols, menus))
    return scr, mb, fired, start(scr, size)


def test_keyboard_activation_returns_path_and_restores():
    scr, mb, fired, h = _menu_screen()
    before = h.grid()
    h.session.feed([KeyEvent(Key.DOWN), KeyEvent(Key.ENTER)])
    h.key(Key.F10)
    assert fired == ["Quit"] and mb.last_path == [0, 2]
    assert h.grid() == before


def test_nested_submenu_and_check_toggle():
    scr, mb, fired, h = _menu_screen()
    before = h.grid()
    seen = {}
    h.session.on_snap = lambda name, snap: seen.setdefault(name, snap)
    h.session.feed([
        KeyEvent(Key.RIGHT), KeyEvent(Key.ENTER), KeyEvent(Key.DOWN), KeyEvent(Key.RIGHT), Snap("zoom"),
        KeyEvent(Key.DOWN), KeyEvent(Key.ENTER),
    ])
    h.key(Key.F10)
    assert fired == ["Out"] and mb.last_path == [1, 1, 1]
    assert mb.menus[1].children[0].checked
    zoom = seen["zoom"]
    assert " In " in "".join(zoom.text())
    assert h.grid() == before


def test_left_closes_only_the_innermost_level():
    scr, mb, fired, h = _menu_screen()
    seen = {}
    h.session.on_snap = lambda name, snap: seen.setdefault(name, snap)
    h.session.feed([
        KeyEvent(Key.RIGHT), KeyEvent(Key.DOWN), KeyEvent(Key.RIGHT), KeyEvent(Key.LEFT), Snap("one"), KeyEvent(Key.ESC),
    ])
    h.key(Key.F10)
    assert "In" not in "".join(seen["one"].text())
    zoom_row = seen["one"].find("Zoom")
    x, y = zoom_row
    fg, bg = MENU_HIGHLIGHT
    assert seen["one"].color_map()[y - 1][2 * (x - 1) : 2 * x] == f"{fg:X}{bg:X}"
    assert mb.last_path is None and not fired


def test_mouse_outside_closes_and_delivers_click():
    scr, mb, fired, h = _menu_screen()
    tb = scr.focus_chain()[0]
    scr.set_focus(None)
    h.session.feed([Wait(1000), MouseEvent(20, 5)])
    h.click(3, 1)
    assert mb.open_index is None and not fired
    # The closing click was re-dispatched and landed on the text box.
    h.step(scr.next_event())
    assert scr.focus is tb
    assert h.grid() == full_redraw(scr)


def test_menu_placement_stays_on_screen():
    size = TerminalSize(8, 20)
    scr, mb, fired, h = _menu_screen(size)
    seen = {}
    h.session.on_snap = lambda name, snap: seen.setdefault(name, snap)
    h.session.feed([KeyEvent(Key.RIGHT), KeyEvent(Key.DOWN), KeyEvent(Key.RIGHT), Snap("s"), KeyEvent(Key.ESC),
                    KeyEvent(Key.ESC)])
    h.key(Key.F10)
    text = seen["s"].text()
    assert any(" In " in row for row in text)
    assert h.grid() == full_redraw(scr)


# -- tabs ------------------------------------------------------------------


def _tabs():
    scr = Screen()
    scr.set_background(Frame(Rect(1, 1, 80, 24)))
    tc = TabControl(Rect(2, 2, 40, 10), ["One", "Two", "Three"])
    scr.add(tc)
    a = tc.add_to(0, TextBox(2, 1, 10))
    b = tc.add_to("Two", Button(2, 2, "B"))
    c = tc.add_to(2, TextBox(2, 3, 10))
    outside = scr.add(Button(50, 5, "Out"))
    return scr, tc, (a, b, c, outside), start(scr)


def test_tabs_limit_focus_and_hit_test_to_active_page():
    scr, tc, (a, b, c, outside), h = _tabs()
    assert scr.focus_chain() == [a, outside]
    assert a.abs_rect == Rect(4, 4, 10, 1)
    assert scr.route_mouse(MouseEvent(4, 5)).widget is tc
    h.key(Key.F11)
    assert tc.active == 1 and scr.focus is b
    h.key(Key.F11)
    h.key(Key.F11)
    assert tc.active == 0 and scr.focus is a
    assert h.grid() == full_redraw(scr)


def test_tab_header_click_and_focus_elsewhere_kept():
    scr, tc, (a, b, c, outside), h = _tabs()
    scr.set_focus(outside)
    x, _w = tc.header_spans()[2]
    h.click(x + 1, 2)
    assert tc.active == 2 and scr.focus is outside
    with pytest.raises(IndexError):
        tc.switch(5)
    with pytest.raises(ValueError):
        TabControl(Rect(1, 1, 10, 10), [])
    assert h.grid() == full_redraw(scr)
