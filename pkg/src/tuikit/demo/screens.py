"""Builders for the eight demo screens.

Builders only create widgets and register handlers; every loop lives in the
library.  Handlers are module-level functions that keep their state in
``screen.state``.
"""

from __future__ import annotations

from typing import Any, Callable

from ..backend import Color, TerminalSize
from ..events import EventKind, ExitReason, HandlerRegistry, Screen
from ..geometry import Rect
from ..grid import Grid, GridColumn
from ..nav import MenuBar, MenuItem, TabControl
from ..render import BorderStyle
from ..tree import TreeNode, TreeView
from ..widgets import (
    Button,
    CheckBox,
    ComboBox,
    EditBox,
    Frame,
    Label,
    ListBox,
    Orientation,
    ProgressBar,
    ScrollBar,
    Spinner,
    TextBox,
)
from ..winmgr import Desktop, Window
from . import data

TITLE = (Color.YELLOW, Color.BLUE)
HELP = (Color.BLACK, Color.CYAN)
STATUS = (Color.BLACK, Color.GREY)


class UnknownDemo(ValueError):
    pass


def _screen(registry: HandlerRegistry | None, size: TerminalSize, title: str | None, help_text: str | None) -> Screen:
    scr = Screen(registry)
    scr.set_background(Frame(Rect(1, 1, size.cols, size.rows)))
    if title:
        scr.register(Label(1, 1, title.center(size.cols), size.cols, colors=TITLE))
    if help_text:
        scr.register(Label(1, size.rows, help_text, size.cols, colors=HELP))
    return scr


def _status(scr: Screen, y: int, width: int, text: str = "Ready") -> Label:
    label = Label(1, y, text, width, colors=STATUS)
    scr.register(label)
    scr.state["status"] = label
    return label


def set_status(scr: Screen, text: str) -> None:
    scr.state["status"].text = text


# --------------------------------------------------------------------------
# 1. Form
# --------------------------------------------------------------------------


def _form_submit(scr: Screen, wid: Any, ev: Any) -> None:
    s = scr.state
    subscribed = "yes" if s["newsletter"].checked else "no"
    set_status(
        scr,
        f"Submitted: name={s['name'].text!r} email={s['email'].text!r} "
        f"language={s['language'].selected_text} country={s['country'].selected_text} news={subscribed}",
    )


def _form_cancel(scr: Screen, wid: Any, ev: Any) -> None:
    scr.exit(ExitReason.REQUESTED)


def _form_reset(scr: Screen, wid: Any, ev: Any) -> None:
    s = scr.state
    s["name"].set_text("")
    s["email"].set_text("")
    s["newsletter"].set_checked(False)
    s["terms"].set_checked(False)
    s["language"].set_selected(0)
    s["country"].select(0)
    s["comments"].set_text("")
    set_status(scr, "Form cleared")


def build_form_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = _screen(registry, size, "Form Demo", "TAB/Shift+TAB: next field  Arrows: navigate  Mouse: click  ESC: main menu")
    s = scr.state
    scr.register(Label(3, 3, "Name:"))
    s["name"] = scr.add(TextBox(13, 3, 28))
    scr.register(Label(3, 5, "Email:"))
    s["email"] = scr.add(TextBox(13, 5, 28))
    s["newsletter"] = scr.add(CheckBox(3, 7, "Subscribe to newsletter"))
    s["terms"] = scr.add(CheckBox(3, 8, "I accept the terms"))
    scr.register(Label(3, 10, "Language:"))
    s["language"] = scr.add(ComboBox(13, 10, 18, data.LANGUAGES))
    scr.register(Label(46, 3, "Country:"))
    s["country"] = scr.add(ListBox(46, 4, 30, 10, data.COUNTRIES, title="Countries"))
    scr.register(Label(3, 12, "Comments:"))
    s["comments"] = scr.add(EditBox(3, 13, 40, 6))
    scr.add(Button(3, 20, "Submit"), on_click=_form_submit)
    scr.add(Button(15, 20, "Cancel"), on_click=_form_cancel)
    scr.add(Button(27, 20, "Reset"), on_click=_form_reset)
    _status(scr, size.rows - 2, size.cols)
    return scr


# --------------------------------------------------------------------------
# 2. Grid
# --------------------------------------------------------------------------


def _grid_change(scr: Screen, wid: Any, ev: Any) -> None:
    g: Grid = scr.state["grid"]
    col = g.columns[g.cur_col].title
    set_status(scr, f"Row {g.cur_row + 1}, {col}: {g.rows[g.cur_row][g.cur_col]}")


def build_grid_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = _screen(registry, size, "Grid/Table Demo", "Arrows/PgUp/PgDn: move  ENTER or click twice: edit  ESC: main menu")
    cols = [GridColumn(t, w) for t, w in data.GRID_COLUMNS]
    grid = Grid(3, 3, cols, data.GRID_ROWS)
    scr.state["grid"] = grid
    scr.add(grid, on_change=_grid_change)
    _status(scr, size.rows - 2, size.cols, "Row 1, ID: 101")
    return scr


# --------------------------------------------------------------------------
# 3. Menu bar
# --------------------------------------------------------------------------


def _menu_status(scr: Screen, item: MenuItem) -> None:
    set_status(scr, f"Selected: {item.label}")


def _menu_exit(scr: Screen, item: MenuItem) -> None:
    scr.exit(ExitReason.REQUESTED)


def _font_menu() -> MenuItem:
    return MenuItem.submenu("Font", [
        MenuItem.item("Arial", _menu_status),
        MenuItem.item("Times New Roman", _menu_status),
        MenuItem.item("Courier New", _menu_status),
        MenuItem.separator(),
        MenuItem.check("Bold", hint="Ctrl+B"),
        MenuItem.check("Italic", hint="Ctrl+I"),
        MenuItem.check("Underline", hint="Ctrl+U"),
        MenuItem.separator(),
        _size_menu(),
    ])


def _size_menu() -> MenuItem:
    return MenuItem.submenu("Size", [MenuItem.item(f"{n} pt", _menu_status) for n in (10, 12, 14, 16, 18)])


def demo_menus() -> list[MenuItem]:
    return [
        MenuItem.submenu("File", [
            MenuItem.item("New", _menu_status, "Ctrl+N"),
            MenuItem.item("Open...", _menu_status, "Ctrl+O"),
            MenuItem.item("Save", _menu_status, "Ctrl+S"),
            MenuItem.separator(),
            MenuItem.item("Exit", _menu_exit),
        ]),
        MenuItem.submenu("Edit", [
            MenuItem.item("Undo", _menu_status, "Ctrl+Z"),
            MenuItem.item("Redo", _menu_status, "Ctrl+Y"),
            MenuItem.separator(),
            MenuItem.item("Cut", _menu_status, "Ctrl+X"),
            MenuItem.item("Copy", _menu_status, "Ctrl+C"),
            MenuItem.item("Paste", _menu_status, "Ctrl+V"),
        ]),
        MenuItem.submenu("View", [
            MenuItem.check("Toolbar", True),
            MenuItem.check("Status Bar", True),
            MenuItem.separator(),
            MenuItem.submenu("Zoom", [
                MenuItem.item("Zoom In", _menu_status),
                MenuItem.item("Zoom Out", _menu_status),
                MenuItem.item("Reset Zoom", _menu_status),
            ]),
        ]),
        MenuItem.submenu("Format", [_font_menu(), _size_menu()]),
        MenuItem.submenu("Help", [
            MenuItem.item("Keyboard Shortcuts", _menu_status, "F1"),
            MenuItem.item("About", _menu_status),
        ]),
    ]


def build_menu_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = _screen(registry, size, None, "F10: open menu  Arrows: move  ENTER: select  ESC: close menu / main menu")
    scr.add_menubar(MenuBar(1, size.cols, demo_menus()))
    box = Frame(Rect(3, 4, 60, 12), title="Menu Bar Demo", border=BorderStyle.SINGLE)
    scr.register(box)
    lines = [
        "Press F10 or click a title to open the menu bar.",
        "LEFT/RIGHT switch menus or open and close submenus.",
        "UP/DOWN move between items, separators are skipped.",
        "ENTER runs an item or toggles a checked item.",
        "ESC closes one menu level at a time.",
        "",
        "Format > Font holds typefaces, styles and sizes.",
    ]
    for i, text in enumerate(lines):
        box.add(Label(2, 2 + i, text))
    _status(scr, size.rows - 2, size.cols)
    return scr


# --------------------------------------------------------------------------
# 4. Window manager
# --------------------------------------------------------------------------


def _wm_save(scr: Screen, wid: Any, ev: Any) -> None:
    s = scr.state
    s["saved"] = (s["wm_name"].text, s["wm_email"].text)
    s["wm_note"].text = f"Saved {s['wm_name'].text or '(no name)'}"


def build_window_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = Screen(registry)
    desk = Desktop(Rect(1, 1, size.cols, size.rows))
    scr.register(desk)
    s = scr.state
    s["desktop"] = desk

    info = desk.add_window(Window(Rect(2, 2, 36, 10), "Information"))
    for i, text in enumerate([
        "Drag a title bar to move.",
        "Drag the corner to resize.",
        "[-] [^] [X] on the title bar.",
        "F12: next window",
        "TAB: next control",
        "ESC: main menu",
    ]):
        info.add(Label(2, 1 + i, text))

    form = desk.add_window(Window(Rect(40, 2, 38, 11), "User Form"))
    form.add(Label(2, 1, "Name:"))
    s["wm_name"] = form.add(TextBox(9, 1, 24))
    form.add(Label(2, 3, "Email:"))
    s["wm_email"] = form.add(TextBox(9, 3, 24))
    form.add(CheckBox(2, 5, "Newsletter"))
    form.add(CheckBox(2, 6, "Remember me", True))
    save = form.add(Button(2, 8, "Save"))
    s["wm_note"] = form.add(Label(12, 8, "", 22))
    scr.on(save, EventKind.CLICK, _wm_save)

    country = desk.add_window(Window(Rect(4, 13, 30, 10), "Select Country"))
    country.add(ListBox(1, 1, 28, 8, data.COUNTRIES, bordered=False))

    status = desk.add_window(Window(Rect(38, 14, 36, 9), "Status"))
    status.add(Label(2, 1, "CPU:"))
    status.add(ProgressBar(12, 1, 20, 23))
    status.add(Label(2, 2, "Memory:"))
    status.add(ProgressBar(12, 2, 20, 58))
    status.add(Label(2, 3, "Disk:"))
    status.add(ProgressBar(12, 3, 20, 71))
    status.add(Label(2, 5, "Network: Connected"))
    return scr


# --------------------------------------------------------------------------
# 5. Tree view
# --------------------------------------------------------------------------


def _n(label: str, *children: TreeNode, expanded: bool = False) -> TreeNode:
    return TreeNode(label, list(children), expanded)


def filesystem_tree() -> TreeNode:
    return _n(
        "C:\\",
        _n(
            "Program Files",
            _n("Microsoft Office", _n("WINWORD.EXE"), _n("EXCEL.EXE")),
            _n("Python", _n("python.exe"), _n("pythonw.exe")),
            expanded=True,
        ),
        _n("Users", _n("Public"), _n("Admin", _n("Documents"), _n("Desktop"))),
        _n("Windows", _n("System32"), _n("Fonts")),
        expanded=True,
    )


def org_tree() -> TreeNode:
    return _n(
        "CEO",
        _n(
            "CTO",
            _n("Engineering Manager", _n("Senior Developer"), _n("Developer")),
            _n("QA Manager", _n("Test Engineer")),
            expanded=True,
        ),
        _n("CFO", _n("Accountant"), _n("Financial Analyst")),
        _n("COO", _n("Operations Manager")),
        expanded=True,
    )


def _tree_change(scr: Screen, wid: Any, ev: Any) -> None:
    t: TreeView = scr.widget(wid)
    node, _depth = t.visible_nodes[t.current]
    set_status(scr, f"{t.title}: {node.label}")


def build_tree_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = _screen(registry, size, "Tree View Demo", "UP/DOWN: move  +/-/ENTER: expand/collapse  TAB: other tree  ESC: back")
    half = size.cols // 2
    fs = TreeView(2, 3, half - 2, size.rows - 6, [filesystem_tree()], title="File System")
    org = TreeView(half + 1, 3, size.cols - half - 1, size.rows - 6, [org_tree()], title="Organization")
    scr.state["trees"] = (fs, org)
    scr.add(fs, on_change=_tree_change)
    scr.add(org, on_change=_tree_change)
    _status(scr, size.rows - 2, size.cols)
    return scr


# --------------------------------------------------------------------------
# 6. Tabs
# --------------------------------------------------------------------------


def _fill_tabs(tabs: TabControl) -> None:
    tabs.add_to("General", Label(2, 1, "Username:"))
    tabs.add_to("General", TextBox(14, 1, 24, "admin"))
    tabs.add_to("General", Label(2, 3, "Language:"))
    tabs.add_to("General", ComboBox(14, 3, 16, data.LANGUAGES))
    tabs.add_to("General", CheckBox(2, 5, "Auto-save enabled", True))
    tabs.add_to("General", CheckBox(2, 6, "Show notifications", True))

    tabs.add_to("Appearance", Label(2, 1, "Theme:"))
    tabs.add_to("Appearance", ListBox(14, 1, 20, 6, ["Classic", "Dark", "Light", "High Contrast"]))
    tabs.add_to("Appearance", Label(2, 8, "Font size:"))
    tabs.add_to("Appearance", Spinner(14, 8, 10, 12, 8, 32, 1))
    tabs.add_to("Appearance", CheckBox(2, 10, "Show toolbar", True))

    tabs.add_to("Network", Label(2, 1, "Proxy host:"))
    tabs.add_to("Network", TextBox(15, 1, 24, "proxy.example.com"))
    tabs.add_to("Network", Label(2, 3, "Port:"))
    tabs.add_to("Network", Spinner(15, 3, 12, 8080, 1, 65535, 1))
    tabs.add_to("Network", CheckBox(2, 5, "Use proxy"))

    tabs.add_to("About", Label(2, 1, "TUI toolkit settings demo"))
    tabs.add_to("About", Label(2, 3, "F11 switches pages, TAB moves between controls."))


def build_tabs_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = _screen(registry, size, "Tab Control Demo", "TAB: next control  F11: next page  Mouse: click a tab  ESC: main menu")
    tabs = TabControl(Rect(2, 3, size.cols - 2, size.rows - 6), ["General", "Appearance", "Network", "About"])
    scr.state["tabs"] = tabs
    scr.register(tabs)
    _fill_tabs(tabs)
    return scr


# --------------------------------------------------------------------------
# 7. Controls
# --------------------------------------------------------------------------


def _controls_step(scr: Screen, wid: Any, ev: Any) -> None:
    for bar in scr.state["bars"]:
        bar.value = (bar.value + 10) % 110


def _controls_change(scr: Screen, wid: Any, ev: Any) -> None:
    set_status(scr, f"Value: {ev}")


def build_controls_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = _screen(registry, size, "Controls Demo", "TAB: next control  Arrows/click: adjust  ENTER: type value  ESC: back")
    scr.register(Label(3, 3, "Progress bars", colors=TITLE))
    bars = []
    for i, (name, value) in enumerate([("Download:", 65), ("Upload:", 30), ("Processing:", 90)]):
        scr.register(Label(3, 4 + i, name))
        bars.append(ProgressBar(16, 4 + i, 32, value))
        scr.register(bars[-1])
    scr.state["bars"] = bars
    scr.add(Button(50, 4, "Step +10%"), on_click=_controls_step)

    scr.register(Label(3, 9, "Spinners", colors=TITLE))
    scr.register(Label(3, 10, "Quantity:"))
    scr.add(Spinner(16, 10, 12, 5, 0, 100, 1), on_change=_controls_change)
    scr.register(Label(3, 11, "Percentage:"))
    scr.add(Spinner(16, 11, 12, 50, 0, 100, 5), on_change=_controls_change)

    scr.register(Label(3, 13, "Scroll bars", colors=TITLE))
    scr.register(Label(3, 14, "Horizontal:"))
    scr.add(ScrollBar(16, 14, 32, Orientation.HORIZONTAL, 0, 100, 40, label_width=3), on_change=_controls_change)
    scr.register(Label(56, 9, "Vertical:"))
    scr.add(ScrollBar(60, 10, 10, Orientation.VERTICAL, 0, 100, 25, label_width=3), on_change=_controls_change)
    _status(scr, size.rows - 2, size.cols)
    return scr


# --------------------------------------------------------------------------
# 8. Menu + tabs
# --------------------------------------------------------------------------


def _show_page(scr: Screen, item: MenuItem) -> None:
    tabs: TabControl = scr.state["tabs"]
    tabs.switch([p.title for p in tabs.pages].index(item.label))


def build_menu_tabs_demo(registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    scr = _screen(registry, size, None, "F10: menu  F11: next page  TAB: next control  ESC: main menu")
    titles = ["General", "Appearance", "Network", "About"]
    menus = [
        MenuItem.submenu("File", [MenuItem.item("Save", _menu_status, "Ctrl+S"), MenuItem.separator(), MenuItem.item("Exit", _menu_exit)]),
        MenuItem.submenu("Pages", [MenuItem.item(t, _show_page) for t in titles]),
        MenuItem.submenu("Format", [_font_menu()]),
        MenuItem.submenu("Help", [MenuItem.item("About", _menu_status)]),
    ]
    scr.add_menubar(MenuBar(1, size.cols, menus))
    tabs = TabControl(Rect(2, 3, size.cols - 2, size.rows - 6), titles)
    scr.state["tabs"] = tabs
    scr.register(tabs)
    _fill_tabs(tabs)
    _status(scr, size.rows - 2, size.cols)
    return scr


BUILDERS: dict[int, Callable[..., Screen]] = {
    1: build_form_demo,
    2: build_grid_demo,
    3: build_menu_demo,
    4: build_window_demo,
    5: build_tree_demo,
    6: build_tabs_demo,
    7: build_controls_demo,
    8: build_menu_tabs_demo,
}


def build_demo(n: int, registry: HandlerRegistry | None = None, size: TerminalSize = TerminalSize(24, 80)) -> Screen:
    if n not in BUILDERS:
        raise UnknownDemo(f"no demo {n} (expected 1..8)")
    return BUILDERS[n](registry, size)
