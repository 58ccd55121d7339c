"""A terminal UI toolkit: buffered diff rendering, widgets, grid, tree, menus, tabs and windows."""

from __future__ import annotations

from .backend import (
    BLANK, Cell, Color, HeadlessSession, Key, KeyEvent, Mode, MouseButton, MouseEvent, MouseKind,
    Snapshot, TerminalSize, close_session, open_session,
)
from .events import ClickFilter, EventKind, ExitReason, HandlerRegistry, Screen, format_script, parse_script
from .geometry import EMPTY, Rect
from .grid import Grid, GridColumn
from .nav import MenuBar, MenuItem, TabControl
from .render import BorderStyle, DiffStats, FrameBuffer
from .tree import TreeNode, TreeView
from .widgets import (
    Button, CheckBox, ComboBox, Container, EditBox, Frame, Label, ListBox, Orientation, ProgressBar,
    ScrollBar, Spinner, TextBox, Widget,
)
from .winmgr import Desktop, Window, WindowState

__all__ = [
    "BLANK", "BorderStyle", "Button", "Cell", "CheckBox", "ClickFilter", "Color", "ComboBox", "Container",
    "Desktop", "DiffStats", "EMPTY", "EditBox", "EventKind", "ExitReason", "Frame", "FrameBuffer", "Grid",
    "GridColumn", "HandlerRegistry", "HeadlessSession", "Key", "KeyEvent", "Label", "ListBox", "MenuBar",
    "MenuItem", "Mode", "MouseButton", "MouseEvent", "MouseKind", "Orientation", "ProgressBar", "Rect",
    "Screen", "ScrollBar", "Snapshot", "Spinner", "TabControl", "TerminalSize", "TextBox", "TreeNode",
    "TreeView", "Widget", "Window", "WindowState", "close_session", "format_script", "open_session",
    "parse_script",
]
