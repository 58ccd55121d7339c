from __future__ import annotations

import random

import pytest

from support import full_redraw, start
from tuikit.backend import Key, KeyEvent
from tuikit.events import Screen
from tuikit.geometry import Rect
from tuikit.tree import NotAParent, TreeNode, TreeView, flatten, row_text
from tuikit.widgets import Frame


def _random_forest(rng: random.Random, depth=0) -> list[TreeNode]:
    out = []
    for i in range(rng.randint(1 if depth == 0 else 0, 3)):
        kids = _random_forest(rng, depth + 1) if depth < 3 else []
        out.append(TreeNode(f"n{depth}{i}", kids, expanded=rng.random() < 0.5))
    return out


def _flatten_oracle(nodes, depth=0):
    out = []
    for n in nodes:
        out.append((n, depth))
        if n.expanded:
            out += _flatten_oracle(n.children, depth + 1)
    return out


def test_flatten_matches_recursive_definition():
    rng = random.Random(3)
    for _ in range(200):
        roots = _random_forest(rng)
        assert flatten(roots) == _flatten_oracle(roots)


def test_row_text_glyphs():
    leaf = TreeNode("leaf")
    parent = TreeNode("dir", [leaf])
    assert row_text(leaf, 2) == "        leaf"
    assert row_text(parent, 0) == "[+] dir"
    parent.expanded = True
    assert row_text(parent, 1) == "  [-] dir"


def _view(height=8):
    roots = [
        TreeNode("a", [TreeNode("a1"), TreeNode("a2", [TreeNode("a2x")])]),
        TreeNode("b", [TreeNode("b1")]),
        TreeNode("c"),
    ]
    tv = TreeView(2, 2, 20, height, roots)
    scr = Screen()
    scr.set_background(Frame(Rect(1, 1, 80, 24)))
    scr.add(tv)
    return tv, scr, start(scr)


def labels(tv):
    return [n.label for n, _ in tv.visible_nodes]


def test_plus_expands_minus_collapses_only():
    tv, scr, h = _view()
    h.type("-")
    assert labels(tv) == ["a", "b", "c"]
    h.type("+")
    assert labels(tv) == ["a", "a1", "a2", "b", "c"]
    h.type("+")
    assert labels(tv) == ["a", "a1", "a2", "b", "c"]
    h.type("-")
    assert labels(tv) == ["a", "b", "c"]
    h.key(Key.ENTER)
    assert labels(tv) == ["a", "a1", "a2", "b", "c"]
    assert h.grid() == full_redraw(scr)


def test_toggle_keeps_current_node_and_repaints_from_row():
    tv, scr, h = _view()
    tv.toggle(0)
    tv.navigate(Key.END)
    assert labels(tv)[tv.current] == "c"
    rows = tv.toggle(3)
    assert labels(tv)[tv.current] == "c"
    assert min(rows) == 3
    with pytest.raises(NotAParent):
        tv.toggle(tv.current)


def test_glyph_click_toggles_label_click_selects():
    tv, scr, h = _view()
    inner = tv.inner
    h.click(inner.x + 4, inner.y + 1)
    assert labels(tv) == ["a", "b", "c"] and tv.current == 1
    h.click(inner.x + 2, inner.y + 1)
    assert labels(tv) == ["a", "b", "b1", "c"]
    # Clicks on a leaf's glyph area just select it.
    h.click(inner.x + 2, inner.y + 2)
    assert tv.current == 2 and len(labels(tv)) == 4
    assert h.grid() == full_redraw(scr)


def test_scrolls_when_expanded_past_viewport():
    tv, scr, h = _view(height=5)
    for n in tv.roots[0].walk():
        n.expanded = True
    tv.refresh_rows()
    for _ in range(5):
        h.key(Key.DOWN)
    assert tv.current == 5 and tv.scroll_top == 3
    h.key(Key.HOME)
    assert tv.scroll_top == 0
    assert h.grid() == full_redraw(scr)


def test_space_on_leaf_is_consumed_without_change():
    tv, scr, h = _view()
    h.key(Key.END)
    assert tv.handle_key(KeyEvent(Key.SPACE)) is True
    assert labels(tv) == ["a", "b", "c"]
