from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from tuikit.backend import BLANK, Cell, Color, HeadlessSession, TerminalSize
from tuikit.geometry import Rect
from tuikit.render import (
    BorderStyle, ClipStackUnderflow, ControlCharacter, FrameBuffer, SizeMismatch, TooSmall,
    coalesce_runs, fixed_width,
)

SMALL = TerminalSize(6, 12)
W, B = Color.WHITE, Color.BLUE


def test_fixed_width_pads_and_truncates():
    assert fixed_width("ab", 4) == "ab  "
    assert fixed_width("abcdef", 3) == "abc"
    assert fixed_width("", 0) == ""
    with pytest.raises(ValueError):
        fixed_width("a", -1)


@given(st.sets(st.integers(0, 40)))
def test_coalesce_runs_partitions_columns(cols):
    runs = coalesce_runs(sorted(cols))
    covered = [c for start, n in runs for c in range(start, start + n)]
    assert covered == sorted(cols)
    # Maximal: consecutive runs never touch.
    for (s1, n1), (s2, _) in zip(runs, runs[1:]):
        assert s1 + n1 < s2


def test_put_text_clips_to_screen_and_stack():
    fb = FrameBuffer(SMALL)
    fb.put_text(-1, 1, "abcdef", W, B)
    assert "".join(c.glyph for c in fb.back[0][:4]) == "cdef"
    with fb.clipped(Rect(3, 2, 3, 1), Rect(4, 1, 10, 10)):
        assert fb.clip == Rect(4, 2, 2, 1)
        fb.put_text(1, 2, "xxxxxxxx", W, B)
        fb.fill_rect(Rect(1, 1, 12, 6), "#", W, B)
    assert fb.clip == fb.screen_rect
    row2 = "".join(c.glyph for c in fb.back[1])
    assert row2 == "   ##       "
    fb.put_text(1, 99, "off screen", W, B)


def test_clip_stack_underflow():
    fb = FrameBuffer(SMALL)
    with pytest.raises(ClipStackUnderflow):
        fb.pop_clip()


@pytest.mark.parametrize("text", ["a\nb", "\x1b[31m", "tab\t", "\x7f"])
def test_control_characters_rejected(text):
    fb = FrameBuffer(SMALL)
    with pytest.raises(ControlCharacter):
        fb.put_text(1, 1, text, W, B)


def test_borders():
    fb = FrameBuffer(SMALL)
    fb.draw_border(Rect(1, 1, 4, 3), BorderStyle.DOUBLE, W, B)
    assert ["".join(c.glyph for c in row[:4]) for row in fb.back[:3]] == ["+==+", "|  |", "+==+"]
    ufb = FrameBuffer(SMALL, unicode=True)
    ufb.draw_border(Rect(1, 1, 3, 2), BorderStyle.SINGLE, W, B)
    assert ["".join(c.glyph for c in row[:3]) for row in ufb.back[:2]] == ["┌─┐", "└─┘"]
    with pytest.raises(TooSmall):
        fb.draw_border(Rect(1, 1, 1, 5), BorderStyle.SINGLE, W, B)


def test_copy_paste_region_restores():
    fb = FrameBuffer(SMALL)
    fb.put_text(2, 2, "hello", W, B)
    saved = fb.copy_region(Rect(1, 1, 8, 3))
    before = [list(r) for r in fb.back]
    fb.fill_rect(Rect(1, 1, 8, 3), "#", Color.RED, Color.RED)
    fb.paste_region(Rect(1, 1, 8, 3), saved)
    assert fb.back == before


draw_ops = st.lists(
    st.tuples(
        st.integers(-2, 13), st.integers(-1, 7), st.text("ab-", min_size=0, max_size=8),
        st.sampled_from(list(Color)), st.sampled_from(list(Color)),
    ),
    max_size=12,
)


@given(st.lists(draw_ops, min_size=1, max_size=5))
def test_flush_writes_exactly_the_changed_cells(batches):
    session = HeadlessSession(SMALL)
    fb = FrameBuffer(SMALL)
    presented = []
    inner = session.present
    session.present = lambda runs: (presented.append(list(runs)), inner(presented[-1]))
    for ops in batches:
        before = [list(r) for r in session.grid]
        for x, y, text, fg, bg in ops:
            fb.put_text(x, y, text, fg, bg)
        expected = sum(1 for y in range(SMALL.rows) for x in range(SMALL.cols) if fb.back[y][x] != before[y][x])
        stats = fb.flush(session)
        assert stats.cells_written == expected
        assert stats.runs == len(presented[-1])
        assert [list(r) for r in session.grid] == fb.back
        # Every run covers only changed cells.
        for x, y, cells in presented[-1]:
            assert all(before[y - 1][x - 1 + i] != c for i, c in enumerate(cells))


def test_second_flush_is_empty_and_cursor_forwarded():
    session = HeadlessSession(SMALL)
    fb = FrameBuffer(SMALL)
    fb.put_text(1, 1, "x", W, B)
    fb.cursor_req = (3, 4)
    assert fb.flush(session).cells_written == 1
    assert fb.flush(session).cells_written == 0
    assert session.cursor == (3, 4)
    fb.cursor_req = (99, 1)
    fb.flush(session)
    assert session.cursor is None


def test_resize_requires_matching_session():
    session = HeadlessSession(SMALL)
    fb = FrameBuffer(SMALL)
    fb.put_text(1, 1, "x", W, B)
    fb.resize(TerminalSize(3, 5))
    assert fb.get(1, 1) == BLANK
    with pytest.raises(SizeMismatch):
        fb.flush(session)
    session.resize(TerminalSize(3, 5))
    fb.put_text(1, 1, "y", W, B)
    assert fb.flush(session).cells_written == 1
    assert session.grid[0][0] == Cell("y", W, B)
