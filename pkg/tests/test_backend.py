from __future__ import annotations

import io
import os
import random
import tempfile

import pyte
import pytest
from hypothesis import given, strategies as st

from tuikit.backend import (
    BLANK, KEY_ENCODINGS, AnsiSession, Cell, Color, HeadlessSession, InputDecoder, InputExhausted,
    Key, KeyEvent, Mode, MouseButton, MouseEvent, MouseKind, NotATerminal, OutOfBounds,
    SessionAlreadyOpen, SessionClosed, Snap, TerminalSize, UnsupportedOnRealTerminal, Wait,
    close_session, encode_key, encode_mouse, encode_runs, open_session,
)

# Conventional xterm palette names for each color, written out by hand as an oracle.
PYTE_FG = {
    Color.BLACK: "black", Color.BLUE: "blue", Color.GREEN: "green", Color.CYAN: "cyan",
    Color.RED: "red", Color.MAGENTA: "magenta", Color.BROWN: "brown", Color.GREY: "white",
    Color.DARKGREY: "brightblack", Color.LIGHTBLUE: "brightblue", Color.LIGHTGREEN: "brightgreen",
    Color.LIGHTCYAN: "brightcyan", Color.LIGHTRED: "brightred", Color.LIGHTMAGENTA: "brightmagenta",
    Color.YELLOW: "brightbrown", Color.WHITE: "brightwhite",
}
# pyte spells background 105 "bfightmagenta".
PYTE_BG = {**PYTE_FG, Color.LIGHTMAGENTA: "bfightmagenta"}


def test_color_codes_are_stable():
    assert [c.name for c in Color] == [
        "BLACK", "BLUE", "GREEN", "CYAN", "RED", "MAGENTA", "BROWN", "GREY", "DARKGREY",
        "LIGHTBLUE", "LIGHTGREEN", "LIGHTCYAN", "LIGHTRED", "LIGHTMAGENTA", "YELLOW", "WHITE",
    ]
    assert [int(c) for c in Color] == list(range(16))


def test_terminal_size_must_be_positive():
    with pytest.raises(ValueError):
        TerminalSize(0, 80)


# -- decoder ---------------------------------------------------------------

key_events = st.one_of(
    st.sampled_from([KeyEvent(k) for k in KEY_ENCODINGS if k is not Key.ESC]),
    st.characters(min_codepoint=0x21, max_codepoint=0x7E).map(lambda c: KeyEvent(Key.CHAR, c)),
    st.sampled_from("éλ€中").map(lambda c: KeyEvent(Key.CHAR, c)),
)
mouse_events = st.builds(
    MouseEvent, st.integers(1, 80), st.integers(1, 24), st.sampled_from(list(MouseButton)), st.sampled_from(list(MouseKind))
)


@given(st.lists(st.one_of(key_events, mouse_events), max_size=20), st.randoms(use_true_random=False))
def test_decoder_round_trips_under_any_split(events, rnd):
    data = b"".join(encode_mouse(e) if isinstance(e, MouseEvent) else encode_key(e) for e in events)
    dec = InputDecoder(lambda: TerminalSize(24, 80))
    out = []
    i = 0
    while i < len(data):
        j = i + rnd.randint(1, 7)
        out += dec.feed(data[i:j])
        i = j
    out += dec.finish()
    assert out == events


def test_lone_escape_needs_idle_to_resolve():
    dec = InputDecoder()
    assert dec.feed(b"\x1b") == []
    assert dec.pending
    assert dec.finish() == [KeyEvent(Key.ESC)]
    assert dec.feed(b"\x1b\x1b[A") == [KeyEvent(Key.ESC), KeyEvent(Key.UP)]


def test_alternative_encodings():
    dec = InputDecoder()
    assert dec.feed(b"\x1bOA\x1b[1~\x1b[4~\x1b[11~\n\x08") == [
        KeyEvent(Key.UP), KeyEvent(Key.HOME), KeyEvent(Key.END), KeyEvent(Key.F1),
        KeyEvent(Key.ENTER), KeyEvent(Key.BACKSPACE),
    ]
    # X10 mouse: button 0 press at (5, 3), then release.
    assert dec.feed(b"\x1b[M %#\x1b[M#%#") == [
        MouseEvent(5, 3, MouseButton.LEFT, MouseKind.PRESS),
        MouseEvent(5, 3, MouseButton.LEFT, MouseKind.RELEASE),
    ]


def test_bad_mouse_reports_are_skipped():
    dec = InputDecoder(lambda: TerminalSize(24, 80))
    # Two-field report, button code 3 on press, out of bounds, wheel, motion.
    out = dec.feed(b"\x1b[<0;3Ma\x1b[<3;2;2M\x1b[<0;90;3M\x1b[<64;2;2M\x1b[<35;2;2Mb")
    assert out == [KeyEvent(Key.CHAR, "a"), KeyEvent(Key.CHAR, "b")]
    assert len(dec.errors) == 2


def test_unknown_sequences_are_dropped():
    dec = InputDecoder()
    assert dec.feed(b"\x1bx\x1b[99~\x1b[1;5Xq") == [KeyEvent(Key.CHAR, "q")]


# -- headless session ------------------------------------------------------


def test_headless_present_and_snapshot():
    s = HeadlessSession(TerminalSize(3, 10))
    s.present([(2, 1, [Cell("a", Color.RED, Color.BLUE), Cell("b", Color.RED, Color.BLUE)])])
    snap = s.snapshot()
    assert snap.line(1) == " ab       "
    assert snap.color_map()[0][:6] == "F041" "41"
    assert snap.find("ab") == (2, 1)
    assert "ab" in snap and "zz" not in snap
    with pytest.raises(OutOfBounds):
        s.present([(10, 1, [BLANK, BLANK])])
    with pytest.raises(OutOfBounds):
        s.set_cursor((11, 1))
    s.set_cursor((3, 2))
    assert s.snapshot().cursor == (3, 2)


def test_headless_script_clock_and_snaps():
    s = HeadlessSession(raise_when_exhausted=True)
    snaps = []
    s.on_snap = lambda name, snap: snaps.append((name, s.now_ms()))
    s.feed([Wait(100), Snap("a"), KeyEvent(Key.UP), Wait(50)])
    assert s.poll_input() == KeyEvent(Key.UP)
    assert snaps == [("a", 100)]
    with pytest.raises(InputExhausted):
        s.poll_input()
    assert s.now_ms() == 150


def test_headless_bytes_are_decoded():
    s = HeadlessSession()
    s.feed_bytes(b"\x1b[<0;4;5M\x1b")
    assert s.poll_input() == MouseEvent(4, 5)
    assert s.poll_input() == KeyEvent(Key.ESC)
    assert s.poll_input() is None


def test_headless_resize_keeps_overlap():
    s = HeadlessSession(TerminalSize(2, 2))
    s.present([(1, 1, [Cell("x", Color.WHITE, Color.BLACK)] * 2)])
    s.resize(TerminalSize(3, 1))
    assert s.snapshot().text() == ["x", " ", " "]


def test_session_lifecycle():
    s = open_session(Mode.HEADLESS, TerminalSize(5, 5))
    try:
        with pytest.raises(SessionAlreadyOpen):
            open_session("headless")
    finally:
        close_session(s)
    with pytest.raises(SessionClosed):
        s.poll_input()
    again = open_session("HEADLESS")
    close_session(again)


def test_real_terminal_requires_a_tty():
    with pytest.raises(NotATerminal):
        open_session(Mode.REAL, stdout=io.StringIO())


# -- ANSI output checked against a terminal emulator ----------------------


def _ansi_session(tmp):
    r, w = os.pipe()
    infile = os.fdopen(r, "rb", buffering=0)
    session = AnsiSession(infile, tmp)
    # The session keeps only the descriptor; hold the file object so it stays open.
    session._test_infile = infile
    return session, os.fdopen(w, "wb", buffering=0)


def _emulate(data: bytes, rows=24, cols=80) -> pyte.Screen:
    screen = pyte.Screen(cols, rows)
    stream = pyte.ByteStream(screen)
    stream.feed(data)
    return screen


def test_ansi_runs_match_emulator():
    rng = random.Random(5)
    grid = [[BLANK] * 80 for _ in range(24)]
    runs = []
    for _ in range(300):
        x, y = rng.randint(1, 80), rng.randint(1, 24)
        n = rng.randint(1, 81 - x)
        cells = [Cell(rng.choice("ab#|-~"), rng.choice(list(Color)), rng.choice(list(Color))) for _ in range(n)]
        runs.append((x, y, cells))
        grid[y - 1][x - 1 : x - 1 + n] = cells
    screen = _emulate(encode_runs(runs).encode())
    for y in range(24):
        for x in range(80):
            want, got = grid[y][x], screen.buffer[y][x]
            if want is BLANK:
                continue
            assert got.data == want.glyph
            assert (got.fg, got.bg) == (PYTE_FG[want.fg], PYTE_BG[want.bg])


def test_ansi_session_writes_and_reads():
    with tempfile.TemporaryFile() as tmp:
        session, feeder = _ansi_session(tmp)
        try:
            assert session.size() == TerminalSize(24, 80)
            session.present([(3, 2, [Cell("h", Color.YELLOW, Color.BLUE), Cell("i", Color.YELLOW, Color.BLUE)])])
            session.set_cursor((4, 2))
            feeder.write(b"\x1b[A\x1b[<0;7;8M")
            assert session.poll_input(200) == KeyEvent(Key.UP)
            assert session.poll_input(200) == MouseEvent(7, 8)
            feeder.write(b"\x1b")
            assert session.poll_input(200) == KeyEvent(Key.ESC)
            assert session.poll_input(10) is None
            with pytest.raises(UnsupportedOnRealTerminal):
                session.snapshot()
            tmp.seek(0)
            screen = _emulate(tmp.read())
        finally:
            session.close()
            feeder.close()
        tmp.seek(0)
        # Leaving the session clears the alternate screen and shows the cursor again.
        tail = tmp.read()
        assert tail.rfind(b"\x1b[?1049l") > tail.rfind(b"\x1b[?1049h") >= 0
        assert b"\x1b[?1000l" in tail and b"\x1b[?25h" in tail
    assert screen.buffer[1][2].data == "h" and screen.buffer[1][3].data == "i"
    assert screen.buffer[1][2].fg == "brightbrown" and screen.buffer[1][2].bg == "blue"
