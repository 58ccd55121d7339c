"""Terminal backends.

Two interchangeable sessions sit behind the same small surface
(``poll_input``, ``present``, ``set_cursor``, ``close``):

* :class:`AnsiSession` drives a VT/xterm compatible tty with ANSI escapes.
* :class:`HeadlessSession` keeps an in-memory cell grid and a scripted input
  queue, used for replay and snapshot tests.

Coordinates are 1-based everywhere: ``x`` is the column, ``y`` the row.
"""

from __future__ import annotations

import enum
import logging
import os
import select
import sys
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence, Union

log = logging.getLogger(__name__)


class BackendError(Exception):
    pass


class NotATerminal(BackendError):
    pass


class SessionAlreadyOpen(BackendError):
    pass


class SessionClosed(BackendError):
    pass


class OutOfBounds(BackendError, IndexError):
    pass


class UnsupportedOnRealTerminal(BackendError):
    pass


class DecodeError(BackendError):
    """A mouse report that cannot be decoded; logged and skipped."""


class InputExhausted(BackendError):
    """Raised by a headless session whose scripted input ran out."""


class Color(enum.IntEnum):
    BLACK = 0
    BLUE = 1
    GREEN = 2
    CYAN = 3
    RED = 4
    MAGENTA = 5
    BROWN = 6
    GREY = 7
    DARKGREY = 8
    LIGHTBLUE = 9
    LIGHTGREEN = 10
    LIGHTCYAN = 11
    LIGHTRED = 12
    LIGHTMAGENTA = 13
    YELLOW = 14
    WHITE = 15


# Color code -> ANSI palette offset (0..7 for 30-37/40-47, 8..15 for 90-97/100-107).
_ANSI_INDEX = (0, 4, 2, 6, 1, 5, 3, 7, 8, 12, 10, 14, 9, 13, 11, 15)


def sgr_fg(color: Color) -> int:
    idx = _ANSI_INDEX[color]
    return 30 + idx if idx < 8 else 90 + idx - 8


def sgr_bg(color: Color) -> int:
    idx = _ANSI_INDEX[color]
    return 40 + idx if idx < 8 else 100 + idx - 8


class Cell(NamedTuple):
    glyph: str
    fg: Color
    bg: Color


BLANK = Cell(" ", Color.WHITE, Color.BLACK)


@dataclass(frozen=True)
class TerminalSize:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"terminal size must be positive, got {self.rows}x{self.cols}")


class Key(enum.Enum):
    CHAR = "CHAR"
    ENTER = "ENTER"
    ESC = "ESC"
    TAB = "TAB"
    BACKTAB = "BACKTAB"
    BACKSPACE = "BACKSPACE"
    DELETE = "DELETE"
    INSERT = "INSERT"
    HOME = "HOME"
    END = "END"
    KEY_PGUP = "KEY_PGUP"
    KEY_PGDOWN = "KEY_PGDOWN"
    UP = "UP"
    DOWN = "DOWN"
    LEFT = "LEFT"
    RIGHT = "RIGHT"
    SPACE = "SPACE"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"
    F6 = "F6"
    F7 = "F7"
    F8 = "F8"
    F9 = "F9"
    F10 = "F10"
    F11 = "F11"
    F12 = "F12"


class MouseButton(enum.Enum):
    LEFT = "LEFT"
    MIDDLE = "MIDDLE"
    RIGHT = "RIGHT"


class MouseKind(enum.Enum):
    PRESS = "PRESS"
    RELEASE = "RELEASE"


@dataclass(frozen=True)
class KeyEvent:
    key: Key
    char: str = ""

    @classmethod
    def of(cls, key: Key | str) -> KeyEvent:
        """``KeyEvent.of(Key.UP)`` or ``KeyEvent.of("a")`` for a printable."""
        if isinstance(key, Key):
            return cls(key)
        if key == " ":
            return cls(Key.SPACE)
        return cls(Key.CHAR, key)

    @property
    def text(self) -> str:
        """The character this key types, or '' for non-printing keys."""
        if self.key is Key.CHAR:
            return self.char
        if self.key is Key.SPACE:
            return " "
        return ""


@dataclass(frozen=True)
class MouseEvent:
    x: int
    y: int
    button: MouseButton = MouseButton.LEFT
    kind: MouseKind = MouseKind.PRESS


@dataclass(frozen=True)
class ResizeEvent:
    size: TerminalSize


@dataclass(frozen=True)
class TickEvent:
    pass


InputEvent = Union[KeyEvent, MouseEvent, ResizeEvent, TickEvent]


# --------------------------------------------------------------------------
# Wire encoding of keys (used by the decoder tests and the script replayer)
# --------------------------------------------------------------------------

KEY_ENCODINGS: dict[Key, bytes] = {
    Key.ENTER: b"\r",
    Key.ESC: b"\x1b",
    Key.TAB: b"\t",
    Key.BACKTAB: b"\x1b[Z",
    Key.BACKSPACE: b"\x7f",
    Key.DELETE: b"\x1b[3~",
    Key.INSERT: b"\x1b[2~",
    Key.HOME: b"\x1b[H",
    Key.END: b"\x1b[F",
    Key.KEY_PGUP: b"\x1b[5~",
    Key.KEY_PGDOWN: b"\x1b[6~",
    Key.UP: b"\x1b[A",
    Key.DOWN: b"\x1b[B",
    Key.RIGHT: b"\x1b[C",
    Key.LEFT: b"\x1b[D",
    Key.SPACE: b" ",
    Key.F1: b"\x1bOP",
    Key.F2: b"\x1bOQ",
    Key.F3: b"\x1bOR",
    Key.F4: b"\x1bOS",
    Key.F5: b"\x1b[15~",
    Key.F6: b"\x1b[17~",
    Key.F7: b"\x1b[18~",
    Key.F8: b"\x1b[19~",
    Key.F9: b"\x1b[20~",
    Key.F10: b"\x1b[21~",
    Key.F11: b"\x1b[23~",
    Key.F12: b"\x1b[24~",
}


def encode_key(ev: KeyEvent) -> bytes:
    if ev.key is Key.CHAR:
        return ev.char.encode("utf-8")
    return KEY_ENCODINGS[ev.key]


def encode_mouse(ev: MouseEvent) -> bytes:
    """SGR-1006 encoding of a mouse report."""
    code = {MouseButton.LEFT: 0, MouseButton.MIDDLE: 1, MouseButton.RIGHT: 2}[ev.button]
    final = "M" if ev.kind is MouseKind.PRESS else "m"
    return f"\x1b[<{code};{ev.x};{ev.y}{final}".encode()


_CSI_TILDE = {
    1: Key.HOME, 2: Key.INSERT, 3: Key.DELETE, 4: Key.END, 5: Key.KEY_PGUP,
    6: Key.KEY_PGDOWN, 7: Key.HOME, 8: Key.END, 11: Key.F1, 12: Key.F2,
    13: Key.F3, 14: Key.F4, 15: Key.F5, 17: Key.F6, 18: Key.F7, 19: Key.F8,
    20: Key.F9, 21: Key.F10, 23: Key.F11, 24: Key.F12,
}
_CSI_FINAL = {
    "A": Key.UP, "B": Key.DOWN, "C": Key.RIGHT, "D": Key.LEFT,
    "H": Key.HOME, "F": Key.END, "Z": Key.BACKTAB,
    "P": Key.F1, "Q": Key.F2, "R": Key.F3, "S": Key.F4,
}
_SS3_FINAL = {
    "A": Key.UP, "B": Key.DOWN, "C": Key.RIGHT, "D": Key.LEFT,
    "H": Key.HOME, "F": Key.END,
    "P": Key.F1, "Q": Key.F2, "R": Key.F3, "S": Key.F4,
}
_MAX_SEQ = 64


class InputDecoder:
    """Incremental byte -> event decoder.

    Bytes are appended with :meth:`feed`; incomplete escape sequences stay
    buffered until more bytes arrive or :meth:`finish` declares the input
    idle (a lone ESC then becomes the ESC key).
    """

    def __init__(self, size: Callable[[], TerminalSize] | None = None) -> None:
        self._buf = bytearray()
        self._size = size
        self.errors: list[DecodeError] = []

    @property
    def pending(self) -> bool:
        return bool(self._buf)

    def feed(self, data: bytes) -> list[InputEvent]:
        self._buf.extend(data)
        return self._drain(final=False)

    def finish(self) -> list[InputEvent]:
        return self._drain(final=True)

    def _drain(self, final: bool) -> list[InputEvent]:
        out: list[InputEvent] = []
        while self._buf:
            consumed, ev = self._decode_one(final)
            if consumed == 0:
                break
            del self._buf[:consumed]
            if ev is not None:
                out.append(ev)
        return out

    # Returns (bytes consumed, event or None). consumed == 0 means "need more".
    def _decode_one(self, final: bool) -> tuple[int, InputEvent | None]:
        buf = self._buf
        b = buf[0]
        if b == 0x1B:
            return self._decode_escape(final)
        if b in (0x0D, 0x0A):
            return 1, KeyEvent(Key.ENTER)
        if b == 0x09:
            return 1, KeyEvent(Key.TAB)
        if b in (0x7F, 0x08):
            return 1, KeyEvent(Key.BACKSPACE)
        if b == 0x20:
            return 1, KeyEvent(Key.SPACE)
        if 0x20 < b < 0x7F:
            return 1, KeyEvent(Key.CHAR, chr(b))
        if b < 0x20:
            return 1, None
        return self._decode_utf8(final)

    def _decode_utf8(self, final: bool) -> tuple[int, InputEvent | None]:
        b = self._buf[0]
        if 0xC2 <= b <= 0xDF:
            n = 2
        elif 0xE0 <= b <= 0xEF:
            n = 3
        elif 0xF0 <= b <= 0xF4:
            n = 4
        else:
            return 1, None
        if len(self._buf) < n:
            return (1, None) if final else (0, None)
        try:
            ch = bytes(self._buf[:n]).decode("utf-8")
        except UnicodeDecodeError:
            return 1, None
        if not ch.isprintable():
            return n, None
        return n, KeyEvent(Key.CHAR, ch)

    def _decode_escape(self, final: bool) -> tuple[int, InputEvent | None]:
        buf = self._buf
        if len(buf) == 1:
            return (1, KeyEvent(Key.ESC)) if final else (0, None)
        second = buf[1]
        if second == 0x1B:
            return 1, KeyEvent(Key.ESC)
        if second == ord("O"):
            if len(buf) < 3:
                return (2, None) if final else (0, None)
            return 3, self._key_or_none(_SS3_FINAL.get(chr(buf[2])))
        if second != ord("["):
            # Meta/Alt + key: not part of the key set, dropped whole.
            return 2, None
        if len(buf) >= 3 and buf[2] == ord("M"):
            return self._decode_x10(final)
        # CSI: parameters 0x30-0x3F, intermediates 0x20-0x2F, final 0x40-0x7E.
        i = 2
        while i < len(buf):
            c = buf[i]
            if 0x40 <= c <= 0x7E:
                return i + 1, self._decode_csi(bytes(buf[2:i]), chr(c))
            if not 0x20 <= c <= 0x3F:
                log.debug("dropping malformed CSI %r", bytes(buf[: i + 1]))
                return i, None
            i += 1
            if i > _MAX_SEQ:
                return i, None
        return (len(buf), None) if final else (0, None)

    @staticmethod
    def _key_or_none(key: Key | None) -> KeyEvent | None:
        return KeyEvent(key) if key is not None else None

    def _decode_csi(self, params: bytes, final: str) -> InputEvent | None:
        text = params.decode("ascii", "replace")
        if text.startswith("<"):
            if final not in "Mm":
                return None
            return self._checked(self._decode_sgr_mouse, text[1:], final)
        if final == "~":
            head = text.split(";")[0]
            if not head.isdigit():
                return None
            return self._key_or_none(_CSI_TILDE.get(int(head)))
        if text and not all(p.isdigit() for p in text.split(";")):
            return None
        return self._key_or_none(_CSI_FINAL.get(final))

    def _checked(self, fn, *args) -> InputEvent | None:
        try:
            return fn(*args)
        except DecodeError as exc:
            log.warning("skipping mouse report: %s", exc)
            self.errors.append(exc)
            return None

    def _decode_sgr_mouse(self, body: str, final: str) -> MouseEvent | None:
        parts = body.split(";")
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise DecodeError(f"malformed SGR mouse report {body!r}{final}")
        code, x, y = (int(p) for p in parts)
        if code & (32 | 64 | 128):
            # Motion, wheel and extra buttons are not tracked.
            return None
        button = (MouseButton.LEFT, MouseButton.MIDDLE, MouseButton.RIGHT, None)[code & 3]
        if button is None:
            raise DecodeError(f"SGR mouse report with no button: {body!r}")
        kind = MouseKind.PRESS if final == "M" else MouseKind.RELEASE
        return self._bounded(MouseEvent(x, y, button, kind))

    def _decode_x10(self, final: bool) -> tuple[int, InputEvent | None]:
        buf = self._buf
        if len(buf) < 6:
            return (len(buf), None) if final else (0, None)
        cb, cx, cy = buf[3] - 32, buf[4] - 32, buf[5] - 32
        ev = self._checked(self._x10_event, cb, cx, cy)
        return 6, ev

    def _x10_event(self, cb: int, cx: int, cy: int) -> MouseEvent | None:
        if cb < 0 or cx < 1 or cy < 1:
            raise DecodeError(f"malformed X10 mouse report ({cb}, {cx}, {cy})")
        if cb & (32 | 64):
            return None
        low = cb & 3
        if low == 3:
            return self._bounded(MouseEvent(cx, cy, MouseButton.LEFT, MouseKind.RELEASE))
        button = (MouseButton.LEFT, MouseButton.MIDDLE, MouseButton.RIGHT)[low]
        return self._bounded(MouseEvent(cx, cy, button, MouseKind.PRESS))

    def _bounded(self, ev: MouseEvent) -> MouseEvent | None:
        if self._size is None:
            return ev
        size = self._size()
        if 1 <= ev.x <= size.cols and 1 <= ev.y <= size.rows:
            return ev
        log.debug("dropping out-of-bounds mouse event %r (size %r)", ev, size)
        return None


# --------------------------------------------------------------------------
# Sessions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Wait:
    """Scripted pause: advances the headless clock by ``ms``."""

    ms: int


@dataclass(frozen=True)
class Snap:
    """Scripted request to dump the headless grid under ``name``."""

    name: str


ScriptItem = Union[KeyEvent, MouseEvent, ResizeEvent, TickEvent, Wait, Snap]
Run = tuple[int, int, Sequence[Cell]]

_current: Session | None = None


class Mode(enum.Enum):
    REAL = "REAL"
    HEADLESS = "HEADLESS"


class Session:
    """Common surface of both backends."""

    closed: bool = False

    def size(self) -> TerminalSize:
        raise NotImplementedError

    def now_ms(self) -> int:
        raise NotImplementedError

    def poll_input(self, timeout_ms: int) -> InputEvent | None:
        raise NotImplementedError

    def present(self, writes: Iterable[Run]) -> None:
        raise NotImplementedError

    def set_cursor(self, pos: tuple[int, int] | None) -> None:
        raise NotImplementedError

    def snapshot(self) -> Snapshot:
        raise UnsupportedOnRealTerminal("snapshot() is only available on headless sessions")

    def close(self) -> None:
        raise NotImplementedError

    def __enter__(self) -> Session:
        return self

    def __exit__(self, *exc) -> None:
        close_session(self)

    def _check_open(self) -> None:
        if self.closed:
            raise SessionClosed("session is closed")

    def _check_runs(self, writes: Iterable[Run]) -> list[Run]:
        size = self.size()
        runs = list(writes)
        for x, y, cells in runs:
            if not (1 <= y <= size.rows and 1 <= x and x + len(cells) - 1 <= size.cols):
                raise OutOfBounds(f"run of {len(cells)} cells at ({x},{y}) exceeds {size.cols}x{size.rows}")
        return runs

    def _check_pos(self, pos: tuple[int, int] | None) -> None:
        if pos is None:
            return
        size = self.size()
        x, y = pos
        if not (1 <= x <= size.cols and 1 <= y <= size.rows):
            raise OutOfBounds(f"cursor {pos} outside {size.cols}x{size.rows}")


@dataclass(frozen=True)
class Snapshot:
    """Immutable copy of a headless grid plus cursor state."""

    cells: tuple[tuple[Cell, ...], ...]
    cursor: tuple[int, int] | None

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def cell(self, x: int, y: int) -> Cell:
        return self.cells[y - 1][x - 1]

    def line(self, y: int) -> str:
        return "".join(c.glyph for c in self.cells[y - 1])

    def text(self) -> list[str]:
        return ["".join(c.glyph for c in row) for row in self.cells]

    def color_map(self) -> list[str]:
        return ["".join(f"{c.fg:X}{c.bg:X}" for c in row) for row in self.cells]

    def find(self, needle: str) -> tuple[int, int] | None:
        """1-based (x, y) of the first occurrence of ``needle``."""
        for y, line in enumerate(self.text(), start=1):
            i = line.find(needle)
            if i >= 0:
                return i + 1, y
        return None

    def __contains__(self, needle: str) -> bool:
        return self.find(needle) is not None


class HeadlessSession(Session):
    """In-memory terminal with a scripted input queue and a virtual clock.

    The clock only advances on :class:`Wait` items, so click timing in
    replayed scripts is fully deterministic.
    """

    def __init__(self, size: TerminalSize | None = None, *, raise_when_exhausted: bool = False) -> None:
        self._size = size or TerminalSize(24, 80)
        self.grid: list[list[Cell]] = [[BLANK] * self._size.cols for _ in range(self._size.rows)]
        self.cursor: tuple[int, int] | None = None
        self.clock_ms = 0
        self.raise_when_exhausted = raise_when_exhausted
        self.on_snap: Callable[[str, Snapshot], None] | None = None
        self.present_calls = 0
        self._queue: deque[ScriptItem] = deque()
        self._decoder = InputDecoder(self.size)

    def size(self) -> TerminalSize:
        return self._size

    def now_ms(self) -> int:
        return self.clock_ms

    def resize(self, size: TerminalSize) -> None:
        """Simulate the user resizing the terminal window."""
        grid = [[BLANK] * size.cols for _ in range(size.rows)]
        for y in range(min(size.rows, self._size.rows)):
            for x in range(min(size.cols, self._size.cols)):
                grid[y][x] = self.grid[y][x]
        self.grid = grid
        self._size = size
        if self.cursor and not (self.cursor[0] <= size.cols and self.cursor[1] <= size.rows):
            self.cursor = None

    def feed(self, items: Iterable[ScriptItem]) -> None:
        self._queue.extend(items)

    def feed_bytes(self, data: bytes) -> None:
        self._queue.extend(self._decoder.feed(data))

    @property
    def pending_input(self) -> int:
        return len(self._queue)

    def poll_input(self, timeout_ms: int = 0) -> InputEvent | None:
        self._check_open()
        if not self._queue and self._decoder.pending:
            self._queue.extend(self._decoder.finish())
        while self._queue:
            item = self._queue.popleft()
            if isinstance(item, Wait):
                self.clock_ms += item.ms
            elif isinstance(item, Snap):
                if self.on_snap is not None:
                    self.on_snap(item.name, self.snapshot())
            else:
                return item
        if self.raise_when_exhausted:
            raise InputExhausted("scripted input exhausted")
        return None

    def present(self, writes: Iterable[Run]) -> None:
        self._check_open()
        self.present_calls += 1
        for x, y, cells in self._check_runs(writes):
            row = self.grid[y - 1]
            row[x - 1 : x - 1 + len(cells)] = list(cells)

    def set_cursor(self, pos: tuple[int, int] | None) -> None:
        self._check_open()
        self._check_pos(pos)
        self.cursor = pos

    def snapshot(self) -> Snapshot:
        return Snapshot(tuple(tuple(row) for row in self.grid), self.cursor)

    def close(self) -> None:
        self.closed = True


CSI = "\x1b["
MOUSE_ON = CSI + "?1000h" + CSI + "?1006h"
MOUSE_OFF = CSI + "?1006l" + CSI + "?1000l"
CURSOR_HIDE = CSI + "?25l"
CURSOR_SHOW = CSI + "?25h"
ALT_SCREEN_ON = CSI + "?1049h"
ALT_SCREEN_OFF = CSI + "?1049l"
CLEAR = CSI + "2J"
RESET = CSI + "0m"


def cup(x: int, y: int) -> str:
    return f"{CSI}{y};{x}H"


def sgr(fg: Color, bg: Color) -> str:
    return f"{CSI}{sgr_fg(fg)};{sgr_bg(bg)}m"


class AnsiSession(Session):
    """A real terminal driven with ANSI/xterm control sequences."""

    ESC_TIMEOUT_MS = 25

    def __init__(self, infile=None, outfile=None) -> None:
        infile = infile if infile is not None else sys.stdin
        outfile = outfile if outfile is not None else sys.stdout
        self._in_fd = infile.fileno()
        self._out = getattr(outfile, "buffer", outfile)
        self._out_fd = outfile.fileno()
        self._saved_attrs = None
        self._cursor: tuple[int, int] | None = None
        self._cursor_shown = False
        self._queue: deque[InputEvent] = deque()
        self._last_size = self._query_size()
        self._decoder = InputDecoder(lambda: self._last_size)
        self._t0 = time.monotonic()
        self._enter_raw()
        self._write(ALT_SCREEN_ON + CURSOR_HIDE + MOUSE_ON + sgr(BLANK.fg, BLANK.bg) + CLEAR)

    def _enter_raw(self) -> None:
        if not os.isatty(self._in_fd):
            return
        import termios

        self._saved_attrs = termios.tcgetattr(self._in_fd)
        attrs = termios.tcgetattr(self._in_fd)
        # iflag, oflag, cflag, lflag: like cfmakeraw but keeping ISIG for Ctrl-C.
        attrs[0] &= ~(termios.IGNBRK | termios.BRKINT | termios.PARMRK | termios.ISTRIP
                      | termios.INLCR | termios.IGNCR | termios.ICRNL | termios.IXON)
        attrs[3] &= ~(termios.ECHO | termios.ECHONL | termios.ICANON | termios.IEXTEN)
        attrs[2] |= termios.CS8
        attrs[6][termios.VMIN] = 0
        attrs[6][termios.VTIME] = 0
        termios.tcsetattr(self._in_fd, termios.TCSAFLUSH, attrs)

    def _query_size(self) -> TerminalSize:
        try:
            sz = os.get_terminal_size(self._out_fd)
            return TerminalSize(max(1, sz.lines), max(1, sz.columns))
        except OSError:
            return TerminalSize(24, 80)

    def _write(self, data: str) -> None:
        self._out.write(data.encode("utf-8"))
        self._out.flush()

    def size(self) -> TerminalSize:
        self._last_size = self._query_size()
        return self._last_size

    def now_ms(self) -> int:
        return int((time.monotonic() - self._t0) * 1000)

    def _read_available(self, timeout_ms: int) -> bytes:
        ready, _, _ = select.select([self._in_fd], [], [], timeout_ms / 1000)
        if not ready:
            return b""
        try:
            return os.read(self._in_fd, 4096)
        except (BlockingIOError, InterruptedError):
            return b""

    def poll_input(self, timeout_ms: int) -> InputEvent | None:
        self._check_open()
        deadline = time.monotonic() + timeout_ms / 1000
        while not self._queue:
            remaining = max(0, int((deadline - time.monotonic()) * 1000))
            data = self._read_available(remaining)
            if data:
                self._queue.extend(self._decoder.feed(data))
                continue
            if self._decoder.pending:
                more = self._read_available(self.ESC_TIMEOUT_MS)
                self._queue.extend(self._decoder.feed(more) if more else self._decoder.finish())
                continue
            if time.monotonic() >= deadline:
                break
        return self._queue.popleft() if self._queue else None

    def present(self, writes: Iterable[Run]) -> None:
        self._check_open()
        runs = self._check_runs(writes)
        if not runs:
            return
        self._write(encode_runs(runs))

    def set_cursor(self, pos: tuple[int, int] | None) -> None:
        self._check_open()
        self._check_pos(pos)
        if pos == self._cursor and self._cursor_shown == (pos is not None):
            return
        if pos is None:
            self._write(CURSOR_HIDE)
        else:
            self._write(cup(*pos) + CURSOR_SHOW)
        self._cursor = pos
        self._cursor_shown = pos is not None

    def close(self) -> None:
        if self.closed:
            return
        self.closed = True
        try:
            self._write(CURSOR_SHOW + RESET + CLEAR + ALT_SCREEN_OFF + MOUSE_OFF + RESET)
        finally:
            if self._saved_attrs is not None:
                import termios

                termios.tcsetattr(self._in_fd, termios.TCSAFLUSH, self._saved_attrs)


def encode_runs(runs: Sequence[Run]) -> str:
    """One batched ANSI string for a list of runs, eliding repeated SGRs."""
    out: list[str] = []
    colors: tuple[Color, Color] | None = None
    for x, y, cells in runs:
        out.append(cup(x, y))
        for cell in cells:
            if (cell.fg, cell.bg) != colors:
                colors = (cell.fg, cell.bg)
                out.append(sgr(*colors))
            out.append(cell.glyph)
    return "".join(out)


def open_session(
    mode: Mode | str = Mode.HEADLESS,
    headless_size: TerminalSize | None = None,
    *,
    stdin=None,
    stdout=None,
    raise_when_exhausted: bool = False,
) -> Session:
    global _current
    mode = Mode(mode.upper()) if isinstance(mode, str) else mode
    if _current is not None and not _current.closed:
        raise SessionAlreadyOpen("another session is already open in this process")
    if mode is Mode.REAL:
        out = stdout if stdout is not None else sys.stdout
        if not out.isatty():
            raise NotATerminal("output is not a terminal")
        session: Session = AnsiSession(stdin, out)
    else:
        session = HeadlessSession(headless_size, raise_when_exhausted=raise_when_exhausted)
    _current = session
    return session


def close_session(session: Session) -> None:
    global _current
    session.close()
    if _current is session:
        _current = None
