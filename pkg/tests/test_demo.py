from __future__ import annotations

import argparse
import subprocess
import sys

import pytest

from support import full_redraw, start
from tuikit.backend import HeadlessSession, Key, KeyEvent, Mode, TerminalSize, Wait
from tuikit.cli import EXIT_BACKEND, EXIT_OK, EXIT_SCRIPT, main, parse_size
from tuikit.demo import App, DemoEntry, DemoRegistry, MainMenu, RunConfig, UnknownDemo, build_demo, default_registry
from tuikit.demo.app import PROMPT, TITLE_TEXT, build_main_menu
from tuikit.events import ExitReason, HandlerRegistry
from tuikit.render import FrameBuffer


def _menu():
    scr = build_main_menu(HandlerRegistry(), default_registry(), TerminalSize(24, 80))
    menu = next(w for w in scr.widgets if isinstance(w, MainMenu))
    return scr, menu, start(scr)


def test_main_menu_layout():
    scr, menu, h = _menu()
    text = h.text()
    assert any(TITLE_TEXT in row for row in text)
    rows = menu.option_rows()
    for label, y in zip(default_registry().labels(), rows):
        assert label in text[y - 1]
    assert rows[-1] == rows[-2] + 2 and text[rows[-2]].strip("| ") == ""
    px, py = menu.prompt_pos
    assert text[py - 1].strip().startswith(PROMPT)
    assert h.session.cursor == (px + len(PROMPT) + 1, py)


@pytest.mark.parametrize("n", range(1, 10))
def test_main_menu_digit_and_click_choose(n):
    scr, menu, h = _menu()
    h.type(str(n))
    assert scr.result == n and scr.exit_reason is ExitReason.REQUESTED
    scr2, menu2, h2 = _menu()
    h2.click(menu2.abs_rect.x + 5, menu2.option_rows()[n - 1])
    assert scr2.result == n


def test_main_menu_arrows_wrap_and_escape_ignored():
    scr, menu, h = _menu()
    h.key(Key.ESC)
    assert scr.exit_reason is None
    h.key(Key.UP)
    assert menu.highlight == 8
    h.key(Key.DOWN)
    h.key(Key.DOWN)
    h.key(Key.ENTER)
    assert scr.result == 2
    assert h.grid() == full_redraw(scr)


def test_demo_registry_validation():
    reg = default_registry()
    assert reg.labels()[-1] == "9. Exit" and len(reg.labels()) == 9
    with pytest.raises(ValueError):
        DemoRegistry([DemoEntry(2, "x", reg.get(1).setup)])
    with pytest.raises(UnknownDemo):
        build_demo(9)


def test_run_config_invariants(tmp_path):
    with pytest.raises(ValueError):
        RunConfig(demo=10)
    with pytest.raises(ValueError):
        RunConfig(demo=0)
    with pytest.raises(ValueError):
        RunConfig(backend=Mode.REAL, script=tmp_path / "s")
    assert RunConfig(demo=9).demo == 9


def test_app_visits_demos_then_exits():
    session = HeadlessSession(TerminalSize(24, 80))
    session.feed([KeyEvent.of("5"), Wait(10), KeyEvent(Key.ESC), KeyEvent.of("2"), KeyEvent(Key.ESC), KeyEvent.of("9")])
    app = App(session, FrameBuffer(TerminalSize(24, 80)))
    assert app.run() == 0
    assert app.history == [5, 2]
    assert app.registry.size() == 0
    assert not session.pending_input


# -- CLI -------------------------------------------------------------------


def test_parse_size():
    assert parse_size("100x30") == TerminalSize(30, 100)
    with pytest.raises(argparse.ArgumentTypeError):
        parse_size("big")


def test_cli_replay_writes_snapshots_deterministically(tmp_path):
    script = tmp_path / "s.txt"
    script.write_text("CHAR 6\nKEY F11\nSNAP tabs\nKEY ESC\nCHAR 9\n")
    outs = []
    for i in range(2):
        out = tmp_path / f"o{i}"
        assert main(["--backend", "headless", "--script", str(script), "--snapshot-dir", str(out)]) == EXIT_OK
        outs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outs[0] == outs[1]
    assert set(outs[0]) == {"tabs.txt", "tabs.colors", "final.txt", "final.colors"}
    lines = outs[0]["tabs.txt"].decode().splitlines()
    assert len(lines) == 24 and all(len(l) == 80 for l in lines)
    assert TITLE_TEXT.encode() in outs[0]["final.txt"]


def test_cli_size_and_unicode_glyphs(tmp_path):
    script = tmp_path / "s.txt"
    script.write_text("SNAP m\n")
    out = tmp_path / "o"
    assert main(["--backend", "headless", "--size", "100x30", "--glyphs", "unicode", "--script", str(script),
                 "--snapshot-dir", str(out)]) == EXIT_OK
    lines = (out / "m.txt").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 30 and len(lines[0]) == 100
    assert any("┌" in l for l in lines)


def test_cli_demo_flag_runs_one_demo(tmp_path):
    script = tmp_path / "s.txt"
    script.write_text("SNAP d\nKEY ESC\n")
    out = tmp_path / "o"
    assert main(["--backend", "headless", "--demo", "5", "--script", str(script), "--snapshot-dir", str(out)]) == 0
    assert "Tree View Demo" in (out / "d.txt").read_text()


def test_cli_script_errors_exit_2(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("KEY F1\nKEY NOPE\n")
    assert main(["--backend", "headless", "--script", str(script)]) == EXIT_SCRIPT
    assert "line 2" in capsys.readouterr().err


def test_cli_backend_errors_exit_3(tmp_path):
    assert main(["--backend", "ansi", "--script", str(tmp_path / "x")]) == EXIT_BACKEND


def test_module_entry_point_without_tty():
    proc = subprocess.run(
        [sys.executable, "-m", "tuikit", "--backend", "ansi"],
        stdin=subprocess.DEVNULL, capture_output=True, timeout=60,
    )
    assert proc.returncode == EXIT_BACKEND
    assert b"tuikit:" in proc.stderr
