"""Demo gallery: main menu, eight demo screens and scripted replay."""

from __future__ import annotations

from .app import App, DemoEntry, DemoRegistry, MainMenu, RunConfig, default_registry, replay, write_snapshot
from .screens import BUILDERS, UnknownDemo, build_demo, build_form_demo

__all__ = [
    "App", "BUILDERS", "DemoEntry", "DemoRegistry", "MainMenu", "RunConfig", "UnknownDemo",
    "build_demo", "build_form_demo", "default_registry", "replay", "write_snapshot",
]
