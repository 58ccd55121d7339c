"""Integer cell rectangles in 1-based terminal coordinates.

A ``Rect`` is a closed set of cells: ``x..x+w-1`` by ``y..y+h-1``.  Any rect
with ``w == 0`` or ``h == 0`` is empty and contains nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class GeometryError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Rect:
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self) -> None:
        if self.w < 0 or self.h < 0:
            raise GeometryError(f"negative size in {self!r}")

    @property
    def right(self) -> int:
        return self.x + self.w - 1

    @property
    def bottom(self) -> int:
        return self.y + self.h - 1

    @property
    def area(self) -> int:
        return self.w * self.h

    def is_empty(self) -> bool:
        return self.w == 0 or self.h == 0

    def contains(self, px: int, py: int) -> bool:
        return self.x <= px <= self.x + self.w - 1 and self.y <= py <= self.y + self.h - 1

    def intersect(self, other: Rect) -> Rect:
        if self.is_empty() or other.is_empty():
            return EMPTY
        left = max(self.x, other.x)
        top = max(self.y, other.y)
        right = min(self.right, other.right)
        bottom = min(self.bottom, other.bottom)
        if right < left or bottom < top:
            return EMPTY
        return Rect(left, top, right - left + 1, bottom - top + 1)

    def intersects(self, other: Rect) -> bool:
        return not self.intersect(other).is_empty()

    def union_bounds(self, other: Rect) -> Rect:
        """Smallest rect covering both; an empty operand is ignored."""
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        left = min(self.x, other.x)
        top = min(self.y, other.y)
        right = max(self.right, other.right)
        bottom = max(self.bottom, other.bottom)
        return Rect(left, top, right - left + 1, bottom - top + 1)

    def clip(self, bounds: Rect) -> Rect:
        return self.intersect(bounds)

    def translate(self, dx: int, dy: int) -> Rect:
        return Rect(self.x + dx, self.y + dy, self.w, self.h)

    def moved_to(self, x: int, y: int) -> Rect:
        return Rect(x, y, self.w, self.h)

    def resized(self, w: int, h: int) -> Rect:
        return Rect(self.x, self.y, w, h)

    def inset(self, left: int, top: int, right: int, bottom: int) -> Rect:
        w = max(0, self.w - left - right)
        h = max(0, self.h - top - bottom)
        return Rect(self.x + left, self.y + top, w, h)

    def cells(self) -> Iterator[tuple[int, int]]:
        for py in range(self.y, self.y + self.h):
            for px in range(self.x, self.x + self.w):
                yield px, py


EMPTY = Rect(0, 0, 0, 0)


def intersect(a: Rect, b: Rect) -> Rect:
    return a.intersect(b)


def union_bounds(a: Rect, b: Rect) -> Rect:
    return a.union_bounds(b)


def clip(inner: Rect, bounds: Rect) -> Rect:
    return inner.intersect(bounds)
