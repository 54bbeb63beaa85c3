"""Spatial hashing for hit-testing marks in draw-loop renderers.

Positions are bucketed into square cells keyed by
``(floor(x / cell_size), floor(y / cell_size))``. Building is linear in the
number of marks; a radius query only looks at the cells overlapping the
query disk's bounding square.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Iterable, Optional, Union

from .mark import Mark

Point = tuple[float, float]
CoordinateAccessor = Callable[[Mark], Point]


def attribute_coordinates(x: str = "x", y: str = "y") -> CoordinateAccessor:
    """Accessor reading the momentary values of two attributes."""

    def accessor(mark: Mark) -> Point:
        return mark.attr(x), mark.attr(y)

    return accessor


class PositionMap:
    """Uniform-grid index over mark positions.

    Parameters
    ----------
    cell_size
        Cell edge length in the accessor's coordinate space. If omitted it
        is taken from ``query_radius``, or else from the diagonal of
        ``viewport`` divided by 64.
    coordinates
        ``(x_name, y_name)`` attribute names, or a callable returning
        ``(x, y)`` for a mark. Pass a screen-space accessor to get
        pixel-radius queries.
    query_radius
        Typical query radius; matching the cell size to it keeps every
        query within nine cells.
    viewport
        ``(width, height)`` used for the fallback cell size.

    Notes
    -----
    Queries see positions frozen at the last :meth:`build`. Rebuild after
    advancing if hit-testing must follow marks mid-animation.
    """

    def __init__(
        self,
        cell_size: Optional[float] = None,
        *,
        coordinates: Union[tuple[str, str], CoordinateAccessor] = ("x", "y"),
        query_radius: Optional[float] = None,
        viewport: Optional[tuple[float, float]] = None,
    ) -> None:
        if cell_size is None:
            if query_radius is not None and query_radius > 0:
                cell_size = query_radius
            elif viewport is not None:
                cell_size = math.hypot(*viewport) / 64.0
            else:
                raise ValueError("need cell_size, query_radius or viewport to size cells")
        if not (math.isfinite(cell_size) and cell_size > 0):
            raise ValueError(f"cell_size must be positive and finite, got {cell_size!r}")
        self.cell_size = float(cell_size)
        if callable(coordinates):
            self._accessor = coordinates
        else:
            self._accessor = attribute_coordinates(*coordinates)
        self._cells: dict[tuple[int, int], list[tuple[int, Any, float, float]]] = {}
        self._count = 0
        self.skipped: list[Any] = []
        self.build_generation = 0
        self.last_cells_inspected = 0

    def __len__(self) -> int:
        return self._count

    def cell_of(self, x: float, y: float) -> tuple[int, int]:
        c = self.cell_size
        return math.floor(x / c), math.floor(y / c)

    def build(self, marks: Iterable[Mark]) -> None:
        """Re-index from scratch.

        ``marks`` may be a render group, in which case its drawable stage
        (every mark, if unstaged) is indexed. Marks whose coordinates are
        not finite are left out and listed in :attr:`skipped`.
        """
        source = getattr(marks, "stage", marks)
        cells: dict[tuple[int, int], list] = {}
        skipped = []
        accessor = self._accessor
        c = self.cell_size
        floor = math.floor
        isfinite = math.isfinite
        index = 0
        for mark in source:
            x, y = accessor(mark)
            if not (isfinite(x) and isfinite(y)):
                skipped.append(mark.id)
                continue
            key = (floor(x / c), floor(y / c))
            entry = (index, mark.id, float(x), float(y))
            bucket = cells.get(key)
            if bucket is None:
                cells[key] = [entry]
            else:
                bucket.append(entry)
            index += 1
        self._cells = cells
        self._count = index
        self.skipped = skipped
        self.build_generation += 1

    def marks_near(self, point: Point, radius: float) -> list[tuple[Any, float]]:
        """All indexed marks within ``radius`` of ``point``.

        Sorted by distance; equal distances keep build order.
        """
        if not radius >= 0:
            raise ValueError(f"radius must be non-negative, got {radius!r}")
        px, py = point
        c = self.cell_size
        i0 = math.floor((px - radius) / c)
        i1 = math.floor((px + radius) / c)
        j0 = math.floor((py - radius) / c)
        j1 = math.floor((py + radius) / c)
        span = (i1 - i0 + 1) * (j1 - j0 + 1)
        cells = self._cells
        hypot = math.hypot
        hits = []
        if span > len(cells):
            # huge radius: walking the occupied cells is cheaper and equivalent
            self.last_cells_inspected = len(cells)
            buckets = [
                b for (i, j), b in cells.items() if i0 <= i <= i1 and j0 <= j <= j1
            ]
        else:
            self.last_cells_inspected = span
            buckets = []
            for i in range(i0, i1 + 1):
                for j in range(j0, j1 + 1):
                    b = cells.get((i, j))
                    if b is not None:
                        buckets.append(b)
        for bucket in buckets:
            for index, mid, x, y in bucket:
                d = hypot(x - px, y - py)
                if d <= radius:
                    hits.append((d, index, mid))
        hits.sort()
        return [(mid, d) for d, _, mid in hits]

    def hit_test(self, point: Point, radius: float) -> Optional[Any]:
        """Id of the nearest mark within ``radius``, or None."""
        near = self.marks_near(point, radius)
        return near[0][0] if near else None

    def entries(self) -> list[tuple[Any, float, float]]:
        """``(id, x, y)`` for every indexed mark, in build order."""
        flat = [e for bucket in self._cells.values() for e in bucket]
        flat.sort()
        return [(mid, x, y) for _, mid, x, y in flat]


def max_cells_for(radius: float, cell_size: float) -> int:
    """Upper bound on cells a query of ``radius`` can inspect."""
    side = math.ceil(2 * radius / cell_size) + 1
    return side * side
