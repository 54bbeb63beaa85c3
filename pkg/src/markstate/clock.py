from __future__ import annotations

import time

from .errors import TimeRegressionError


class FrameClock:
    """Injectable monotonic time source, in milliseconds.

    Core objects never read the wall clock; a frame loop owns a clock,
    ticks it once per frame and hands ``clock.now()`` to ``advance``.
    """

    __slots__ = ("_time",)

    def __init__(self, start: float = 0.0) -> None:
        if start < 0:
            raise ValueError(f"start time must be non-negative, got {start}")
        self._time = float(start)

    def tick(self, dt: float) -> float:
        if not dt >= 0:
            raise TimeRegressionError(f"tick needs dt >= 0, got {dt}")
        self._time += dt
        return self._time

    def now(self) -> float:
        return self._time

    @property
    def current_time(self) -> float:
        return self._time

    def __repr__(self) -> str:
        return f"FrameClock({self._time!r})"


class WallClock:
    """Real-time source for interactive loops and benchmarks.

    ``now()`` is milliseconds elapsed since construction, read from
    :func:`time.perf_counter`.
    """

    def __init__(self) -> None:
        self._origin = time.perf_counter()

    def now(self) -> float:
        return (time.perf_counter() - self._origin) * 1000.0
