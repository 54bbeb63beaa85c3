"""Reference models written independently of the library code.

Each oracle restates a contract directly from its defining formula, with
no shared helpers, so agreement with the library is evidence rather than
tautology.
"""

from __future__ import annotations

import math


def oracle_ease(name, u):
    """Closed forms of the built-in curves, written with pow."""
    if name == "linear":
        return u
    if name == "ease-in-cubic":
        return u ** 3
    if name == "ease-out-cubic":
        return 1 - (1 - u) ** 3
    if name == "ease-in-out-cubic":
        return 4 * u ** 3 if u < 0.5 else 1 - ((-2 * u + 2) ** 3) / 2
    raise KeyError(name)


class SegmentModel:
    """Piecewise model of one numeric attribute under animate_to/set calls.

    A segment is ``(t_call, v_start, v_target, delay, duration, easing)``.
    The start of each segment is the model's own value at the call time,
    which is the interruption rule written out by hand.
    """

    def __init__(self, value):
        self.base = value
        self.segments = []  # active segment is the last one, if any

    def value(self, t):
        if not self.segments:
            return self.base
        t_call, v0, v1, delay, duration, easing = self.segments[-1]
        begin = t_call + delay
        if t < begin:
            return v0
        if t >= begin + duration:
            return v1
        u = (t - begin) / duration
        return v0 + (v1 - v0) * oracle_ease(easing, u)

    def settle(self, t):
        if self.segments:
            t_call, v0, v1, delay, duration, _ = self.segments[-1]
            if t >= t_call + delay + duration:
                self.base = v1
                self.segments = []

    def animate_to(self, t, target, delay, duration, easing):
        self.settle(t)
        start = self.value(t)
        self.segments = [(t, start, target, delay, duration, easing)]

    def set(self, t, value):
        self.segments = []
        self.base = value


def brute_force_near(entries, point, radius):
    """Filter-and-sort over ``[(id, x, y)]`` in insertion order.

    Distance uses hypot: squaring tiny offsets underflows to zero.
    """
    px, py = point
    found = []
    for order, (mid, x, y) in enumerate(entries):
        d = math.hypot(x - px, y - py)
        if d <= radius:
            found.append((d, order, mid))
    found.sort(key=lambda e: (e[0], e[1]))
    return [mid for _, _, mid in found]


LEGAL = {
    ("offstage", "entering"),
    ("entering", "onstage"),
    ("entering", "exiting"),
    ("onstage", "exiting"),
    ("exiting", "entering"),
    ("exiting", "offstage"),
}


class StageModel:
    """Hand-written four-state machine for one mark.

    ``pending`` is the kind of choreography in flight ("enter"/"exit") and
    the time it completes; completion only counts if it was not superseded.
    """

    def __init__(self, state="offstage"):
        self.state = state
        self.pending = None

    def show(self, t, duration):
        if self.state in ("offstage", "exiting"):
            self.state = "entering"
            self.pending = ("enter", t + duration)

    def hide(self, t, duration):
        if self.state in ("onstage", "entering"):
            self.state = "exiting"
            self.pending = ("exit", t + duration)

    def advance(self, t):
        if self.pending is not None and t >= self.pending[1]:
            kind, _ = self.pending
            self.pending = None
            self.state = "onstage" if kind == "enter" else "offstage"
