"""Animatable pan/zoom transform.

Per axis, a data coordinate maps to the screen as::

    screen = translate + scale * (value - domain_min) / (domain_max - domain_min) * extent

so ``translate = 0, scale = 1`` stretches the domain over the screen range.
The four transform parameters are ordinary attributes: they animate,
interrupt from their momentary values, and can be computed, which is how
:meth:`ViewportTransform.follow` works.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Iterable, Optional, Sequence

from .attribute import AnimationSpec, CompletionSignal, Computed, resolve_spec
from .mark import Mark

Point = tuple[float, float]
PositionAccessor = Callable[[Mark], Point]

_PARAMS = ("translate_x", "translate_y", "scale_x", "scale_y")


def specified_position(mark: Mark) -> Point:
    return mark.specified("x"), mark.specified("y")


def momentary_position(mark: Mark) -> Point:
    return mark.attr("x"), mark.attr("y")


class ViewportTransform:
    """Axis-aligned zoom transform backed by four attributes.

    Parameters
    ----------
    domain
        ``(x_min, x_max, y_min, y_max)`` in data units; each axis must have
        ``max > min``.
    screen_range
        ``(width, height)`` in pixels.
    max_scale
        Zoom cap used when a fit is degenerate (a single point, or points on
        one line), as a multiple of the identity scale.
    """

    def __init__(
        self,
        domain: Sequence[float] = (0.0, 1.0, 0.0, 1.0),
        screen_range: Sequence[float] = (1.0, 1.0),
        *,
        max_scale: float = 10.0,
    ) -> None:
        x_min, x_max, y_min, y_max = (float(v) for v in domain)
        if not (x_max > x_min and y_max > y_min):
            raise ValueError(f"degenerate domain {tuple(domain)!r}")
        width, height = (float(v) for v in screen_range)
        if not (width > 0 and height > 0):
            raise ValueError(f"screen range must be positive, got {tuple(screen_range)!r}")
        if not max_scale > 0:
            raise ValueError("max_scale must be positive")
        self.domain = (x_min, x_max, y_min, y_max)
        self.screen_range = (width, height)
        self.max_scale = float(max_scale)
        self._kx = width / (x_max - x_min)
        self._ky = height / (y_max - y_min)
        self._params = Mark("viewport", {"translate_x": 0.0, "translate_y": 0.0,
                                         "scale_x": 1.0, "scale_y": 1.0})
        self._following = False
        self._installing = False
        self._params.on_change(self._param_changed)

    # -- state ----------------------------------------------------------

    @property
    def attributes(self) -> Mark:
        """The mark holding ``translate_x``, ``translate_y``, ``scale_x``, ``scale_y``."""
        return self._params

    @property
    def following(self) -> bool:
        return self._following

    def transform(self) -> tuple[float, float, float, float]:
        """Momentary ``(translate_x, translate_y, scale_x, scale_y)``."""
        p = self._params
        return p.attr("translate_x"), p.attr("translate_y"), p.attr("scale_x"), p.attr("scale_y")

    def specified_transform(self) -> tuple[float, float, float, float]:
        p = self._params
        return tuple(p.specified(n) for n in _PARAMS)

    def advance(self, to_time: float) -> bool:
        return self._params.advance(to_time)

    @property
    def animating(self) -> bool:
        return self._params.animating

    # -- mapping --------------------------------------------------------

    def normalize(self, point: Point) -> Point:
        """Data point in identity-transform screen coordinates."""
        x_min, _, y_min, _ = self.domain
        return (point[0] - x_min) * self._kx, (point[1] - y_min) * self._ky

    def map_point(self, point: Point) -> Point:
        tx, ty, sx, sy = self.transform()
        nx, ny = self.normalize(point)
        return tx + sx * nx, ty + sy * ny

    def invert_point(self, screen: Point) -> Point:
        tx, ty, sx, sy = self.transform()
        if sx == 0 or sy == 0:
            raise ZeroDivisionError("transform scale is zero")
        x_min, _, y_min, _ = self.domain
        return (
            (screen[0] - tx) / sx / self._kx + x_min,
            (screen[1] - ty) / sy / self._ky + y_min,
        )

    # -- imperative changes ---------------------------------------------

    def _param_changed(self, mark: Mark, name: str) -> None:
        if self._following and not self._installing:
            self._stop_following()

    def _stop_following(self) -> None:
        # freeze the remaining computed parameters where they are now
        self._following = False
        self._installing = True
        try:
            p = self._params
            for name in _PARAMS:
                attr = p.attribute(name)
                if attr.computed and not attr.animating:
                    attr.set(attr.get())
        finally:
            self._installing = False

    def set_transform(self, translate_x: float, translate_y: float, scale_x: float, scale_y: float) -> None:
        _check_scales(scale_x, scale_y)
        self._stop_following()
        p = self._params
        p.set_attr("translate_x", translate_x)
        p.set_attr("translate_y", translate_y)
        p.set_attr("scale_x", scale_x)
        p.set_attr("scale_y", scale_y)

    def animate_transform(
        self,
        translate_x: float,
        translate_y: float,
        scale_x: float,
        scale_y: float,
        spec: Optional[AnimationSpec] = None,
        **spec_kwargs: Any,
    ) -> CompletionSignal:
        _check_scales(scale_x, scale_y)
        spec = resolve_spec(spec, spec_kwargs)
        self._stop_following()
        p = self._params
        return CompletionSignal.all(
            [
                p.animate_to("translate_x", translate_x, spec),
                p.animate_to("translate_y", translate_y, spec),
                p.animate_to("scale_x", scale_x, spec),
                p.animate_to("scale_y", scale_y, spec),
            ]
        )

    def apply_user_pan(self, dx: float, dy: float) -> None:
        """Shift the specified translation by a screen-space delta."""
        tx, ty, sx, sy = self.specified_transform()
        self._stop_following()
        p = self._params
        p.set_attr("translate_x", tx + dx)
        p.set_attr("translate_y", ty + dy)
        # pinning the scales cancels any zoom still in flight
        p.set_attr("scale_x", sx)
        p.set_attr("scale_y", sy)

    def apply_user_zoom(self, factor: float, anchor: Point) -> None:
        """Multiply the specified scales, keeping ``anchor`` fixed on screen."""
        if not (math.isfinite(factor) and factor > 0):
            raise ValueError(f"zoom factor must be positive, got {factor!r}")
        tx, ty, sx, sy = self.specified_transform()
        ax, ay = anchor
        self.set_transform(
            ax - factor * (ax - tx),
            ay - factor * (ay - ty),
            sx * factor,
            sy * factor,
        )

    # -- programmatic zoom ----------------------------------------------

    def fit(
        self,
        points: Iterable[Point],
        padding: float = 0.0,
        *,
        per_axis: bool = False,
    ) -> tuple[float, float, float, float]:
        """Transform that fits ``points`` into the range shrunk by ``padding``.

        ``padding`` is a fraction of the screen extent kept clear on each
        side. Points are centered; the scale is uniform unless ``per_axis``.
        Degenerate extents fall back to :attr:`max_scale`.
        """
        if not 0 <= padding < 0.5:
            raise ValueError(f"padding must be in [0, 0.5), got {padding!r}")
        xs, ys = [], []
        for p in points:
            nx, ny = self.normalize(p)
            if not (math.isfinite(nx) and math.isfinite(ny)):
                raise ValueError(f"non-finite position {p!r}")
            xs.append(nx)
            ys.append(ny)
        if not xs:
            raise ValueError("cannot fit an empty set of marks")
        width, height = self.screen_range
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        bw, bh = x1 - x0, y1 - y0
        inner_w = width * (1 - 2 * padding)
        inner_h = height * (1 - 2 * padding)
        fx = inner_w / bw if bw > 0 else math.inf
        fy = inner_h / bh if bh > 0 else math.inf
        if per_axis:
            sx = min(fx, self.max_scale)
            sy = min(fy, self.max_scale)
        else:
            sx = sy = min(fx, fy, self.max_scale)
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        return width / 2 - sx * cx, height / 2 - sy * cy, sx, sy

    def zoom_to(
        self,
        marks: Iterable[Mark],
        position: PositionAccessor = specified_position,
        padding: float = 0.0,
        spec: Optional[AnimationSpec] = None,
        *,
        per_axis: bool = False,
        **spec_kwargs: Any,
    ) -> CompletionSignal:
        """Animate to the fit of the marks' specified positions."""
        target = self.fit((position(m) for m in marks), padding, per_axis=per_axis)
        return self.animate_transform(*target, resolve_spec(spec, spec_kwargs))

    def center_on(
        self,
        marks: Iterable[Mark],
        position: PositionAccessor = specified_position,
        spec: Optional[AnimationSpec] = None,
        **spec_kwargs: Any,
    ) -> CompletionSignal:
        """Pan so the marks' bounding-box center sits mid-range; zoom unchanged."""
        _, _, sx, sy = self.specified_transform()
        tx, ty = self._centering((position(m) for m in marks), sx, sy)
        return self.animate_transform(tx, ty, sx, sy, resolve_spec(spec, spec_kwargs))

    def _centering(self, points: Iterable[Point], sx: float, sy: float) -> tuple[float, float]:
        norm = [self.normalize(p) for p in points]
        if not norm:
            raise ValueError("cannot center on an empty set of marks")
        xs = [p[0] for p in norm]
        ys = [p[1] for p in norm]
        cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
        width, height = self.screen_range
        return width / 2 - sx * cx, height / 2 - sy * cy

    def follow(
        self,
        marks: Iterable[Mark],
        position: PositionAccessor = momentary_position,
        padding: float = 0.0,
        *,
        refit: bool = True,
        per_axis: bool = False,
    ) -> None:
        """Track the marks every frame until the next imperative change.

        With ``refit`` the fit is recomputed from momentary positions each
        frame; otherwise the current zoom is kept and only the center moves.
        Any later set, animation, pan or zoom on the transform ends following.
        """
        marks = list(marks)
        if not marks:
            raise ValueError("cannot follow an empty set of marks")
        cache: dict = {"key": None, "value": None}

        def solution() -> tuple[float, float, float, float]:
            pts = [position(m) for m in marks]
            key = tuple(pts)
            if cache["key"] != key:
                if refit:
                    cache["value"] = self.fit(pts, padding, per_axis=per_axis)
                else:
                    cache["value"] = (*self._centering(pts, fixed_sx, fixed_sy), fixed_sx, fixed_sy)
                cache["key"] = key
            return cache["value"]

        _, _, fixed_sx, fixed_sy = self.specified_transform()
        self._stop_following()
        self._installing = True
        try:
            p = self._params
            for i, name in enumerate(_PARAMS):
                p.set_attr(name, Computed(lambda i=i: solution()[i]))
        finally:
            self._installing = False
        self._following = True


def _check_scales(sx: float, sy: float) -> None:
    if not (sx > 0 and sy > 0 and math.isfinite(sx) and math.isfinite(sy)):
        raise ValueError(f"scales must be positive and finite, got {sx!r}, {sy!r}")
