"""Reactive user-preference settings for draw loops and animation policy."""

from __future__ import annotations

from typing import Any, Callable, Mapping, Optional

from .attribute import AnimationSpec
from .errors import UnknownAttributeError
from .mark import Mark, Subscription

DEFAULT_SETTINGS: dict[str, Any] = {
    "prefers_reduced_motion": False,
    "prefers_increased_contrast": False,
}


class RenderContext:
    """Reactive environment and user-preference settings.

    Settings behave like attributes: read them in the draw loop, and the
    context's :meth:`advance` reports True after any change so the loop
    redraws. The embedding layer feeds platform preferences in through
    :meth:`set_setting`; nothing here queries the OS.

    Every :meth:`set_setting` call notifies listeners once, even when the
    value is unchanged, so embedders can force re-evaluation.
    """

    def __init__(self, settings: Optional[Mapping[str, Any]] = None) -> None:
        values = dict(DEFAULT_SETTINGS)
        if settings:
            values.update(settings)
        self._settings = Mark("render-context", values)

    def __contains__(self, name: str) -> bool:
        return name in self._settings

    def __getitem__(self, name: str) -> Any:
        return self.get_setting(name)

    @property
    def names(self) -> list[str]:
        return self._settings.attribute_names

    def get_setting(self, name: str) -> Any:
        try:
            return self._settings.attr(name)
        except UnknownAttributeError:
            raise UnknownAttributeError(f"unknown setting {name!r}") from None

    def set_setting(self, name: str, value: Any) -> None:
        if name not in self._settings:
            raise UnknownAttributeError(f"unknown setting {name!r}")
        self._settings.set_attr(name, value)

    def add_setting(self, name: str, default: Any) -> None:
        self._settings.add_attribute(name, default)

    def attribute(self, name: str):
        """The underlying attribute, for use in computed values."""
        return self._settings.attribute(name)

    def on_change(self, listener: Callable[[str, Any], Any]) -> Subscription:
        """Call ``listener(name, value)`` after every :meth:`set_setting`."""
        return self._settings.on_change(lambda mark, name: listener(name, mark.attr(name)))

    def advance(self, to_time: float) -> bool:
        return self._settings.advance(to_time)

    @property
    def prefers_reduced_motion(self) -> bool:
        return bool(self.get_setting("prefers_reduced_motion"))

    def effective_spec(self, spec: AnimationSpec, motion: bool = True) -> AnimationSpec:
        """Drop positional motion to an instant change under reduced motion.

        Only the duration changes; easing, delay and interpolator are kept.
        Specs for non-motion animations (``motion=False``, e.g. fades) pass
        through untouched.
        """
        if motion and self.prefers_reduced_motion:
            return spec.replace(duration=0.0)
        return spec
