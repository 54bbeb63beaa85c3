"""Marks: identified collections of attributes."""

from __future__ import annotations

import math
from collections.abc import Mapping as AbcMapping
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional, Union

from .attribute import (
    _PLAIN_TYPES,
    AnimationSpec,
    Attribute,
    CompletionSignal,
    Phase,
    Preload,
    plain_attribute,
)
from .errors import DuplicateError, TimeRegressionError, UnknownAttributeError

ChangeListener = Callable[["Mark", str], Any]


class Subscription:
    """Handle returned by ``on_change``; call :meth:`remove` to unsubscribe."""

    __slots__ = ("_listeners", "_fn")

    def __init__(self, listeners: list, fn: Callable) -> None:
        self._listeners = listeners
        self._fn = fn

    def remove(self) -> None:
        try:
            self._listeners.remove(self._fn)
        except ValueError:
            pass

    @property
    def active(self) -> bool:
        return self._fn in self._listeners


class Mark:
    """The unit of visual state.

    A mark owns named :class:`~markstate.attribute.Attribute` objects in
    insertion order, plus an opaque ``represented`` handle pointing at the
    datum it draws. The library never inspects ``represented``.

    Parameters
    ----------
    id
        Immutable identifier, unique within a render group.
    attributes
        Mapping or iterable of ``(name, value)`` pairs. Values may be plain,
        :class:`~markstate.attribute.Computed`, bare callables, or
        :class:`~markstate.attribute.Attribute` instances.
    represented
        Any object; carried along untouched.
    preloadable
        Attribute names to flag as preloadable.

    Examples
    --------
    Computed attributes can refer back to the mark, since they are only
    evaluated on read:

    >>> mark = Mark("mark-id", {"x": 250, "y": 400,
    ...                         "label": lambda: f"x={mark.attr('x')}"})
    >>> mark.attr("label")
    'x=250'
    """

    __slots__ = (
        "_id", "represented", "_attrs", "_live", "_time", "_prune", "_listeners", "_group",
        "_fast_until", "_fresh",
    )

    def __init__(
        self,
        id: Any,
        attributes: Union[Mapping[str, Any], Iterable[tuple[str, Any]], None] = None,
        *,
        represented: Any = None,
        preloadable: Iterable[str] = (),
    ) -> None:
        self._id = id
        self.represented = represented
        self._attrs: dict[str, Attribute] = {}
        self._time = 0.0
        self._prune = False
        self._listeners: list[ChangeListener] = []
        self._group = None
        # below this time every live attribute is mid-animation toward a
        # static target, so advancing changes nothing but the clock
        self._fast_until = -math.inf
        if isinstance(attributes, dict) or isinstance(attributes, AbcMapping):
            items = attributes.items()
        else:
            items = attributes or ()
        table = self._attrs
        plain = _PLAIN_TYPES
        # only plain static values so far: the first advance just clears them
        self._fresh = True
        for name, value in items:
            if value.__class__ in plain and name not in table:
                table[name] = plain_attribute(value, name, self)
            else:
                self._fresh = False
                self._adopt(name, value)
        for name in preloadable:
            self.attribute(name).preloadable = True
        # every attribute starts dirty, so the first advance observes it
        self._live: list[Attribute] = list(self._attrs.values())

    def _adopt(self, name: str, value: Any) -> Attribute:
        if name in self._attrs:
            raise DuplicateError(f"mark {self._id!r} already has attribute {name!r}")
        attr = value if isinstance(value, Attribute) else Attribute(value)
        if attr._owner is not None and attr._owner is not self:
            raise ValueError(f"attribute {name!r} already belongs to another mark")
        attr.name = name
        attr._owner = self
        self._attrs[name] = attr
        return attr

    @property
    def id(self) -> Any:
        return self._id

    @property
    def time(self) -> float:
        return self._now()

    def _now(self) -> float:
        group = self._group
        return self._time if group is None else group._time

    def __repr__(self) -> str:
        return f"<Mark {self._id!r} {list(self._attrs)}>"

    def __contains__(self, name: str) -> bool:
        return name in self._attrs

    def __iter__(self) -> Iterator[str]:
        return iter(self._attrs)

    @property
    def attribute_names(self) -> list[str]:
        return list(self._attrs)

    def attribute(self, name: str) -> Attribute:
        try:
            return self._attrs[name]
        except KeyError:
            raise UnknownAttributeError(f"mark {self._id!r} has no attribute {name!r}") from None

    def add_attribute(self, name: str, value: Any) -> Attribute:
        attr = self._adopt(name, value)
        self._attribute_mutated(attr)
        return attr

    def attr(self, name: str) -> Any:
        """Momentary value of ``name``."""
        try:
            a = self._attrs[name]
        except KeyError:
            raise UnknownAttributeError(f"mark {self._id!r} has no attribute {name!r}") from None
        anim = a._anim
        if anim is None:
            if a._compute is None:
                return a._value
        else:
            table = anim.table
            if table is not None and table.time == self._now():
                return table.values[anim.slot]
        return a.get()

    def attrs(self, *names: str) -> tuple:
        """Momentary values of several attributes in one call."""
        attrs = self._attrs
        group = self._group
        now = self._time if group is None else group._time
        out = []
        for name in names:
            a = attrs.get(name)
            if a is None:
                raise UnknownAttributeError(f"mark {self._id!r} has no attribute {name!r}")
            anim = a._anim
            if anim is None:
                if a._compute is None:
                    out.append(a._value)
                    continue
            else:
                table = anim.table
                if table is not None and table.time == now:
                    out.append(table.values[anim.slot])
                    continue
            out.append(a.get())
        return tuple(out)

    def specified(self, name: str) -> Any:
        """Value ``name`` will settle at once animations finish."""
        return self.attribute(name).get_specified()

    def values(self) -> dict[str, Any]:
        return {name: a.get() for name, a in self._attrs.items()}

    def set_attr(self, name: str, value: Any) -> "Mark":
        self.attribute(name).set(value)
        return self

    def animate_to(
        self, name: str, target: Any, spec: Optional[AnimationSpec] = None, **spec_kwargs: Any
    ) -> CompletionSignal:
        return self.attribute(name).animate_to(target, spec, **spec_kwargs)

    def animate(
        self, name: str, target: Any, spec: Optional[AnimationSpec] = None, **spec_kwargs: Any
    ) -> CompletionSignal:
        return self.attribute(name).animate(target, spec, **spec_kwargs)

    def preload(self, name: str) -> Preload:
        return self.attribute(name).preload()

    @property
    def animating(self) -> bool:
        """True while any attribute has a pending or running animation."""
        for a in self._live:
            if a._anim is not None:
                return True
        return False

    def on_change(self, listener: ChangeListener) -> Subscription:
        """Call ``listener(mark, attribute_name)`` on every set or animation start.

        Frames of a running animation do not notify; ``advance`` reports those.
        """
        self._listeners.append(listener)
        return Subscription(self._listeners, listener)

    def _attribute_mutated(self, attr: Attribute) -> None:
        self._fast_until = -math.inf
        self._fresh = False
        live = self._live
        if attr not in live:
            self._live = [a for a in self._attrs.values() if a is attr or a in live]
        group = self._group
        if group is not None:
            group._mark_changed(self)
        if self._listeners:
            for fn in tuple(self._listeners):
                fn(self, attr.name)

    def _register_animation(self, anim) -> None:
        group = self._group
        if group is not None:
            group._register_animation(anim)

    def advance(self, to_time: float) -> bool:
        """Advance every attribute that can change; True if any did.

        Idle static attributes have no time-dependent state, so they are
        skipped without changing the result.
        """
        if to_time < self._time:
            raise TimeRegressionError(f"mark {self._id!r} time {self._time} > requested {to_time}")
        prev = self._time
        self._time = to_time
        if to_time < self._fast_until:
            return to_time != prev
        if self._fresh:
            self._fresh = False
            if not self._prune:
                # what the loop below would do for untouched plain attributes
                live = self._live
                for a in live:
                    a._time = to_time
                    a._dirty = False
                self._live = []
                return bool(live)
        live = self._live
        if not live:
            return False
        changed = False
        for a in live:
            if a.advance(to_time):
                changed = True
        if self._prune:
            self._prune = False
            self._live = [
                a for a in self._live if a._anim is not None or a._compute is not None or a._dirty
            ]
        self._fast_until = self._quiet_until()
        return changed

    def _quiet_until(self) -> float:
        live = self._live
        if not live:
            return -math.inf
        until = math.inf
        for a in live:
            anim = a._anim
            if anim is None or a._dirty or anim.target_fn is not None or anim.phase is not Phase.RUNNING:
                return -math.inf
            if anim.end < until:
                until = anim.end
        return until

    def _catch_up(self, t: float) -> None:
        if t > self._time:
            self._time = t
