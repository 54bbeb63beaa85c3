"""Animatable attributes.

An :class:`Attribute` holds one time-varying property. Its base value is
either static or computed by a nullary callback, and at most one animation
can run on it at a time. Two accessors expose the two views of its state:

* :meth:`Attribute.get` returns the *momentary* value at the attribute's
  current time, mid-animation included;
* :meth:`Attribute.get_specified` returns the value it is heading to.

Time only moves through :meth:`Attribute.advance`, so the momentary value
is a pure function of the absolute timestamp and never of how many frames
were taken to get there.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Any, Callable, Iterable, NamedTuple, Optional, Union

from .easing import (
    EasingCurve,
    Interpolator,
    default_interpolator,
    get_easing,
    get_interpolator,
    interpolate_numeric,
)
from .errors import TimeRegressionError


def plain_attribute(value: Any, name: str, owner: Any) -> Attribute:
    """Attribute holding a plain static value, built without ``__init__``.

    Mark construction makes one of these per attribute, so the call
    dispatch is worth skipping at large mark counts.
    """
    a = _new_attribute(Attribute)
    a.name = name
    a.preloadable = False
    a._anim = None
    a._time = 0.0
    a._dirty = True
    a._owner = owner
    a._compute = None
    a._value = value
    return a


_new_attribute = object.__new__


__all__ = [
    "Animation",
    "AnimationSpec",
    "Attribute",
    "CompletionSignal",
    "Computed",
    "Phase",
    "Preload",
    "SignalStatus",
    "Static",
    "as_value",
    "reconstruct",
]


class SignalStatus(enum.Enum):
    PENDING = "pending"
    FINISHED = "finished"
    INTERRUPTED = "interrupted"


class CompletionSignal:
    """Resolves exactly once, as either finished or interrupted.

    Callbacks registered with :meth:`then` receive the final
    :class:`SignalStatus`. A callback added after resolution runs
    immediately. Signals tied to animations resolve inside ``advance``
    (finished) or inside the call that replaced the animation
    (interrupted); nothing is delivered asynchronously.
    """

    __slots__ = ("_status", "_callbacks")

    def __init__(self) -> None:
        self._status = SignalStatus.PENDING
        self._callbacks: list[Callable[[SignalStatus], Any]] = []

    @classmethod
    def resolved(cls, status: SignalStatus = SignalStatus.FINISHED) -> "CompletionSignal":
        sig = cls()
        sig._resolve(status)
        return sig

    @classmethod
    def all(cls, signals: Iterable["CompletionSignal"]) -> "CompletionSignal":
        """Combine signals: finished when all finish, interrupted if any is."""
        signals = list(signals)
        combined = cls()
        if not signals:
            combined._resolve(SignalStatus.FINISHED)
            return combined
        remaining = [len(signals)]

        def child_done(status: SignalStatus) -> None:
            if status is SignalStatus.INTERRUPTED:
                combined._resolve(SignalStatus.INTERRUPTED)
                return
            remaining[0] -= 1
            if remaining[0] == 0:
                combined._resolve(SignalStatus.FINISHED)

        for sig in signals:
            sig.then(child_done)
        return combined

    @property
    def status(self) -> SignalStatus:
        return self._status

    @property
    def done(self) -> bool:
        return self._status is not SignalStatus.PENDING

    @property
    def finished(self) -> bool:
        return self._status is SignalStatus.FINISHED

    @property
    def interrupted(self) -> bool:
        return self._status is SignalStatus.INTERRUPTED

    def then(self, callback: Callable[[SignalStatus], Any]) -> "CompletionSignal":
        if self._status is SignalStatus.PENDING:
            self._callbacks.append(callback)
        else:
            callback(self._status)
        return self

    def interrupt(self) -> bool:
        """Resolve as interrupted; returns False if already resolved."""
        return self._resolve(SignalStatus.INTERRUPTED)

    def _resolve(self, status: SignalStatus) -> bool:
        if self._status is not SignalStatus.PENDING:
            return False
        self._status = status
        callbacks, self._callbacks = self._callbacks, []
        for cb in callbacks:
            cb(status)
        return True

    def __repr__(self) -> str:
        return f"<CompletionSignal {self._status.value}>"


@dataclass(frozen=True)
class Static:
    value: Any


@dataclass(frozen=True)
class Computed:
    """A value recomputed from a nullary callback whenever it is read."""

    fn: Callable[[], Any]

    def __call__(self) -> Any:
        return self.fn()


# never callable, so always static; skips the isinstance chain
_PLAIN_TYPES = frozenset({float, int, str, bool, type(None)})


def as_value(value: Any) -> Union[Static, Computed]:
    """Wrap a raw value; bare callables are treated as computed."""
    if isinstance(value, (Static, Computed)):
        return value
    if callable(value):
        return Computed(value)
    return Static(value)


@dataclass(frozen=True)
class AnimationSpec:
    """Timing of one animation, in milliseconds.

    ``easing`` and ``interpolator`` may be registry names or callables.
    With ``interpolator=None`` numbers interpolate linearly and any other
    value kind holds its start value and snaps to the target at the end.
    """

    duration: float = 1000.0
    delay: float = 0.0
    easing: Union[str, EasingCurve] = "linear"
    interpolator: Union[str, Interpolator, None] = None

    def __post_init__(self) -> None:
        for name in ("duration", "delay"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and non-negative, got {v!r}")
        get_easing(self.easing)
        if self.interpolator is not None:
            get_interpolator(self.interpolator)

    def replace(self, **changes: Any) -> "AnimationSpec":
        return replace(self, **changes)


def resolve_spec(spec: Optional[AnimationSpec], overrides: dict) -> AnimationSpec:
    if spec is None:
        return AnimationSpec(**overrides)
    if overrides:
        return replace(spec, **overrides)
    return spec


class Phase(enum.Enum):
    PENDING = "pending"
    RUNNING = "running"
    FINISHED = "finished"
    INTERRUPTED = "interrupted"


_NO_TARGET = object()


class Animation:
    """One run from a captured start value to a static or computed target."""

    __slots__ = (
        "start_value",
        "target",
        "target_value",
        "target_fn",
        "start_time",
        "spec",
        "begin",
        "end",
        "duration",
        "easing",
        "interpolator",
        "numeric",
        "signal",
        "phase",
        "table",
        "slot",
    )

    def __init__(
        self,
        start_value: Any,
        target: Union[Static, Computed],
        start_time: float,
        spec: AnimationSpec,
    ) -> None:
        self.start_value = start_value
        self.target = target
        if isinstance(target, Computed):
            self.target_fn = target.fn
            self.target_value = _NO_TARGET
            probe = target.fn()
        else:
            self.target_fn = None
            self.target_value = probe = target.value
        self.start_time = start_time
        self.spec = spec
        self.begin = start_time + spec.delay
        self.end = self.begin + spec.duration
        self.duration = spec.duration
        self.easing = get_easing(spec.easing)
        if spec.interpolator is None:
            self.interpolator = default_interpolator(start_value, probe)
        else:
            self.interpolator = get_interpolator(spec.interpolator)
        self.numeric = self.interpolator is interpolate_numeric
        if self.numeric and not (math.isfinite(start_value) and math.isfinite(probe)):
            raise ValueError(
                f"cannot animate between non-finite values {start_value!r} and {probe!r}"
            )
        self.signal = CompletionSignal()
        self.phase = Phase.PENDING
        # set while a render group evaluates this animation in bulk
        self.table = None
        self.slot = -1

    def target_now(self) -> Any:
        fn = self.target_fn
        return self.target_value if fn is None else fn()

    def value_at(self, t: float) -> Any:
        if t < self.begin:
            return self.start_value
        fn = self.target_fn
        target = self.target_value if fn is None else fn()
        if t >= self.end:
            return target
        e = self.easing((t - self.begin) / self.duration)
        if self.numeric:
            if e == 1.0:
                return target
            v0 = self.start_value
            return v0 + (target - v0) * e
        return self.interpolator(self.start_value, target, e)

    def __repr__(self) -> str:
        return (
            f"<Animation {self.phase.value} {self.start_value!r} -> {self.target!r} "
            f"[{self.begin}, {self.end}]>"
        )


class Preload(NamedTuple):
    start_value: Any
    end_value: Any
    start_time: float
    end_time: float


def reconstruct(
    preload: Preload,
    t: float,
    easing: Union[str, EasingCurve] = "linear",
    interpolator: Union[str, Interpolator] = interpolate_numeric,
) -> Any:
    """Evaluate a preloaded animation at ``t`` the way a shader would."""
    v0, v1, t0, t1 = preload
    if t1 <= t0:
        return v1 if t >= t0 else v0
    u = (t - t0) / (t1 - t0)
    if u < 0.0:
        u = 0.0
    elif u > 1.0:
        u = 1.0
    return get_interpolator(interpolator)(v0, v1, get_easing(easing)(u))


def _retire(anim: Animation, phase: Phase) -> None:
    table = anim.table
    if table is not None:
        table.release(anim)
    anim.phase = phase
    anim.signal._resolve(SignalStatus(phase.value))


def _differs(a: Any, b: Any) -> bool:
    if a is b:
        return False
    try:
        return bool(a != b)
    except Exception:
        return True


class Attribute:
    """A single animatable property.

    Parameters
    ----------
    value
        Initial base value: a plain value, :class:`Static`, :class:`Computed`
        or a bare nullary callable (treated as computed).
    name
        Optional label, filled in by the owning mark.
    preloadable
        Allow :meth:`preload`, which hands out the four-value animation
        description a GPU shader needs.

    Notes
    -----
    A fresh attribute reports a change on its first :meth:`advance` so its
    initial state is observed once. A computed base is evaluated lazily, so
    it may refer to objects created after the attribute.
    """

    __slots__ = ("name", "preloadable", "_value", "_compute", "_anim", "_time", "_dirty", "_owner")

    def __init__(self, value: Any = None, *, name: Optional[str] = None, preloadable: bool = False):
        self.name = name
        self.preloadable = preloadable
        self._anim: Optional[Animation] = None
        self._time = 0.0
        self._dirty = True
        self._owner = None
        if value.__class__ in _PLAIN_TYPES:
            self._compute = None
            self._value = value
        else:
            self._assign(as_value(value))

    def _assign(self, v: Union[Static, Computed]) -> None:
        if isinstance(v, Computed):
            self._compute = v.fn
            self._value = _NO_TARGET
        else:
            self._compute = None
            self._value = v.value

    def _now(self) -> float:
        owner = self._owner
        return self._time if owner is None else owner._now()

    def _touched(self) -> None:
        self._dirty = True
        owner = self._owner
        if owner is not None:
            owner._attribute_mutated(self)

    @property
    def time(self) -> float:
        return self._now()

    @property
    def animation(self) -> Optional[Animation]:
        return self._anim

    @property
    def animating(self) -> bool:
        return self._anim is not None

    @property
    def computed(self) -> bool:
        """True if the value is recomputed on read (base or target)."""
        anim = self._anim
        if anim is not None:
            return anim.target_fn is not None
        return self._compute is not None

    def get(self) -> Any:
        """Momentary value at the attribute's current time."""
        anim = self._anim
        if anim is None:
            c = self._compute
            return self._value if c is None else c()
        table = anim.table
        if table is not None:
            t = self._now()
            if t == table.time:
                return table.values[anim.slot]
            return table.value(anim.slot, t)
        if anim.end == anim.begin and anim.phase is Phase.PENDING:
            # a zero-length animation settles at an advance, not on read,
            # so the value does not jump at the call instant
            return anim.start_value
        return anim.value_at(self._now())

    def value_at(self, t: float) -> Any:
        """Momentary value at ``t`` assuming no further mutation."""
        anim = self._anim
        if anim is None:
            c = self._compute
            return self._value if c is None else c()
        return anim.value_at(t)

    def get_specified(self) -> Any:
        """The value the attribute will settle at."""
        anim = self._anim
        if anim is not None:
            return anim.target_now()
        c = self._compute
        return self._value if c is None else c()

    def set(self, value: Any) -> None:
        """Replace the base value, cancelling any running animation."""
        self._cancel()
        self._assign(as_value(value))
        self._touched()

    def animate_to(self, target: Any, spec: Optional[AnimationSpec] = None, **spec_kwargs: Any) -> CompletionSignal:
        """Animate from the momentary value to a static ``target``."""
        if isinstance(target, Computed):
            raise TypeError("animate_to takes a static target; use animate() for computed ones")
        if isinstance(target, Static):
            target = target.value
        return self._start(Static(target), resolve_spec(spec, spec_kwargs))

    def animate(self, target: Any, spec: Optional[AnimationSpec] = None, **spec_kwargs: Any) -> CompletionSignal:
        """Animate toward a computed target that is re-evaluated every frame."""
        if isinstance(target, Static):
            raise TypeError("animate takes a computed target; use animate_to() for static ones")
        if not isinstance(target, Computed):
            if not callable(target):
                raise TypeError("animate needs a callable or Computed target")
            target = Computed(target)
        return self._start(target, resolve_spec(spec, spec_kwargs))

    def _start(self, target: Union[Static, Computed], spec: AnimationSpec) -> CompletionSignal:
        now = self._now()
        start_value = self.get()
        anim = Animation(start_value, target, now, spec)
        old = self._anim
        self._anim = anim
        self._compute = None
        self._value = start_value
        owner = self._owner
        if owner is not None:
            owner._register_animation(anim)
        if old is not None:
            _retire(old, Phase.INTERRUPTED)
        self._touched()
        return anim.signal

    def _cancel(self) -> None:
        old = self._anim
        if old is not None:
            self._anim = None
            _retire(old, Phase.INTERRUPTED)

    def advance(self, to_time: float) -> bool:
        """Move to ``to_time``; True if the momentary value may have changed."""
        prev = self._time
        if to_time < prev:
            raise TimeRegressionError(f"attribute time {prev} > requested {to_time}")
        self._time = to_time
        anim = self._anim
        if anim is None:
            c = self._compute
            if c is None:
                if self._dirty:
                    self._dirty = False
                    owner = self._owner
                    if owner is not None:
                        owner._prune = True
                    return True
                return False
            v = c()
            changed = self._dirty or _differs(v, self._value)
            self._dirty = False
            self._value = v
            return changed
        if to_time < anim.begin:
            if self._dirty:
                self._dirty = False
                return True
            return False
        if to_time >= anim.end:
            self._finish(anim)
            return True
        if anim.phase is Phase.PENDING:
            anim.phase = Phase.RUNNING
        elif to_time == prev and not self._dirty and anim.target_fn is None:
            return False
        if anim.target_fn is not None:
            v = anim.value_at(to_time)
            changed = self._dirty or to_time != prev or _differs(v, self._value)
            self._dirty = False
            self._value = v
            return changed
        # static target: the value is evaluated on read, nothing to store
        self._dirty = False
        return True

    def _finish(self, anim: Animation) -> None:
        self._anim = None
        self._dirty = False
        fn = anim.target_fn
        if fn is None:
            self._compute = None
            self._value = anim.target_value
            owner = self._owner
            if owner is not None:
                owner._prune = True
        else:
            self._compute = fn
            self._value = fn()
        _retire(anim, Phase.FINISHED)

    def preload(self) -> Preload:
        """Four-value description of the current animation for shaders.

        Idle attributes describe a degenerate animation at the current time.
        A computed target is evaluated once, here.
        """
        if not self.preloadable:
            raise ValueError(f"attribute {self.name!r} is not preloadable")
        anim = self._anim
        if anim is None:
            now = self._now()
            v = self.get()
            return Preload(v, v, now, now)
        return Preload(anim.start_value, anim.target_now(), anim.begin, anim.end)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Attribute{label} value={self.get()!r} animating={self.animating}>"
