"""Interruptible entry/exit choreography for render groups.

Each staged mark is in one of four states::

    Offstage --show--> Entering --enter done--> Onstage
                       |    ^                     |
                     hide  show                  hide
                       v    |                     |
    Offstage <--exit done-- Exiting <-------------+

``initialize`` runs only on the way out of Offstage. A mark shown while
exiting (or hidden while entering) restarts choreography from its current
momentary values, so nothing snaps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, Optional

from .attribute import CompletionSignal, SignalStatus
from .errors import IllegalTransitionError

if TYPE_CHECKING:
    from .mark import Mark


class StageState(enum.Enum):
    OFFSTAGE = "offstage"
    ENTERING = "entering"
    ONSTAGE = "onstage"
    EXITING = "exiting"


OFFSTAGE = StageState.OFFSTAGE
ENTERING = StageState.ENTERING
ONSTAGE = StageState.ONSTAGE
EXITING = StageState.EXITING

LEGAL_TRANSITIONS = frozenset(
    {
        (OFFSTAGE, ENTERING),
        (ENTERING, ONSTAGE),
        (ENTERING, EXITING),
        (ONSTAGE, EXITING),
        (EXITING, ENTERING),
        (EXITING, OFFSTAGE),
    }
)

MOMENTARY_STATES = frozenset({ENTERING, ONSTAGE, EXITING})
SPECIFIED_STATES = frozenset({ENTERING, ONSTAGE})

Choreography = Callable[["Mark"], Optional[CompletionSignal]]
TransitionListener = Callable[["Mark", StageState, StageState], Any]


def _no_animation(mark: "Mark") -> CompletionSignal:
    return CompletionSignal.resolved()


@dataclass
class StagingConfig:
    """Callbacks that choreograph entry and exit.

    ``enter`` and ``exit`` start whatever animations they like and return
    a signal covering them (``CompletionSignal.all`` combines several).
    Returning ``None`` counts as an instant transition.
    """

    enter: Choreography = _no_animation
    exit: Choreography = _no_animation
    initialize: Optional[Callable[["Mark"], Any]] = None
    remove_on_exit: bool = False


class Stage:
    """Per-mark stage states for one group. Driven by the group's advance."""

    def __init__(self, config: StagingConfig, order: Callable[["Mark"], int]) -> None:
        self.config = config
        self._order = order
        self._states: dict[Any, StageState] = {}
        self._signals: dict[Any, CompletionSignal] = {}
        self._events: list[tuple["Mark", CompletionSignal, SignalStatus]] = []
        self._listeners: list[TransitionListener] = []
        self.version = 0

    def state(self, mark_id: Any) -> StageState:
        return self._states.get(mark_id, OFFSTAGE)

    def on_transition(self, listener: TransitionListener) -> None:
        self._listeners.append(listener)

    def _transition(self, mark: "Mark", new: StageState) -> None:
        old = self._states.get(mark.id, OFFSTAGE)
        if (old, new) not in LEGAL_TRANSITIONS:
            raise IllegalTransitionError(f"{mark.id!r}: {old.value} -> {new.value}")
        if new is OFFSTAGE:
            del self._states[mark.id]
        else:
            self._states[mark.id] = new
        if (old in MOMENTARY_STATES) != (new in MOMENTARY_STATES):
            self.version += 1
        for fn in tuple(self._listeners):
            fn(mark, old, new)

    def place_all(self, marks: list["Mark"]) -> None:
        """Put marks onstage with no choreography (initial group contents)."""
        self._states.update(dict.fromkeys((m.id for m in marks), ONSTAGE))
        self.version += 1

    def forget(self, mark_id: Any) -> None:
        if self._states.pop(mark_id, OFFSTAGE) in MOMENTARY_STATES:
            self.version += 1
        self._signals.pop(mark_id, None)
        self._events = [e for e in self._events if e[0].id != mark_id]

    def _choreograph(self, mark: "Mark", fn: Choreography) -> None:
        sig = fn(mark)
        if sig is None:
            sig = CompletionSignal.resolved()
        self._signals[mark.id] = sig
        # look the list up at call time; step() swaps it out
        sig.then(lambda status: self._events.append((mark, sig, status)))

    def show(self, mark: "Mark") -> bool:
        state = self.state(mark.id)
        if state is OFFSTAGE:
            if self.config.initialize is not None:
                self.config.initialize(mark)
        elif state is EXITING:
            self._signals[mark.id].interrupt()
        else:
            return False
        self._transition(mark, ENTERING)
        self._choreograph(mark, self.config.enter)
        return True

    def hide(self, mark: "Mark") -> bool:
        state = self.state(mark.id)
        if state is ENTERING:
            sig = self._signals.get(mark.id)
            if sig is not None:
                sig.interrupt()
        elif state is not ONSTAGE:
            return False
        self._transition(mark, EXITING)
        self._choreograph(mark, self.config.exit)
        return True

    @property
    def has_events(self) -> bool:
        return bool(self._events)

    def step(self) -> list["Mark"]:
        """Apply finished enter/exit signals; returns marks that went offstage."""
        events = self._events
        if not events:
            return []
        self._events = []
        events.sort(key=lambda e: self._order(e[0]))
        gone = []
        for mark, sig, status in events:
            if status is not SignalStatus.FINISHED or self._signals.get(mark.id) is not sig:
                continue
            state = self._states.get(mark.id, OFFSTAGE)
            if state is ENTERING:
                self._transition(mark, ONSTAGE)
            elif state is EXITING:
                del self._signals[mark.id]
                self._transition(mark, OFFSTAGE)
                gone.append(mark)
        return gone

    def momentary_ids(self) -> set:
        return set(self._states)

    def specified_ids(self) -> set:
        return {k for k, s in self._states.items() if s is not EXITING}

    def counts(self) -> dict[StageState, int]:
        out = dict.fromkeys(StageState, 0)
        for s in self._states.values():
            out[s] += 1
        return out
