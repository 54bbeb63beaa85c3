"""Render groups: ordered mark collections with dirty tracking."""

from __future__ import annotations

import math
from typing import Any, Callable, Iterable, Iterator, Optional, Union

from .attribute import AnimationSpec, CompletionSignal, Computed, resolve_spec
from .errors import DuplicateError, StagingError, TimeRegressionError, UnknownMarkError
from .batch import ColumnPlan, TableSet
from .mark import Mark
from .staging import MOMENTARY_STATES, SPECIFIED_STATES, Stage, StageState, StagingConfig

MarkFactory = Callable[[Any], Mark]


class MarkRenderGroup:
    """A time-varying, insertion-ordered set of marks advanced together.

    The group hears about every mutation of its marks and keeps an *active
    set* of marks that were mutated or are still animating. A frame advance
    visits only that set, so a quiescent group costs nothing per frame.
    Between animation boundaries (starts, ends, mutations) momentary values
    are pure functions of time, so such frames skip the visit entirely.
    ``dirty_tracking=False`` visits every mark every frame instead; results
    are identical, which makes it a handy baseline.

    Numeric animations toward static targets whose easing curve has an
    array form are evaluated together in one vectorized pass per frame
    (``vectorize=False`` keeps every animation on the scalar path).

    Parameters
    ----------
    marks
        Initial contents. With staging these start onstage, without any
        entry choreography.
    staging
        Optional :class:`~markstate.staging.StagingConfig`; enables
        :meth:`show`, :meth:`hide` and :meth:`set_visible_set`.
    factory
        Builds a mark for an id that :meth:`set_visible_set` has not seen.
    dirty_tracking
        Visit only active marks (default) or every mark every frame.
    vectorize
        Evaluate eligible animations in bulk (default).
    """

    def __init__(
        self,
        marks: Iterable[Mark] = (),
        *,
        staging: Optional[StagingConfig] = None,
        factory: Optional[MarkFactory] = None,
        dirty_tracking: bool = True,
        vectorize: bool = True,
    ) -> None:
        self._marks: dict[Any, Mark] = {}
        self._seq: dict[Any, int] = {}
        self._next_seq = 0
        self._tables = TableSet() if vectorize else None
        # no active mark needs a visit before this time (see _advance_active)
        self._quiet_until = -math.inf
        # bumped on every mark mutation; column plans key on it
        self._epoch = 0
        self._plans: dict[str, ColumnPlan] = {}
        self._active: dict[Any, Mark] = {}
        self._active_list: list[Mark] = []
        self._active_stale = False
        self._removed: set = set()
        self._time = 0.0
        self._stage = Stage(staging, self._order) if staging is not None else None
        self._stage_cache: Optional[list[Mark]] = None
        self._stage_version = -1
        self.factory = factory
        self._dirty_tracking = dirty_tracking
        self.last_visit_count = 0
        self.total_visits = 0
        self._add_initial(list(marks))

    @property
    def dirty_tracking(self) -> bool:
        return self._dirty_tracking

    @dirty_tracking.setter
    def dirty_tracking(self, on: bool) -> None:
        if on and not self._dirty_tracking:
            # marks were not tracked while off; watch all of them once
            self._active = dict(self._marks)
            self._active_stale = True
            self._quiet_until = -math.inf
        self._dirty_tracking = bool(on)

    def _order(self, mark: Mark) -> int:
        return self._seq.get(mark.id, -1)

    # -- membership -----------------------------------------------------

    def __len__(self) -> int:
        return len(self._marks)

    def __contains__(self, mark_id: Any) -> bool:
        return mark_id in self._marks

    def __iter__(self) -> Iterator[Mark]:
        return iter(list(self._marks.values()))

    def __repr__(self) -> str:
        staged = " staged" if self._stage is not None else ""
        return f"<MarkRenderGroup{staged} {len(self._marks)} marks, {len(self._active)} active>"

    @property
    def marks(self) -> list[Mark]:
        return list(self._marks.values())

    @property
    def time(self) -> float:
        return self._time

    @property
    def active_ids(self) -> list:
        return list(self._active)

    def get_mark(self, mark_id: Any) -> Optional[Mark]:
        return self._marks.get(mark_id)

    def filter(self, predicate: Callable[[Mark], bool]) -> list[Mark]:
        return [m for m in self._marks.values() if predicate(m)]

    def map(self, fn: Callable[[Mark], Any]) -> list:
        return [fn(m) for m in self._marks.values()]

    def add_mark(self, mark: Mark) -> Mark:
        """Add ``mark``. In a staged group it starts offstage until shown."""
        mid = mark.id
        if mid in self._marks:
            raise DuplicateError(f"group already has a mark with id {mid!r}")
        if mark._group is not None:
            raise ValueError(f"mark {mid!r} already belongs to a group")
        self._marks[mid] = mark
        self._seq[mid] = self._next_seq
        self._next_seq += 1
        mark._group = self
        mark._fast_until = -math.inf
        self._activate(mark)
        self._stage_cache = None
        return mark

    def _add_initial(self, marks: list[Mark]) -> None:
        # add_mark for many marks at once; initial marks start onstage
        table, seq, active = self._marks, self._seq, self._active
        n = self._next_seq
        for mark in marks:
            mid = mark._id
            if mid in table:
                raise DuplicateError(f"group already has a mark with id {mid!r}")
            if mark._group is not None:
                raise ValueError(f"mark {mid!r} already belongs to a group")
            table[mid] = mark
            seq[mid] = n
            n += 1
            mark._group = self
            mark._fast_until = -math.inf
            active[mid] = mark
        self._next_seq = n
        if marks:
            self._mark_changed(marks[0])
            self._active_stale = True
            self._stage_cache = None
            if self._stage is not None:
                self._stage.place_all(marks)

    def remove_mark(self, mark_id: Any) -> Mark:
        """Drop a mark. Its animations are abandoned and never complete."""
        mark = self._marks.pop(mark_id, None)
        if mark is None:
            raise UnknownMarkError(f"no mark with id {mark_id!r}")
        del self._seq[mark_id]
        # the mark's animations go back to scalar evaluation
        for a in mark._live:
            anim = a._anim
            if anim is not None and anim.table is not None:
                anim.table.release(anim)
        if self._active.pop(mark_id, None) is not None:
            self._active_stale = True
        self._removed.add(mark_id)
        if self._stage is not None:
            self._stage.forget(mark_id)
        self._stage_cache = None
        mark._group = None
        mark._catch_up(self._time)
        return mark

    def _mark_changed(self, mark: Mark) -> None:
        self._quiet_until = -math.inf
        self._epoch += 1
        if mark.id not in self._active:
            self._active[mark.id] = mark
            self._active_stale = True

    def _activate(self, mark: Mark) -> None:
        self._mark_changed(mark)

    def _register_animation(self, anim) -> None:
        if self._tables is not None:
            self._tables.register(anim)

    # -- frame loop -----------------------------------------------------

    def advance(self, to_time: float) -> bool:
        """Advance to ``to_time``; True if anything needs redrawing.

        Completion signals fire during this call, mark by mark in insertion
        order, and staging transitions are applied after all marks moved.
        """
        prev = self._time
        if to_time < prev:
            raise TimeRegressionError(f"group time {prev} > requested {to_time}")
        self._time = to_time
        self._removed.clear()
        if self._dirty_tracking:
            changed = self._advance_active(prev, to_time)
        else:
            changed = self._advance_all(to_time)
        stage = self._stage
        if stage is not None and stage._events:
            gone = stage.step()
            if gone:
                changed = True
                if stage.config.remove_on_exit:
                    for m in gone:
                        if m.id in self._marks:
                            self.remove_mark(m.id)
        return changed

    def _advance_active(self, prev: float, t: float) -> bool:
        if t < self._quiet_until and not self._active_stale:
            # every active mark is mid-flight and nothing was mutated:
            # visiting them would only move their clocks
            self.last_visit_count = 0
            return t != prev
        if self._active_stale:
            seq = self._seq
            self._active_list = sorted(self._active.values(), key=lambda m: seq[m.id])
            self._active_stale = False
        marks = self._active_list
        removed = self._removed
        changed = False
        candidates = None
        visits = 0
        for mark in marks:
            if removed and mark.id in removed:
                continue
            visits += 1
            if mark.advance(t):
                changed = True
                if mark._live:
                    continue
            elif mark._live and mark.animating:
                continue
            if candidates is None:
                candidates = []
            candidates.append(mark)
        if candidates is not None:
            # re-checked here: a completion callback later in the frame may
            # have mutated a mark that looked idle when it was visited
            active = self._active
            for mark in candidates:
                live = mark._live
                if not live or not (mark.animating or any(a._dirty for a in live)):
                    active.pop(mark.id, None)
            self._active_stale = True
        elif visits == len(marks) and marks:
            quiet = math.inf
            for mark in marks:
                until = mark._fast_until
                if until < quiet:
                    quiet = until
                    if quiet == -math.inf:
                        break
            self._quiet_until = quiet
        self.last_visit_count = visits
        self.total_visits += visits
        return changed

    def _advance_all(self, t: float) -> bool:
        removed = self._removed
        changed = False
        visits = 0
        for mark in list(self._marks.values()):
            if removed and mark.id in removed:
                continue
            visits += 1
            if mark.advance(t):
                changed = True
        self.last_visit_count = visits
        self.total_visits += visits
        return changed

    # -- bulk reads -----------------------------------------------------

    def columns(self, *names: str, marks: Optional[Iterable[Mark]] = None) -> list[list]:
        """Momentary values as one list per attribute name.

        ``marks`` defaults to :attr:`stage`; the result follows its order.
        This is the cheap way to fill vertex buffers: values come straight
        from the bulk-evaluated tables where possible.
        """
        if marks is None:
            marks = self.stage
            plans = self._plans
            out = []
            for name in names:
                plan = plans.get(name)
                if plan is None or not plan.valid(marks, self._epoch):
                    plan = plans[name] = ColumnPlan(name, marks, self, self._epoch)
                col = plan.read(self._time)
                if col is None:
                    col = self._column(name, marks)
                out.append(col)
            return out
        marks = list(marks)
        return [self._column(name, marks) for name in names]

    def _column(self, name: str, marks: list) -> list:
        now = self._time
        col = []
        append = col.append
        for m in marks:
            a = m._attrs.get(name)
            if a is None or m._group is not self:
                append(m.attr(name))
                continue
            anim = a._anim
            if anim is None:
                append(a._value if a._compute is None else a._compute())
                continue
            table = anim.table
            if table is not None and table.time == now:
                append(table.values[anim.slot])
            else:
                append(a.get())
        return col

    # -- bulk animation -------------------------------------------------

    def animate_all(
        self,
        name: str,
        target: Any,
        spec: Optional[AnimationSpec] = None,
        *,
        delay: Union[float, Callable[[Mark, int], float], None] = None,
        **spec_kwargs: Any,
    ) -> CompletionSignal:
        """Animate ``name`` on every mark that has it; others are skipped.

        ``target`` may be a value, a :class:`~markstate.attribute.Computed`
        (tracked every frame) or a callable ``target(mark)`` giving a
        per-mark static target. ``delay`` may be a callable
        ``delay(mark, index)`` for staggered starts.
        """
        base = resolve_spec(spec, spec_kwargs)
        signals = []
        index = 0
        for mark in list(self._marks.values()):
            if name not in mark:
                continue
            s = base
            if delay is not None:
                d = delay(mark, index) if callable(delay) else delay
                s = base.replace(delay=d)
            attr = mark.attribute(name)
            if isinstance(target, Computed):
                signals.append(attr.animate(target, s))
            elif callable(target):
                signals.append(attr.animate_to(target(mark), s))
            else:
                signals.append(attr.animate_to(target, s))
            index += 1
        return CompletionSignal.all(signals)

    # -- staging --------------------------------------------------------

    @property
    def staging(self) -> Optional[StagingConfig]:
        return self._stage.config if self._stage is not None else None

    def _require_stage(self) -> Stage:
        if self._stage is None:
            raise StagingError("this group has no staging configured")
        return self._stage

    def _resolve(self, mark: Union[Mark, Any]) -> Mark:
        if isinstance(mark, Mark):
            return mark
        found = self._marks.get(mark)
        if found is None:
            raise UnknownMarkError(f"no mark with id {mark!r}")
        return found

    def stage_state(self, mark_id: Any) -> StageState:
        self._require_stage()
        return self._stage.state(mark_id)

    def on_stage_change(self, listener: Callable[[Mark, StageState, StageState], Any]) -> None:
        self._require_stage().on_transition(listener)

    def show(self, mark: Union[Mark, Any]) -> bool:
        """Stage a mark in; adds it to the group if needed. False if no-op."""
        stage = self._require_stage()
        mark = self._resolve(mark)
        if mark.id not in self._marks:
            self.add_mark(mark)
        elif self._marks[mark.id] is not mark:
            raise DuplicateError(f"group holds a different mark with id {mark.id!r}")
        return stage.show(mark)

    def hide(self, mark: Union[Mark, Any]) -> bool:
        """Stage a mark out. False if it was not specified-visible."""
        stage = self._require_stage()
        mark = self._resolve(mark)
        if self._marks.get(mark.id) is not mark:
            return False
        return stage.hide(mark)

    def set_visible_set(self, ids: Iterable[Any], factory: Optional[MarkFactory] = None) -> None:
        """Declaratively show exactly ``ids``; unchanged marks are untouched.

        Ids the group has never held are built with ``factory`` (or the
        group's). Every id is resolved before anything changes.
        """
        stage = self._require_stage()
        factory = factory or self.factory
        wanted = list(dict.fromkeys(ids))
        wanted_set = set(wanted)
        for mid in wanted:
            if mid not in self._marks and factory is None:
                raise UnknownMarkError(f"no mark with id {mid!r} and no factory to build one")
        for mark in list(self._marks.values()):
            if mark.id not in wanted_set and stage.state(mark.id) in SPECIFIED_STATES:
                stage.hide(mark)
        for mid in wanted:
            mark = self._marks.get(mid)
            if mark is None:
                mark = factory(mid)
                if mark.id != mid:
                    raise ValueError(f"factory built mark {mark.id!r} for id {mid!r}")
                self.add_mark(mark)
            if stage.state(mid) not in SPECIFIED_STATES:
                stage.show(mark)

    @property
    def stage(self) -> list[Mark]:
        """Marks currently drawable (entering, onstage or exiting), in group order.

        For an unstaged group this is every mark. The list is cached
        between changes; treat it as read-only.
        """
        stage = self._stage
        if stage is None:
            if self._stage_cache is None:
                self._stage_cache = list(self._marks.values())
            return self._stage_cache
        if self._stage_cache is None or self._stage_version != stage.version:
            states = stage._states
            self._stage_cache = [m for m in self._marks.values() if m.id in states]
            self._stage_version = stage.version
        return self._stage_cache

    @property
    def visible(self) -> list[Mark]:
        """Marks in the specified state (entering or onstage)."""
        stage = self._stage
        if stage is None:
            return list(self._marks.values())
        return [m for m in self._marks.values() if stage.state(m.id) in SPECIFIED_STATES]

    def stage_counts(self) -> dict[StageState, int]:
        stage = self._require_stage()
        counts = stage.counts()
        counts[StageState.OFFSTAGE] = len(self._marks) - sum(
            1 for mid in stage._states if mid in self._marks
        )
        return counts


__all__ = ["MarkRenderGroup", "MOMENTARY_STATES", "SPECIFIED_STATES"]
