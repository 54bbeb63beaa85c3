"""Vectorized evaluation of numeric animations.

A render group may hand each numeric animation with a static target to an
:class:`AnimationTable` keyed by its easing curve. The table stores the
four values that define every member (start value, end value, begin and
end time) in flat arrays and evaluates all of them in one numpy pass the
first time any member is read at a new timestamp. Attributes keep their
scalar path as the reference; the array expressions mirror it operation
for operation, so both give identical floats.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from .easing import array_form


class AnimationTable:
    """Struct-of-arrays store for animations sharing one easing curve."""

    __slots__ = ("curve", "_begin", "_duration", "_end", "_v0", "_v1", "_delta",
                 "_members", "_free", "_n", "time", "values", "array", "version")

    def __init__(self, curve: Callable, capacity: int = 64) -> None:
        self.curve = curve
        self._begin = np.zeros(capacity)
        self._duration = np.ones(capacity)
        self._end = np.zeros(capacity)
        self._v0 = np.zeros(capacity)
        self._v1 = np.zeros(capacity)
        self._delta = np.zeros(capacity)
        self._members: list = []
        self._free: list[int] = []
        self._n = 0
        # timestamp ``values`` was computed for; NaN never compares equal
        self.time = math.nan
        self.values: list[float] = []
        self.array = np.zeros(0)
        # bumped whenever a slot changes owner; read plans key on it
        self.version = 0

    def __len__(self) -> int:
        return self._n - len(self._free)

    def _grow(self) -> None:
        cap = 2 * len(self._begin)
        for name in ("_begin", "_duration", "_end", "_v0", "_v1", "_delta"):
            old = getattr(self, name)
            new = np.zeros(cap) if name != "_duration" else np.ones(cap)
            new[: len(old)] = old
            setattr(self, name, new)

    def add(self, anim) -> None:
        if self._free:
            slot = self._free.pop()
            self._members[slot] = anim
        else:
            slot = self._n
            if slot == len(self._begin):
                self._grow()
            self._n += 1
            self._members.append(anim)
        v0 = anim.start_value
        v1 = anim.target_value
        self._begin[slot] = anim.begin
        self._duration[slot] = anim.duration
        self._end[slot] = anim.end
        self._v0[slot] = v0
        self._v1[slot] = v1
        self._delta[slot] = v1 - v0
        anim.table = self
        anim.slot = slot
        self.version += 1
        if self.time == self.time:
            # keep the current frame's values valid for the newcomer
            v = float(anim.value_at(self.time))
            if slot == len(self.values):
                self.values.append(v)
                self.array = np.append(self.array, v)
            else:
                self.values[slot] = v
                self.array[slot] = v

    def release(self, anim) -> None:
        slot = anim.slot
        anim.table = None
        anim.slot = -1
        self._members[slot] = None
        self._free.append(slot)
        self.version += 1
        if len(self._free) == self._n:
            self._members.clear()
            self._free.clear()
            self._n = 0
            self.values = []
            self.array = np.zeros(0)
            self.time = math.nan

    def value(self, slot: int, t: float) -> float:
        if t != self.time:
            self.evaluate(t)
        return self.values[slot]

    def evaluate(self, t: float) -> None:
        n = self._n
        begin = self._begin[:n]
        end = self._end[:n]
        v0 = self._v0[:n]
        v1 = self._v1[:n]
        with np.errstate(all="ignore"):
            e = self.curve((t - begin) / self._duration[:n])
            vals = v0 + self._delta[:n] * e
        vals = np.where(e == 1.0, v1, vals)
        vals = np.where(t >= end, v1, vals)
        vals = np.where(t < begin, v0, vals)
        self.array = vals
        self.values = vals.tolist()
        self.time = t


class TableSet:
    """One :class:`AnimationTable` per easing curve that has an array form."""

    __slots__ = ("_tables",)

    def __init__(self) -> None:
        self._tables: dict[Callable, AnimationTable] = {}

    def register(self, anim) -> bool:
        """Adopt ``anim`` if it can be evaluated in bulk; True if adopted."""
        if not anim.numeric or anim.target_fn is not None or not anim.end > anim.begin:
            return False
        table = self._tables.get(anim.easing)
        if table is None:
            form = array_form(anim.easing)
            if form is None:
                return False
            table = self._tables[anim.easing] = AnimationTable(form)
        table.add(anim)
        return True

    def __len__(self) -> int:
        return sum(len(t) for t in self._tables.values())

    def table_for(self, curve: Callable) -> Optional[AnimationTable]:
        return self._tables.get(curve)


class ColumnPlan:
    """Where each mark's value of one attribute comes from, frozen.

    Built from a list of marks, a plan records per position either a
    constant, a ``(table, slot)`` pair, or a mark to ask every time. It
    stays correct until the group mutates a mark, the mark list changes,
    or a referenced table reassigns a slot; the owner checks
    :meth:`valid` before each use.
    """

    __slots__ = ("name", "marks", "epoch", "_template", "_parts", "_dynamic", "_versions")

    def __init__(self, name: str, marks: list, group, epoch: int) -> None:
        self.name = name
        self.marks = marks
        self.epoch = epoch
        template = [0.0] * len(marks)
        by_table: dict = {}
        dynamic = []
        for i, m in enumerate(marks):
            a = m._attrs.get(name)
            if a is None or m._group is not group:
                dynamic.append((i, m))
                continue
            anim = a._anim
            if anim is None:
                v = a._value
                if a._compute is None and type(v) is float:
                    template[i] = v
                else:
                    dynamic.append((i, m))
                continue
            table = anim.table
            if table is None:
                dynamic.append((i, m))
            else:
                by_table.setdefault(table, ([], []))
                pos, slots = by_table[table]
                pos.append(i)
                slots.append(anim.slot)
        self._template = np.array(template)
        self._parts = [
            (table, np.array(pos, dtype=np.intp), np.array(slots, dtype=np.intp))
            for table, (pos, slots) in by_table.items()
        ]
        self._versions = [(table, table.version) for table in by_table]
        self._dynamic = dynamic

    def valid(self, marks: list, epoch: int) -> bool:
        if marks is not self.marks or epoch != self.epoch:
            return False
        for table, version in self._versions:
            if table.version != version:
                return False
        return True

    def read(self, now: float) -> Optional[list]:
        """Values at ``now``, or None if some value is not a float."""
        out = self._template.copy()
        for table, pos, slots in self._parts:
            if table.time != now:
                table.evaluate(now)
            out[pos] = table.array[slots]
        name = self.name
        for i, m in self._dynamic:
            v = m.attr(name)
            if type(v) is not float:
                return None
            out[i] = v
        return out.tolist()
