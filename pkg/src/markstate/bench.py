"""Headless frame-time benchmark for an animated scatter plot.

Scenario per trial: ``n_marks`` points with ``x``, ``y``, ``alpha`` and
``radius`` attributes sit at seeded random positions. At t = 0 every point
(or ``animate_fraction`` of them) starts moving to a new random location,
``churn_fraction`` of the points fade out through staging, and as many new
points fade in. The clock then steps by ``frame_dt`` until the group
reports no change. Each frame times the group advance plus a pass that
reads ``x``, ``y`` and ``alpha`` of every drawable mark into a checksum.

Timings cover state management only, no rendering, so absolute numbers are
not comparable with figures that include drawing.

Usage::

    markstate-bench --marks 10000 --trials 5 --out frames.csv
    markstate-bench --marks 100000 --churn 0 --animate-fraction 0.01 --mode naive
"""

from __future__ import annotations

import argparse
import csv
import gc
import io
import math
import random
import statistics
import sys
import time
from dataclasses import dataclass, replace
from typing import IO, Iterable, Optional, Sequence, Union

from .attribute import AnimationSpec
from .mark import Mark
from .render_group import MarkRenderGroup
from .staging import StagingConfig

CSV_HEADER = ("trial", "frame_index", "advance_ms", "n_onstage", "checksum")
MODES = ("dirty", "naive")


class BenchConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    n_marks: int = 10_000
    animation_duration: float = 5000.0
    churn_fraction: float = 0.25
    frame_dt: float = 16.667
    seed: int = 42
    mode: str = "dirty"
    trials: int = 20
    animate_fraction: float = 1.0
    extent: float = 1000.0

    def __post_init__(self) -> None:
        if not (isinstance(self.n_marks, int) and self.n_marks >= 1):
            raise BenchConfigError(f"marks must be an integer >= 1, got {self.n_marks!r}")
        if not (math.isfinite(self.animation_duration) and self.animation_duration >= 0):
            raise BenchConfigError(f"duration must be >= 0 ms, got {self.animation_duration!r}")
        if not 0.0 <= self.churn_fraction <= 1.0:
            raise BenchConfigError(f"churn must be in [0, 1], got {self.churn_fraction!r}")
        if not 0.0 <= self.animate_fraction <= 1.0:
            raise BenchConfigError(f"animate fraction must be in [0, 1], got {self.animate_fraction!r}")
        if not (math.isfinite(self.frame_dt) and self.frame_dt > 0):
            raise BenchConfigError(f"frame dt must be > 0 ms, got {self.frame_dt!r}")
        if self.mode not in MODES:
            raise BenchConfigError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if not (isinstance(self.trials, int) and self.trials >= 1):
            raise BenchConfigError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not self.extent > 0:
            raise BenchConfigError(f"extent must be > 0, got {self.extent!r}")

    @property
    def n_churn(self) -> int:
        return int(self.n_marks * self.churn_fraction)

    @property
    def n_animated(self) -> int:
        return int(round(self.n_marks * self.animate_fraction))


@dataclass(frozen=True)
class FrameRecord:
    """One measured frame.

    ``advance_ms`` is the wall time of group advance plus the evaluation
    pass (the CSV column); ``group_advance_ms`` is the advance alone.
    """

    trial: int
    frame_index: int
    advance_ms: float
    n_onstage: int
    checksum: float
    group_advance_ms: float = 0.0
    visits: int = 0
    changed: bool = True

    def csv_row(self) -> tuple[str, ...]:
        return (
            str(self.trial),
            str(self.frame_index),
            f"{self.advance_ms:.6f}",
            str(self.n_onstage),
            f"{self.checksum:.6f}",
        )


def _fade_config(duration: float) -> StagingConfig:
    fade = AnimationSpec(duration=duration, easing="linear")

    def initialize(mark: Mark) -> None:
        mark.set_attr("alpha", 0.0)

    def enter(mark: Mark):
        return mark.animate_to("alpha", 1.0, fade)

    def exit(mark: Mark):
        return mark.animate_to("alpha", 0.0, fade)

    return StagingConfig(enter=enter, exit=exit, initialize=initialize)


def _point(rng: random.Random, extent: float) -> tuple[float, float]:
    return rng.uniform(0.0, extent), rng.uniform(0.0, extent)


def build_scenario(config: BenchConfig) -> MarkRenderGroup:
    """Construct the group at t = 0 with all animations and churn started."""
    rng = random.Random(config.seed)
    n = config.n_marks
    extent = config.extent
    marks = []
    for i in range(n):
        x, y = _point(rng, extent)
        marks.append(Mark(f"m{i}", {"x": x, "y": y, "alpha": 1.0, "radius": 3.0}))
    group = MarkRenderGroup(
        marks,
        staging=_fade_config(config.animation_duration),
        dirty_tracking=config.mode == "dirty",
    )
    group.advance(0.0)

    if config.n_animated == n:
        movers = range(n)
    else:
        movers = sorted(rng.sample(range(n), config.n_animated))
    move = AnimationSpec(duration=config.animation_duration, easing="ease-in-out-cubic")
    for i in movers:
        x, y = _point(rng, extent)
        mark = marks[i]
        mark.animate_to("x", x, move)
        mark.animate_to("y", y, move)

    k = config.n_churn
    for i in sorted(rng.sample(range(n), k)):
        group.hide(marks[i])
    for j in range(k):
        x, y = _point(rng, extent)
        group.show(Mark(f"m{n + j}", {"x": x, "y": y, "alpha": 1.0, "radius": 3.0}))
    return group


def checksum(group: MarkRenderGroup) -> float:
    """Sum of ``x + y + alpha`` over the drawable marks."""
    xs, ys, alphas = group.columns("x", "y", "alpha")
    return math.fsum(xs) + math.fsum(ys) + math.fsum(alphas)


def run_trial(config: BenchConfig, trial: int = 0, max_frames: Optional[int] = None) -> list[FrameRecord]:
    """Build and run one trial.

    Like :mod:`timeit`, the cyclic garbage collector is paused for the
    trial so collection pauses do not land in random frames.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _run_trial(config, trial, max_frames)
    finally:
        if was_enabled:
            gc.enable()
        gc.collect()


def _run_trial(config: BenchConfig, trial: int, max_frames: Optional[int]) -> list[FrameRecord]:
    group = build_scenario(config)
    dt = config.frame_dt
    if max_frames is None:
        max_frames = math.ceil(config.animation_duration / dt) + 1000
    perf = time.perf_counter
    records = []
    frame = 0
    while True:
        t = (frame + 1) * dt
        t0 = perf()
        changed = group.advance(t)
        t1 = perf()
        cs = checksum(group)
        t2 = perf()
        records.append(
            FrameRecord(
                trial=trial,
                frame_index=frame,
                advance_ms=(t2 - t0) * 1000.0,
                n_onstage=len(group.stage),
                checksum=cs,
                group_advance_ms=(t1 - t0) * 1000.0,
                visits=group.last_visit_count,
                changed=changed,
            )
        )
        if not changed:
            return records
        frame += 1
        if frame >= max_frames:
            raise RuntimeError(f"scenario did not settle within {max_frames} frames")


def run_benchmark(config: BenchConfig) -> list[list[FrameRecord]]:
    """All trials of ``config``; one list of frame records per trial."""
    return [run_trial(config, trial) for trial in range(config.trials)]


def run_baseline(config: BenchConfig) -> list[list[FrameRecord]]:
    """Same scenario with dirty tracking off: every mark visited every frame."""
    return run_benchmark(replace(config, mode="naive"))


def _flatten(records: Iterable) -> list[FrameRecord]:
    flat = []
    for r in records:
        if isinstance(r, FrameRecord):
            flat.append(r)
        else:
            flat.extend(r)
    return flat


def write_csv(records: Iterable, path: Union[str, IO[str], None] = None) -> None:
    """Write records (flat or per-trial lists) as CSV to a path or stream."""
    rows = _flatten(records)
    if path is None:
        path = sys.stdout
    if isinstance(path, (str, bytes)) or hasattr(path, "__fspath__"):
        with open(path, "w", newline="") as fh:
            _write_rows(fh, rows)
    else:
        _write_rows(path, rows)


def _write_rows(fh: IO[str], rows: list[FrameRecord]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(r.csv_row())


def read_csv(path: Union[str, IO[str]]) -> list[FrameRecord]:
    if isinstance(path, (str, bytes)) or hasattr(path, "__fspath__"):
        with open(path, newline="") as fh:
            return read_csv(io.StringIO(fh.read()))
    reader = csv.reader(path)
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [
        FrameRecord(int(t), int(f), float(ms), int(n), float(cs))
        for t, f, ms, n, cs in reader
    ]


def summarize(trials: Sequence[Sequence[FrameRecord]]) -> dict:
    per_frame = [r.advance_ms for trial in trials for r in trial]
    advance_only = [r.group_advance_ms for trial in trials for r in trial]
    trial_means = [statistics.fmean(r.advance_ms for r in trial) for trial in trials]
    ordered = sorted(per_frame)

    def pct(p: float) -> float:
        return ordered[min(len(ordered) - 1, int(p * (len(ordered) - 1)))]

    return {
        "trials": len(trials),
        "frames_per_trial": statistics.fmean(len(t) for t in trials),
        "mean_ms": statistics.fmean(per_frame),
        "std_trial_mean_ms": statistics.pstdev(trial_means) if len(trial_means) > 1 else 0.0,
        "p50_ms": pct(0.50),
        "p95_ms": pct(0.95),
        "max_ms": ordered[-1],
        "mean_advance_only_ms": statistics.fmean(advance_only),
    }


class _OneLineParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _OneLineParser(
        prog="markstate-bench",
        description="Per-frame state-management cost of an animated scatter plot.",
    )
    p.add_argument("--marks", type=int, default=10_000, help="number of points (default 10000)")
    p.add_argument("--duration-ms", type=float, default=5000.0, help="animation length (default 5000)")
    p.add_argument("--churn", type=float, default=0.25, help="fraction replaced via fades (default 0.25)")
    p.add_argument("--frame-dt", type=float, default=16.667, help="ms per frame (default 16.667)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--mode", choices=MODES, default="dirty")
    p.add_argument("--animate-fraction", type=float, default=1.0,
                   help="fraction of initial points that move (default 1.0)")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--quiet", action="store_true", help="skip the summary on stderr")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = BenchConfig(
            n_marks=args.marks,
            animation_duration=args.duration_ms,
            churn_fraction=args.churn,
            frame_dt=args.frame_dt,
            seed=args.seed,
            mode=args.mode,
            trials=args.trials,
            animate_fraction=args.animate_fraction,
        )
    except BenchConfigError as exc:
        print(f"markstate-bench: error: {exc}", file=sys.stderr)
        return 2
    trials = run_benchmark(config)
    write_csv(trials, args.out)
    if not args.quiet:
        s = summarize(trials)
        print(
            f"mode={config.mode} marks={config.n_marks} trials={s['trials']} "
            f"frames/trial={s['frames_per_trial']:.0f} mean={s['mean_ms']:.3f}ms "
            f"p50={s['p50_ms']:.3f}ms p95={s['p95_ms']:.3f}ms "
            f"advance-only={s['mean_advance_only_ms']:.3f}ms",
            file=sys.stderr,
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
