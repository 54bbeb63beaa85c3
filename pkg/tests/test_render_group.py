import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from markstate import (
    AnimationSpec,
    Computed,
    DuplicateError,
    Mark,
    MarkRenderGroup,
    TimeRegressionError,
    UnknownMarkError,
)

LIN = AnimationSpec(duration=1000, easing="linear")


def make_marks(n, prefix="m"):
    return [Mark(f"{prefix}{i}", {"x": float(i), "y": 0.0, "alpha": 1.0}) for i in range(n)]


def test_add_and_duplicate():
    g = MarkRenderGroup()
    g.add_mark(Mark("a", {"x": 1}))
    assert len(g) == 1
    with pytest.raises(DuplicateError):
        g.add_mark(Mark("a", {"x": 2}))
    assert len(g) == 1 and g.get_mark("a").attr("x") == 1


def test_added_animating_mark_reports_change():
    g = MarkRenderGroup()
    g.advance(0)
    m = Mark("a", {"x": 0.0})
    m.animate_to("x", 1.0, duration=100)
    g.add_mark(m)
    assert g.advance(10) is True


def test_remove():
    g = MarkRenderGroup([Mark("a", {"x": 1})])
    g.remove_mark("a")
    assert len(g) == 0 and g.advance(1) is False
    assert g.get_mark("a") is None
    with pytest.raises(UnknownMarkError):
        g.remove_mark("a")


def test_remove_mid_animation_abandons_completion():
    m = Mark("a", {"x": 0.0})
    g = MarkRenderGroup([m])
    sig = m.animate_to("x", 1.0, LIN)
    g.advance(500)
    g.remove_mark("a")
    for t in (1000, 2000):
        g.advance(t)
    assert not sig.done


def test_time_regression():
    g = MarkRenderGroup()
    g.advance(10)
    with pytest.raises(TimeRegressionError):
        g.advance(5)


def test_idle_group_visits_nothing():
    g = MarkRenderGroup(make_marks(1000))
    assert g.advance(0) is True
    assert g.advance(16) is False
    assert g.last_visit_count == 0


def test_one_animating_mark_visits_one():
    marks = make_marks(1000)
    g = MarkRenderGroup(marks)
    g.advance(0)
    marks[500].animate_to("x", 0.0, duration=100)
    assert g.advance(10) is True
    assert g.last_visit_count == 1
    assert g.active_ids == ["m500"]


def test_pending_animation_keeps_mark_active():
    m = Mark("a", {"x": 0.0})
    g = MarkRenderGroup([m])
    g.advance(0)
    m.animate_to("x", 1.0, duration=10, delay=100)
    for t in (10, 20, 50):
        g.advance(t)
        assert "a" in g.active_ids
    g.advance(110)
    assert m.attr("x") == 1.0


def test_idempotent_at_fixed_time():
    marks = make_marks(5)
    g = MarkRenderGroup(marks)
    marks[0].animate_to("x", 9.0, LIN)
    assert g.advance(100) is True
    before = [m.attrs("x", "y") for m in marks]
    assert g.advance(100) is False
    assert [m.attrs("x", "y") for m in marks] == before


def test_iteration_filter_map_get():
    marks = make_marks(4)
    marks[2].represented = {"keep": True}
    g = MarkRenderGroup(marks)
    assert [m.id for m in g] == ["m0", "m1", "m2", "m3"]
    assert g.filter(lambda m: m.represented is not None) == [marks[2]]
    assert g.map(lambda m: m.attr("x")) == [0.0, 1.0, 2.0, 3.0]
    assert len(g) == 4
    assert g.get_mark("m1") is marks[1] and g.get_mark("zz") is None


def test_animate_all():
    marks = make_marks(3) + [Mark("other", {"size": 1})]
    g = MarkRenderGroup(marks)
    sig = g.animate_all("alpha", 0.0, duration=100)
    assert sum(m.animating for m in marks) == 3
    g.advance(100)
    assert sig.finished
    assert MarkRenderGroup().animate_all("alpha", 0.0).finished


def test_animate_all_staggered():
    marks = make_marks(3)
    g = MarkRenderGroup(marks)
    g.animate_all("y", 10.0, duration=100, delay=lambda m, i: 50.0 * i)
    g.advance(100)
    # mark i runs over [50 i, 50 i + 100]
    assert [m.attr("y") for m in marks] == [10.0, 5.0, 0.0]


def test_animate_all_per_mark_and_computed_targets():
    marks = make_marks(2)
    g = MarkRenderGroup(marks)
    g.animate_all("y", lambda m: m.attr("x") * 2, duration=10)
    g.advance(10)
    assert [m.attr("y") for m in marks] == [0.0, 2.0]
    g.animate_all("y", Computed(lambda: 7.0), duration=10)
    g.advance(20)
    assert [m.attr("y") for m in marks] == [7.0, 7.0]


def test_completion_order_is_insertion_order():
    marks = make_marks(5)
    g = MarkRenderGroup(marks)
    order = []
    for m in reversed(marks):
        m.animate_to("x", 0.0, duration=10).then(lambda s, mid=m.id: order.append(mid))
    g.advance(10)
    assert order == [m.id for m in marks]


def test_callback_mutation_during_frame_keeps_mark_active():
    a, b = Mark("a", {"x": 0.0}), Mark("b", {"x": 0.0})
    g = MarkRenderGroup([a, b])
    g.advance(0)
    # b was visited (idle) before a's completion animates it
    b.set_attr("x", 0.0)
    a.animate_to("x", 1.0, duration=10).then(lambda s: b.animate_to("x", 5.0, duration=10))
    g.advance(5)
    g.advance(10)
    assert "b" in g.active_ids
    g.advance(20)
    assert b.attr("x") == 5.0


def test_columns_match_per_mark_reads():
    marks = make_marks(50)
    g = MarkRenderGroup(marks)
    for i, m in enumerate(marks):
        if i % 3 == 0:
            m.animate_to("x", -1.0 * i, duration=100, easing="ease-in-out-cubic")
        if i % 5 == 0:
            m.animate_to("alpha", 0.5, duration=50, delay=10)
    for t in (0, 5, 20, 55, 100, 120):
        g.advance(t)
        xs, alphas = g.columns("x", "alpha")
        assert xs == [m.attr("x") for m in marks]
        assert alphas == [m.attr("alpha") for m in marks]
        assert g.columns("x", marks=marks[::-1])[0] == xs[::-1]


def test_columns_non_float_values_fall_back():
    marks = [Mark(f"m{i}", {"label": f"L{i}", "n": i}) for i in range(3)]
    g = MarkRenderGroup(marks)
    assert g.columns("label", "n") == [["L0", "L1", "L2"], [0, 1, 2]]


def test_dirty_tracking_toggle():
    marks = make_marks(10)
    g = MarkRenderGroup(marks, dirty_tracking=False)
    g.advance(0)
    g.advance(1)
    assert g.last_visit_count == 10
    g.dirty_tracking = True
    g.advance(2)
    g.advance(3)
    assert g.last_visit_count == 0


# -- oracle equivalence on random schedules ------------------------------

EASINGS = ["linear", "ease-in-cubic", "ease-out-cubic", "ease-in-out-cubic", (lambda u: u * u)]


def run_schedule(seed, n_marks, n_steps, group_kwargs):
    """Apply a seeded mutation schedule; record (flag, values) per frame.

    With ``group_kwargs`` None, marks are advanced one by one outside any
    group and the flag is the OR of their results: the naive oracle.
    """
    rng = random.Random(seed)
    marks = [Mark(f"m{i}", {"x": rng.uniform(-5, 5), "y": 0.0, "label": "a"}) for i in range(n_marks)]
    group = MarkRenderGroup(marks, **group_kwargs) if group_kwargs is not None else None
    t = 0.0
    out = []
    for _ in range(n_steps):
        t += rng.choice([0.0, 3.0, 16.0, 40.0])
        for _ in range(rng.randint(0, 3)):
            m = rng.choice(marks)
            op = rng.random()
            if op < 0.5:
                m.animate_to(rng.choice(["x", "y"]), rng.uniform(-5, 5),
                             duration=rng.choice([0.0, 20.0, 100.0]),
                             delay=rng.choice([0.0, 0.0, 30.0]),
                             easing=rng.choice(EASINGS))
            elif op < 0.7:
                m.set_attr("y", rng.uniform(-1, 1))
            elif op < 0.8:
                m.animate_to("label", rng.choice("abc"), duration=30.0)
            elif op < 0.9:
                # same-mark dependency: mutations of y re-activate the mark;
                # cross-mark dependencies are deliberately not tracked
                m.animate("x", lambda o=m: o.attr("y"), duration=50.0)
            else:
                m.set_attr("x", lambda: 1.5)
        if group is not None:
            flag = group.advance(t)
        else:
            flag = False
            for m in marks:
                flag = m.advance(t) or flag
        out.append((flag, [m.attrs("x", "y", "label") for m in marks]))
    return out


@pytest.mark.parametrize("seed", range(12))
def test_dirty_tracking_matches_naive_oracle(seed):
    expected = run_schedule(seed, 25, 80, None)
    for kwargs in ({}, {"dirty_tracking": False}, {"vectorize": False}):
        assert run_schedule(seed, 25, 80, kwargs) == expected


@given(st.integers(min_value=0, max_value=10**6))
def test_dirty_tracking_matches_naive_property(seed):
    assert run_schedule(seed, 8, 30, {}) == run_schedule(seed, 8, 30, None)


def test_visits_bounded_by_active_set_and_settle_to_animating():
    marks = make_marks(200)
    g = MarkRenderGroup(marks)
    g.advance(0)
    rng = random.Random(3)
    for m in rng.sample(marks, 20):
        m.animate_to("x", 0.0, duration=500)
    t = 0.0
    for _ in range(10):
        active_before = len(g.active_ids)
        t += 16
        g.advance(t)
        assert g.last_visit_count <= active_before
    assert len(g.active_ids) == sum(m.animating for m in marks) == 20
