import pytest

from markstate import (
    AnimationSpec,
    Attribute,
    Computed,
    DuplicateError,
    Mark,
    TimeRegressionError,
    UnknownAttributeError,
)

LIN = AnimationSpec(duration=1000, easing="linear")


def test_paper_snippet_values():
    mark = Mark("mark-id", {"x": 250, "y": 400})
    assert mark.attr("x") == 250
    assert mark.attr("y") == 400
    assert mark.id == "mark-id"


def test_empty_mark():
    mark = Mark("empty")
    assert mark.attribute_names == []
    assert mark.advance(10) is False


def test_self_referencing_computed():
    mark = Mark("m", {"x": 250, "c": lambda: mark.attr("x") + 1})
    assert mark.attr("c") == 251


def test_duplicate_names_rejected():
    with pytest.raises(DuplicateError):
        Mark("m", [("x", 1), ("x", 2)])
    mark = Mark("m", {"x": 1})
    with pytest.raises(DuplicateError):
        mark.add_attribute("x", 3)


def test_unknown_attribute_is_an_error():
    mark = Mark("m", {"x": 1})
    for call in (lambda: mark.attr("q"), lambda: mark.attrs("x", "q"),
                 lambda: mark.set_attr("q", 1), lambda: mark.animate_to("q", 1)):
        with pytest.raises(UnknownAttributeError):
            call()


def test_attribute_order_is_insertion_order():
    mark = Mark("m", [("b", 1), ("a", 2), ("c", 3)])
    mark.add_attribute("d", 4)
    assert list(mark) == ["b", "a", "c", "d"]
    assert list(mark.values()) == ["b", "a", "c", "d"]


def test_animate_midpoint():
    mark = Mark("m", {"x": 250.0})
    mark.animate_to("x", 300.0, LIN)
    mark.advance(500)
    assert mark.attr("x") == 275.0
    assert mark.specified("x") == 300.0


def test_two_attributes_progress_independently():
    mark = Mark("m", {"x": 0.0, "y": 0.0})
    mark.animate_to("x", 100.0, duration=1000)
    mark.advance(200)
    mark.animate_to("y", 10.0, duration=100)
    mark.advance(250)
    assert mark.attrs("x", "y") == (25.0, 5.0)
    mark.advance(300)
    assert mark.attrs("x", "y") == (30.0, 10.0)


def test_listener_removal_does_not_stop_animation():
    mark = Mark("m", {"x": 0.0})
    sub = mark.on_change(lambda m, n: None)
    sig = mark.animate_to("x", 1.0, LIN)
    sub.remove()
    assert not sub.active
    mark.advance(1000)
    assert sig.finished


def test_advance_disjunction():
    mark = Mark("m", {k: 0.0 for k in "abcde"})
    mark.advance(0)
    assert mark.advance(1) is False
    mark.animate_to("c", 1.0, duration=10)
    assert mark.advance(5) is True
    # started at t = 1, so it ends at t = 11
    assert mark.advance(11) is True
    assert mark.advance(12) is False


def test_advance_time_regression():
    mark = Mark("m", {"x": 0})
    mark.advance(5)
    with pytest.raises(TimeRegressionError):
        mark.advance(4)


def test_notifications_fire_on_mutation_only():
    mark = Mark("m", {"x": 0.0, "y": 0.0})
    seen = []
    sub = mark.on_change(lambda m, name: seen.append(name))
    mark.set_attr("x", 5)
    assert seen == ["x"]
    mark.animate_to("y", 1.0, duration=100)
    for t in range(0, 120, 10):
        mark.advance(t)
    assert seen == ["x", "y"]
    sub.remove()
    mark.set_attr("x", 1)
    assert seen == ["x", "y"]


def test_notification_count_equals_mutation_count():
    mark = Mark("m", {"x": 0.0})
    count = []
    mark.on_change(lambda m, n: count.append(1))
    k = 0
    for i in range(30):
        if i % 3 == 0:
            mark.set_attr("x", i)
        elif i % 3 == 1:
            mark.animate_to("x", float(i), duration=5)
        else:
            mark.animate("x", lambda: 1.0, duration=5)
        k += 1
        mark.advance(i)
    assert len(count) == k


def test_attribute_cannot_join_two_marks():
    shared = Attribute(1.0)
    Mark("a", {"x": shared})
    with pytest.raises(ValueError):
        Mark("b", {"x": shared})


def test_preloadable_flag_and_preload():
    mark = Mark("m", {"x": 0.0}, preloadable=["x"])
    mark.animate_to("x", 10.0, duration=1000)
    assert mark.preload("x") == (0.0, 10.0, 0.0, 1000.0)


def test_represented_is_opaque():
    datum = object()
    mark = Mark("m", {"x": 1}, represented=datum)
    assert mark.represented is datum


def test_computed_attribute_in_animating_check():
    mark = Mark("m", {"x": Computed(lambda: 3)})
    assert not mark.animating
    mark.animate_to("x", 5, duration=10)
    assert mark.animating


def test_first_advance_of_plain_mark_matches_general_path():
    fresh = Mark("a", {"x": 1.0, "s": "label"})
    assert fresh.advance(5) is True
    assert fresh.advance(6) is False
    # an attribute advanced on its own first: nothing left to report
    m = Mark("b", {"x": 1.0})
    m.attribute("x").advance(5)
    assert m.advance(5) is False
    # a mutation before the first advance takes the general path
    m2 = Mark("c", {"x": 1.0})
    m2.animate_to("x", 3.0, duration=10)
    assert m2.advance(5) is True and m2.attr("x") == 2.0
    with pytest.raises(TimeRegressionError):
        fresh.attribute("x").advance(1)
