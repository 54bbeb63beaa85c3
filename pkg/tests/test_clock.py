import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from markstate import FrameClock, TimeRegressionError, WallClock


def test_fresh_clock_reads_zero():
    assert FrameClock().now() == 0.0


def test_tick_adds_dt():
    clock = FrameClock()
    assert clock.tick(16.667) == 16.667
    assert clock.now() == 16.667


def test_tick_zero_is_identity():
    clock = FrameClock(5.0)
    assert clock.tick(0) == 5.0


def test_three_ticks_sum():
    clock = FrameClock()
    for _ in range(3):
        clock.tick(16.667)
    assert clock.now() == pytest.approx(50.001, abs=1e-9)


def test_now_is_pure():
    clock = FrameClock()
    clock.tick(5)
    assert clock.now() == clock.now() == clock.current_time == 5


@pytest.mark.parametrize("dt", [-1.0, -1e-12, math.nan])
def test_invalid_tick_rejected_and_state_kept(dt):
    clock = FrameClock(10.0)
    with pytest.raises(TimeRegressionError):
        clock.tick(dt)
    assert clock.now() == 10.0


def test_negative_start_rejected():
    with pytest.raises(ValueError):
        FrameClock(-1)


@given(st.lists(st.floats(min_value=0, max_value=1e4), max_size=50))
def test_now_non_decreasing(dts):
    clock = FrameClock()
    last = clock.now()
    for dt in dts:
        clock.tick(dt)
        assert clock.now() >= last
        last = clock.now()


def test_wall_clock_moves_forward():
    clock = WallClock()
    a = clock.now()
    b = clock.now()
    assert 0 <= a <= b
