"""Easing curves and value interpolators.

An easing curve maps normalized progress ``u`` in ``[0, 1]`` to eased
progress. Built-in curves hit 0 at ``u = 0`` and 1 at ``u = 1``; custom
curves may overshoot in between. An interpolator maps two endpoint values
and an eased progress to an intermediate value.

Both kinds are looked up by name through small registries, so callers can
add their own::

    register_easing("ease-out-quad", lambda u: 1 - (1 - u) ** 2)
    AnimationSpec(duration=300, easing="ease-out-quad")
"""

from __future__ import annotations

import math
from numbers import Real
from typing import Any, Callable, Optional, Union

EasingCurve = Callable[[float], float]
Interpolator = Callable[[Any, Any, float], Any]


def linear(u: float) -> float:
    return u


def ease_in_cubic(u: float) -> float:
    return u * u * u


def ease_out_cubic(u: float) -> float:
    v = 1.0 - u
    return 1.0 - v * v * v


def ease_in_out_cubic(u: float) -> float:
    if u < 0.5:
        return 4.0 * u * u * u
    v = -2.0 * u + 2.0
    return 1.0 - v * v * v / 2.0


# Array forms evaluate the same expressions in the same order as the
# scalar curves, so results agree bit for bit.
def _linear_array(u):
    return u


def _ease_in_cubic_array(u):
    return u * u * u


def _ease_out_cubic_array(u):
    v = 1.0 - u
    return 1.0 - v * v * v


def _ease_in_out_cubic_array(u):
    import numpy as np

    low = 4.0 * u * u * u
    v = -2.0 * u + 2.0
    high = 1.0 - v * v * v / 2.0
    return np.where(u < 0.5, low, high)


_EASINGS: dict[str, EasingCurve] = {
    "linear": linear,
    "ease-in-cubic": ease_in_cubic,
    "ease-out-cubic": ease_out_cubic,
    "ease-in-out-cubic": ease_in_out_cubic,
}

_ARRAY_FORMS: dict[EasingCurve, Callable] = {
    linear: _linear_array,
    ease_in_cubic: _ease_in_cubic_array,
    ease_out_cubic: _ease_out_cubic_array,
    ease_in_out_cubic: _ease_in_out_cubic_array,
}


def register_easing(name: str, curve: EasingCurve, array_form: Optional[Callable] = None) -> None:
    """Add a named curve.

    ``array_form`` optionally evaluates the curve over a numpy array; it
    lets render groups batch animations using the curve, and must match
    the scalar curve exactly.
    """
    if not callable(curve):
        raise TypeError("easing curve must be callable")
    _EASINGS[name] = curve
    if array_form is not None:
        _ARRAY_FORMS[curve] = array_form


def array_form(curve: EasingCurve) -> Optional[Callable]:
    return _ARRAY_FORMS.get(curve)


def get_easing(curve: Union[str, EasingCurve]) -> EasingCurve:
    """Resolve a curve given by name or pass a callable through."""
    if callable(curve):
        return curve
    try:
        return _EASINGS[curve]
    except KeyError:
        raise KeyError(f"unknown easing curve {curve!r}") from None


def easing_names() -> list[str]:
    return list(_EASINGS)


def evaluate_easing(curve: Union[str, EasingCurve], u: float) -> float:
    """Evaluate ``curve`` at ``u`` after clamping ``u`` into ``[0, 1]``.

    The output is not clamped, so overshooting curves keep their shape.
    """
    if u < 0.0:
        u = 0.0
    elif u > 1.0:
        u = 1.0
    return get_easing(curve)(u)


def interpolate_numeric(v0: float, v1: float, t: float) -> float:
    """Affine interpolation ``v0 + (v1 - v0) * t``.

    Returns ``v1`` itself at ``t == 1`` so finished animations land on
    their target bit-for-bit.

    Raises
    ------
    ValueError
        If either endpoint is NaN or infinite.
    """
    if not (math.isfinite(v0) and math.isfinite(v1)):
        raise ValueError(f"cannot interpolate non-finite endpoints {v0!r}, {v1!r}")
    if t == 1.0:
        return v1
    return v0 + (v1 - v0) * t


def interpolate_discrete(v0: Any, v1: Any, t: float) -> Any:
    """Hold the start value until progress reaches 1, then jump."""
    return v1 if t >= 1.0 else v0


_INTERPOLATORS: dict[str, Interpolator] = {
    "numeric": interpolate_numeric,
    "discrete": interpolate_discrete,
}


def register_interpolator(name: str, fn: Interpolator) -> None:
    if not callable(fn):
        raise TypeError("interpolator must be callable")
    _INTERPOLATORS[name] = fn


def get_interpolator(fn: Union[str, Interpolator]) -> Interpolator:
    if callable(fn):
        return fn
    try:
        return _INTERPOLATORS[fn]
    except KeyError:
        raise KeyError(f"unknown interpolator {fn!r}") from None


def interpolator_names() -> list[str]:
    return list(_INTERPOLATORS)


def default_interpolator(v0: Any, v1: Any) -> Interpolator:
    # Only real numbers interpolate by default; other kinds (strings,
    # colors) hold and snap unless the caller supplies an interpolator.
    if _is_number(v0) and _is_number(v1):
        return interpolate_numeric
    return interpolate_discrete


def _is_number(v: Any) -> bool:
    return isinstance(v, Real) and not isinstance(v, bool)
