"""Retained-mode state for animated, interactive data graphics.

Marks hold animatable attributes; render groups advance them with dirty
tracking; staging choreographs entry and exit; a spatial hash answers
hit tests; a viewport transform animates pan and zoom.
"""

from .attribute import (
    Animation,
    AnimationSpec,
    Attribute,
    CompletionSignal,
    Computed,
    Phase,
    Preload,
    SignalStatus,
    Static,
    reconstruct,
)
from .clock import FrameClock, WallClock
from .easing import (
    default_interpolator,
    ease_in_cubic,
    ease_in_out_cubic,
    ease_out_cubic,
    easing_names,
    evaluate_easing,
    get_easing,
    get_interpolator,
    interpolate_discrete,
    interpolate_numeric,
    linear,
    register_easing,
    register_interpolator,
)
from .errors import (
    DuplicateError,
    IllegalTransitionError,
    StagingError,
    TimeRegressionError,
    UnknownAttributeError,
    UnknownMarkError,
)
from .mark import Mark, Subscription
from .position_map import PositionMap
from .render_context import RenderContext
from .render_group import MarkRenderGroup
from .scales import ViewportTransform, momentary_position, specified_position
from .staging import LEGAL_TRANSITIONS, StageState, StagingConfig

__version__ = "0.1.0"

__all__ = [
    "Animation",
    "AnimationSpec",
    "Attribute",
    "CompletionSignal",
    "Computed",
    "DuplicateError",
    "FrameClock",
    "IllegalTransitionError",
    "LEGAL_TRANSITIONS",
    "Mark",
    "MarkRenderGroup",
    "Phase",
    "PositionMap",
    "Preload",
    "RenderContext",
    "SignalStatus",
    "StageState",
    "StagingConfig",
    "StagingError",
    "Static",
    "Subscription",
    "TimeRegressionError",
    "UnknownAttributeError",
    "UnknownMarkError",
    "ViewportTransform",
    "WallClock",
    "default_interpolator",
    "ease_in_cubic",
    "ease_in_out_cubic",
    "ease_out_cubic",
    "easing_names",
    "evaluate_easing",
    "get_easing",
    "get_interpolator",
    "interpolate_discrete",
    "interpolate_numeric",
    "linear",
    "momentary_position",
    "reconstruct",
    "register_easing",
    "register_interpolator",
    "specified_position",
]
