"""Exception types raised on contract violations."""

from __future__ import annotations


class TimeRegressionError(ValueError):
    """An advance or tick asked to move time backwards."""


class UnknownAttributeError(KeyError):
    """A mark was asked for an attribute it does not hold."""


class UnknownMarkError(KeyError):
    """A group lookup named a mark id that cannot be resolved."""


class DuplicateError(ValueError):
    """A mark id or attribute name was registered twice."""


class StagingError(RuntimeError):
    """A staging operation was requested on a group without staging."""


class IllegalTransitionError(RuntimeError):
    """The stage state machine was asked for a transition it does not allow."""
