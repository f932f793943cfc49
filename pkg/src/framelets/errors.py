"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FrameletError(Exception):
    """Base class for all errors raised by :mod:`framelets`."""


class RadicandMismatch(FrameletError):
    """Two nonzero filters carry different square-free radical factors."""


class NotSquare(FrameletError):
    pass


class NotExpansive(FrameletError):
    pass


class MissingCoset(FrameletError):
    pass


class NotInterpolatory(FrameletError):
    pass


class NotNormalized(FrameletError):
    """The filter does not sum to one."""


class InsufficientVanishingMoments(FrameletError):
    pass


class NoSolutionInBox(FrameletError):
    """An exact linear system had no solution on the allowed support boxes."""


class BadOrderSplit(FrameletError):
    pass


class OrderBudgetExceeded(FrameletError):
    pass


class NotHermitian(FrameletError):
    pass


class OddSumRuleOrder(FrameletError):
    pass


class NotCompatible(FrameletError):
    """The dilation matrix does not normalize the symmetry group."""


class ConditionNotMet(FrameletError):
    pass


class Infeasible(FrameletError):
    """The requested design constraints have no common solution."""


class ConstraintViolation(FrameletError):
    pass


class LevelMismatch(FrameletError):
    pass


class UnsupportedFormat(FrameletError, OSError):
    pass
