# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""Generic utilities, exceptions and the trivial-zero set tags.

.. doctest::
    :hide:

    >>> from zetastair.base import *
    >>> __name__ = "zetastair.base"
"""
import enum
import logging
import math
from typing import Collection, Union

Items = Union[Collection, str, None]

log = logging.getLogger(__name__)


class StaircaseError(Exception):
    """Root of all errors raised by this package."""


class DomainError(StaircaseError, ValueError):
    """An argument lies outside the domain of the function called."""


class PoleError(DomainError):
    """Evaluation exactly at a pole (e.g. ``ζ(1)``, ``Γ(0)``, the z-map at ``s = 0``)."""


class RangeError(DomainError):
    """Argument valid mathematically, but outside the documented contract range."""


class SymmetryError(DomainError):
    """A matrix expected to be symmetric is not, within tolerance."""


class AmbiguityError(StaircaseError):
    """A sign cannot be decided because the value is too close to zero."""


class NoSignChangeError(StaircaseError, ValueError):
    """A root-bracket has no sign change at its ends."""


class ConvergenceError(StaircaseError, ArithmeticError):
    """An iteration exhausted its budget before meeting its tolerance."""


class CorruptCacheError(StaircaseError):
    """
    The persistent zero-cache cannot be trusted.

    The message always ends with the recovery instruction (delete & rebuild).
    """


class SetTag(enum.Enum):
    """
    Which set of trivial zeros on the critical line.

    - ``FIRST``: the levels ``<N(t)> = n`` (zeros of ``Im ζ`` alone, ~ Gram points)
    - ``SECOND``: the levels ``<N(t)> = n - 1/2`` (zeros of ``Re ζ`` alone)

    >>> SetTag.parse("second")
    <SetTag.SECOND: 'second'>
    >>> SetTag.FIRST.level_offset, SetTag.SECOND.level_offset
    (0.0, 0.5)
    """

    FIRST = "first"
    SECOND = "second"

    @property
    def level_offset(self) -> float:
        """How much the staircase level is lowered for this set."""
        return 0.0 if self is SetTag.FIRST else 0.5

    @classmethod
    def parse(cls, value) -> "SetTag":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(
                f"Unknown trivial-zero set {value!r}, expected one of: "
                f"{[m.value for m in cls]}"
            ) from None


def check_finite(value: float, what: str) -> float:
    """
    Scream if `value` is NaN/Inf, return it otherwise.

    >>> check_finite(1.5, "x")
    1.5
    >>> check_finite(float("nan"), "x")
    Traceback (most recent call last):
    zetastair.base.DomainError: Non-finite x: nan
    """
    if not math.isfinite(value):
        raise DomainError(f"Non-finite {what}: {value}")
    return value


def check_int(n, argname: str, minimum: int) -> int:
    """
    Accept integral numbers (including integral floats) not below `minimum`.

    >>> check_int(3.0, "n", 1)
    3
    >>> check_int(0, "n", 1)
    Traceback (most recent call last):
    zetastair.base.DomainError: Expected integer n >= 1, got: 0
    """
    try:
        ni = int(n)
        ok = ni == n
    except (TypeError, ValueError, OverflowError):
        ok = False
    if not ok or ni < minimum:
        raise DomainError(f"Expected integer {argname} >= {minimum}, got: {n!r}")
    return ni


def astuple(i, argname, allowed_types=tuple):
    """
    Convert iterables (except strings) or wrap a scalar value into a tuple.

    :param i:
        `None` is converted into an empty tuple;
        empty `allowed_types` are returned as is.
    :param argname:
        If string, it's used in the exception raised when `i` not an iterable.
        ATTENTION: if `None`, any scalar (non-iterable) `i` is wrapped in a single-item tuple,
        and no exception is ever raised.

    >>> astuple("t_star", "needs")
    ('t_star',)
    >>> astuple(None, "needs")
    ()
    """
    if not i:
        return i if isinstance(i, allowed_types) else ()

    if isinstance(i, str):
        i = (i,)
    else:
        try:
            i = tuple(i)
        except Exception as ex:
            if argname is None:
                return (i,)
            raise ValueError(
                f"Cannot tuple-ize {argname or ''}({i!r}) due to: {ex}"
            ) from None

    return i
