# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
The mean staircase ``<N(t)>`` of the zeta zeros and its Lambert-W inversion.

The inversion gives the two sets of :term:`trivial zeros` on the critical line:

- ``t*_n``: heights where ``<N(t)> = n`` (zeros of ``Im ζ`` alone, close to Gram points),
- ``t**_n``: heights where ``<N(t)> = n - 1/2`` (zeros of ``Re ζ`` alone).

Also here: averaging defects, the mean gap, the large-``n`` asymptote
and the conformal map ``z = 1 - 1/s`` sending the critical line onto the unit circle.

.. doctest::
    :hide:

    >>> from zetastair.staircase import *
    >>> __name__ = "zetastair.staircase"
"""
import logging
import math
from typing import Iterator, NamedTuple, Tuple

from .base import DomainError, PoleError, SetTag, check_finite, check_int
from .specfun import lambert_w0

log = logging.getLogger(__name__)

TWO_PI = 2 * math.pi
#: The constant term of the mean staircase.
STAIRCASE_OFFSET = 7 / 8
#: Lowest level :func:`inverse_staircase()` accepts (``W`` argument at ``-1/e``).
MIN_LEVEL = STAIRCASE_OFFSET - 1


class TrivialZero(NamedTuple):
    """A height ``t`` where the mean staircase sits on an (half-)integer level."""

    set_tag: SetTag
    index: int
    height: float

    @property
    def level(self) -> float:
        return self.index - self.set_tag.level_offset


class StaircaseLevel(NamedTuple):
    """A (level, height) pair on the mean staircase."""

    level: float
    height: float


def mean_staircase(t: float) -> float:
    """
    ``<N(t)> = (t/2π)(ln(t/2π) − 1) + 7/8``

    >>> round(mean_staircase(2 * math.pi * math.e), 12)
    0.875
    >>> round(mean_staircase(282.4547596), 5)
    127.0
    """
    t = check_finite(float(t), "t")
    if t <= 0:
        raise DomainError(f"Mean staircase needs t > 0, got: {t:g}")
    u = t / TWO_PI
    return u * (math.log(u) - 1) + STAIRCASE_OFFSET


def inverse_staircase(c: float) -> float:
    """
    The height where the mean staircase reaches level `c`: ``2πe·exp(W((c − 7/8)/e))``.

    :raises DomainError:
        if ``c < 7/8 - 1`` (the lowest level of the increasing branch)

    >>> round(inverse_staircase(127), 4)
    282.4548
    >>> inverse_staircase(7 / 8) == 2 * math.pi * math.e
    True
    """
    c = check_finite(float(c), "level")
    arg = (c - STAIRCASE_OFFSET) / math.e
    try:
        w = lambert_w0(arg)
    except DomainError:
        raise DomainError(
            f"Staircase level must be >= {MIN_LEVEL:g}, got: {c:g}"
        ) from None
    return TWO_PI * math.e * math.exp(w)


def staircase_level(c: float) -> StaircaseLevel:
    return StaircaseLevel(float(c), inverse_staircase(c))


def trivial_zero(set_tag, n: int) -> TrivialZero:
    """
    The `n`-th trivial zero of the given set (``n >= 1``).

    >>> z = trivial_zero("first", 128)
    >>> z.set_tag, z.index, round(z.height, 4)
    (<SetTag.FIRST: 'first'>, 128, 284.1045)
    """
    set_tag = SetTag.parse(set_tag)
    n = check_int(n, "n", 1)
    return TrivialZero(set_tag, n, inverse_staircase(n - set_tag.level_offset))


def t_star(n: int) -> float:
    """Height of the `n`-th member of the first set."""
    return trivial_zero(SetTag.FIRST, n).height


def t_star_star(n: int) -> float:
    """Height of the `n`-th member of the second set."""
    return trivial_zero(SetTag.SECOND, n).height


def midpoint_defect(n: int) -> Tuple[float, float]:
    """
    How far the averaging relations between the two sets are from exact.

    :return:
        a pair with ``|(t*_n + t*_{n+1})/2 − <N>⁻¹(n + 1/2)|``
        and ``|(t**_n + t**_{n+1})/2 − t*_n|``;
        both are positive because the staircase is strictly convex.
    """
    n = check_int(n, "n", 2)
    first = abs(0.5 * (t_star(n) + t_star(n + 1)) - inverse_staircase(n + 0.5))
    second = abs(0.5 * (t_star_star(n) + t_star_star(n + 1)) - t_star(n))
    return first, second


def mean_gap(t: float) -> float:
    """
    Mean distance between consecutive trivial zeros around `t`: ``2π / ln(t/2π)``.

    >>> round(mean_gap(2 * math.pi * math.e ** 2) / math.pi, 12)
    1.0
    """
    t = check_finite(float(t), "t")
    if t <= TWO_PI:
        raise DomainError(f"Mean gap needs t > 2π, got: {t:g}")
    return TWO_PI / math.log(t / TWO_PI)


def asymptotic_height(n: int) -> float:
    """
    Leading large-`n` behavior of the trivial zeros, ``2πn / ln n``.

    >>> asymptotic_height(8) == 2 * math.pi * 8 / math.log(8)
    True
    """
    n = check_int(n, "n", 2)
    return TWO_PI * n / math.log(n)


def to_unit_disk(s: complex) -> complex:
    """
    Conformal map ``z = 1 − 1/s``; the critical line lands on ``|z| = 1``.

    >>> to_unit_disk(-2)
    (1.5+0j)
    >>> to_unit_disk(0)
    Traceback (most recent call last):
    zetastair.base.PoleError: The z-map has a pole at s = 0
    """
    s = complex(s)
    check_finite(s.real, "Re s")
    check_finite(s.imag, "Im s")
    if s == 0:
        raise PoleError("The z-map has a pole at s = 0")
    return 1 - 1 / s


def real_zero_images(n_max: int) -> Iterator[Tuple[int, complex]]:
    """
    Images of the classical trivial zeros ``s = −2n`` under :func:`to_unit_disk()`.

    They lie on the real axis at ``1 + 1/(2n)``, accumulating onto ``z = 1``.

    >>> [(n, z.real) for n, z in real_zero_images(2)]
    [(1, 1.5), (2, 1.25)]
    """
    n_max = check_int(n_max, "n_max", 1)
    for n in range(1, n_max + 1):
        yield n, to_unit_disk(-2 * n)
