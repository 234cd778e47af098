# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
Gram points, Gram's law, and its violations (:term:`istantons`).

At a Gram point ``g_n`` (``θ(g_n) = nπ``) the zeta value ``ζ(1/2 + i·g_n) = (−1)^n Z(g_n)``
is real; Gram's law says it is positive.  When it is negative the phase ``π·S(t)``
has picked an odd multiple of ``π``, the sign of that jump being the event's ``phase_sign``.

.. doctest::
    :hide:

    >>> from zetastair.gram import *
    >>> __name__ = "zetastair.gram"
"""
import bisect
import logging
import math
from typing import List, NamedTuple, Optional

import numpy as np
from boltons.iterutils import chunked
from scipy import optimize

from .base import AmbiguityError, RangeError, check_int
from .config import get_rs_min_height, get_workers
from .jetsam import save_jetsam
from .specfun import theta_exact
from .staircase import t_star
from .zetaline import (
    ZETA_MAX_HEIGHT,
    CriticalSample,
    _check_height,
    critical_sample,
    z_values,
    zero_heights_upto,
)

log = logging.getLogger(__name__)

#: Below this ``|Z(g_n)|`` the sign (so Gram's law) is undecidable.
GRAM_AMBIGUITY = 1e-9
#: Highest height istanton scans are contracted for.
ISTANTON_MAX_HEIGHT = 2000.0
_GRAM_BRACKET = 0.25
_INDICES_PER_SHARD = 128


class GramPoint(NamedTuple):
    index: int
    height: float


class IstantonEvent(NamedTuple):
    """
    A maximal run of consecutive Gram-law violations.

    Located at the first violating Gram point of the run; `width` is its distance
    from the nearest true zero.
    """

    gram_index: int
    center_t: float
    width: float
    phase_sign: int
    violations: int = 1


def gram_point(n: int) -> GramPoint:
    """
    The `n`-th Gram point, root of ``θ(t) − nπ`` next to ``t*_{n+1}``.

    The two differ by the ``1/(48t)`` term of the asymptotic theta, ~``1/(24 t ln(t/2π))``.

    >>> round(gram_point(0).height, 4)
    17.8456
    >>> round(gram_point(126).height, 3)
    282.455
    """
    n = check_int(n, "n", 0)
    guess = t_star(n + 1)
    target = n * math.pi
    height = optimize.brentq(
        lambda t: theta_exact(t) - target,
        guess - _GRAM_BRACKET,
        guess + _GRAM_BRACKET,
        xtol=1e-13,
    )
    return GramPoint(n, height)


def _gram_sign(n: int, z: float) -> bool:
    if abs(z) < GRAM_AMBIGUITY:
        raise AmbiguityError(f"|Z(g_{n})| = {abs(z):g} too small to decide Gram's law.")
    return (-1) ** n * z > 0


def gram_law_holds(n: int) -> bool:
    """
    Whether ``(−1)^n Z(g_n) > 0``.

    :raises AmbiguityError:
        if ``|Z(g_n)| < 1e-9``

    >>> gram_law_holds(125), gram_law_holds(126)
    (True, False)
    """
    g = gram_point(n)
    z = z_values([g.height], get_rs_min_height())[0]
    return _gram_sign(g.index, z)


def _gram_shard(task) -> List[int]:
    indices, rs_min_height = task
    heights = [gram_point(n).height for n in indices]
    zs = z_values(heights, rs_min_height)
    return [n for n, z in zip(indices, zs) if not _gram_sign(n, z)]


def gram_violations(t_max: float, *, workers: Optional[int] = None) -> List[int]:
    """
    All Gram indices with ``g_n <= t_max`` where Gram's law fails, ascending.

    Indices are sharded in contiguous chunks (on a process pool if `workers` > 1)
    and merged in order.
    """
    t_max = _check_height(t_max, "t_max")
    if t_max > ISTANTON_MAX_HEIGHT:
        raise RangeError(
            f"Istanton scans contracted up to t = {ISTANTON_MAX_HEIGHT:g}, got: {t_max:g}"
        )
    if workers is None:
        workers = get_workers()
    ## θ increases past the first Gram point: g_n <= t_max iff nπ <= θ(t_max).
    n_max = math.floor(theta_exact(t_max) / math.pi) if t_max > 10 else -1
    rs_min_height = get_rs_min_height()
    size = max(_INDICES_PER_SHARD, math.ceil((n_max + 1) / max(workers, 1)))
    tasks = [(idx, rs_min_height) for idx in chunked(range(n_max + 1), size)]

    try:
        if workers > 1 and len(tasks) > 1:
            from multiprocessing import Pool

            with Pool(min(workers, len(tasks))) as pool:
                results = pool.map(_gram_shard, tasks)
        else:
            results = [_gram_shard(task) for task in tasks]
    except Exception as ex:
        save_jetsam(ex, locals(), "t_max", "n_max", "workers")
        raise

    return [n for shard in results for n in shard]


def _group_runs(indices: List[int]) -> List[List[int]]:
    """
    >>> _group_runs([126, 134, 135, 195])
    [[126], [134, 135], [195]]
    """
    breaks = [i for i, (a, b) in enumerate(zip(indices, indices[1:]), 1) if b != a + 1]
    return [indices[i:j] for i, j in zip([0, *breaks], [*breaks, len(indices)]) if i < j]


def nearest_zero_distance(t: float) -> float:
    """Distance from `t` to the closest true zero."""
    heights = zero_heights_upto(min(t + 5, ZETA_MAX_HEIGHT))
    k = bisect.bisect_left(heights, t)
    near = heights[max(k - 1, 0) : k + 1]
    return min(abs(h - t) for h in near)


def phase_sign(n: int) -> int:
    """
    Sign of the phase step ``S(g_n) = N(g_n) − n − 1`` at a violating Gram point.

    ``S(g_n)`` is an odd integer there, so the sign is never zero.
    """
    from .zetaline import count_zeros

    g = gram_point(n)
    s_fluct = count_zeros(g.height) - n - 1
    return 1 if s_fluct > 0 else -1


def scan_istantons(t_max: float, *, workers: Optional[int] = None) -> List[IstantonEvent]:
    """
    Group the Gram-law violations up to `t_max` into :class:`IstantonEvent` runs.

    >>> ev = scan_istantons(290)
    >>> [(e.gram_index, round(e.width, 3), e.violations) for e in ev]
    [(126, 0.01, 1)]
    """
    violations = gram_violations(t_max, workers=workers)
    events = []
    for run in _group_runs(violations):
        first = run[0]
        g = gram_point(first)
        events.append(
            IstantonEvent(
                gram_index=first,
                center_t=g.height,
                width=nearest_zero_distance(g.height),
                phase_sign=phase_sign(first),
                violations=len(run),
            )
        )
    log.info(
        "Up to t=%s: %i Gram-law violations in %i istanton events.",
        t_max,
        len(violations),
        len(events),
    )
    return events


def event_trace(
    event: IstantonEvent, span: Optional[float] = None, samples: int = 41
) -> List[CriticalSample]:
    """
    Critical-line samples around an event, showing the step of ``S(t)`` and ``Im ζ``.

    :param span:
        half-width of the window; default 3 times the event width, at least 0.05
    """
    samples = check_int(samples, "samples", 2)
    if span is None:
        span = max(3 * event.width, 0.05)
    ts = np.linspace(event.center_t - span, event.center_t + span, samples)
    return [critical_sample(t) for t in ts]
