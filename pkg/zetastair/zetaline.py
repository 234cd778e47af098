# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
ζ on and around the critical line: ``ζ(s)``, ``ξ(s)``, ``Z(t)``, ``S(t)``, ``N(t)``
and the true zeros.

- :func:`zeta_em()` (Euler-Maclaurin) is the reference evaluator;
- :func:`z_function()` switches to the Riemann-Siegel expansion
  (main sum plus corrections ``C0..C4``) above :func:`.config.get_rs_min_height()`;
- zeros are located by scanning ``Z`` on a grid finer than the local mean gap,
  refining cells around suspicious minima of ``|Z|``, and polishing roots
  with :func:`scipy.optimize.brentq()`;
- scans are split in contiguous shards of grid cells, optionally on a process pool,
  and merged in order, so the result never depends on the number of workers.

.. doctest::
    :hide:

    >>> from zetastair.zetaline import *
    >>> __name__ = "zetastair.zetaline"
"""
import bisect
import logging
import math
from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from boltons.iterutils import chunked, pairwise
from scipy import optimize, special

from .base import (
    AmbiguityError,
    DomainError,
    NoSignChangeError,
    PoleError,
    RangeError,
    check_finite,
    check_int,
)
from .config import get_rs_min_height, get_workers, is_debug
from .jetsam import save_jetsam
from .specfun import log_gamma_complex, theta_exact
from .staircase import TWO_PI, inverse_staircase, mean_gap, mean_staircase

log = logging.getLogger(__name__)

#: Highest ``|Im s|`` (and height ``t``) evaluations are contracted for.
ZETA_MAX_HEIGHT = 5000.0
#: No zero lies below this height; all counting scans start here.
SCAN_START = 10.0
#: Zero tables are cached in multiples of this height.
ZERO_TABLE_QUANTUM = 50.0
#: Subdivisions of a grid cell flanking a suspicious minimum of ``|Z|``.
REFINE_FACTOR = 8
#: An unresolved same-sign minimum of ``|Z|`` below this is reported ambiguous.
AMBIGUOUS_Z = 1e-7
ROOT_XTOL = 1e-11
#: Below this many grid cells a scan stays in-process.
MIN_CELLS_PER_SHARD = 256

_EM_TERMS = 20
_BERNOULLI_COEFS = tuple(
    float(special.bernoulli(2 * _EM_TERMS)[2 * k] / special.factorial(2 * k))
    for k in range(1, _EM_TERMS + 1)
)


class CriticalSample(NamedTuple):
    """Everything known at one height ``t`` on the critical line."""

    t: float
    zeta_re: float
    zeta_im: float
    z_value: float
    theta: float
    s_fluct: float
    count: int


class TrueZero(NamedTuple):
    """The `index`-th nontrivial zero ``1/2 + i·height`` (indexed from 1 at 14.13...)."""

    index: int
    height: float


def zeta_em(s: complex) -> complex:
    """
    ``ζ(s)`` by Euler-Maclaurin summation with 20 Bernoulli corrections.

    The cut-off ``N ~ (|s| + 40) / 2`` keeps every correction ratio below ``1/π``.

    :raises PoleError:
        at ``s = 1``
    :raises RangeError:
        if ``Re s <= -1`` or ``|Im s| > 5000``

    >>> round(zeta_em(2).real, 12) == round(math.pi ** 2 / 6, 12)
    True
    >>> zeta_em(0).real
    -0.5
    >>> zeta_em(1)
    Traceback (most recent call last):
    zetastair.base.PoleError: ζ has a pole at s = 1
    """
    s = complex(s)
    check_finite(s.real, "Re s")
    check_finite(s.imag, "Im s")
    if s == 1:
        raise PoleError("ζ has a pole at s = 1")
    if s.real <= -1 or abs(s.imag) > ZETA_MAX_HEIGHT:
        raise RangeError(
            f"ζ evaluated only for Re s > -1 and |Im s| <= {ZETA_MAX_HEIGHT:g}, got: {s}"
        )

    N = max(2, math.ceil((abs(s) + 2 * _EM_TERMS) / 2))
    n = np.arange(1, N, dtype=float)
    head = complex(np.exp(-s * np.log(n)).sum())

    log_n = math.log(N)
    n_pow = np.exp(-s * log_n)  # N^-s
    tail = N * n_pow / (s - 1) + 0.5 * n_pow
    g = s * n_pow / N
    inv_n2 = 1.0 / (N * N)
    for k, coef in enumerate(_BERNOULLI_COEFS, 1):
        if k > 1:
            g *= (s + 2 * k - 3) * (s + 2 * k - 2) * inv_n2
        tail += coef * g

    return head + complex(tail)


## Riemann-Siegel remainder: Taylor derivatives of
#  Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp)  (entire)
#  by the trapezoid rule on a circle around `p`, nodes kept off the real axis.
#
_RS_NODES = 64
_RS_RADIUS = 0.5
_RS_PHI = 2 * math.pi * (np.arange(_RS_NODES) + 0.5) / _RS_NODES
_RS_CIRCLE = _RS_RADIUS * np.exp(1j * _RS_PHI)
_RS_ORDERS = np.arange(13)
_RS_FOURIER = np.exp(-1j * np.outer(_RS_PHI, _RS_ORDERS))
_RS_SCALE = special.factorial(_RS_ORDERS) / _RS_RADIUS**_RS_ORDERS / _RS_NODES


def _rs_psi(p):
    return np.cos(2 * math.pi * (p * p - p - 1 / 16)) / np.cos(2 * math.pi * p)


def _rs_corrections(p: np.ndarray) -> Tuple[np.ndarray, ...]:
    """The coefficients ``C0..C4`` of the remainder series, per `p`."""
    d = (_rs_psi(p[:, None] + _RS_CIRCLE[None, :]) @ _RS_FOURIER).real * _RS_SCALE
    d = d.T
    pi2 = math.pi**2
    pi4, pi6, pi8 = pi2**2, pi2**3, pi2**4
    c0 = d[0]
    c1 = -d[3] / (96 * pi2)
    c2 = d[2] / (64 * pi2) + d[6] / (18432 * pi4)
    c3 = -d[1] / (64 * pi2) - d[5] / (3840 * pi4) - d[9] / (5308416 * pi6)
    c4 = (
        d[0] / (128 * pi2)
        + 19 * d[4] / (24576 * pi4)
        + 11 * d[8] / (5898240 * pi6)
        + d[12] / (2038431744 * pi8)
    )
    return c0, c1, c2, c3, c4


def riemann_siegel_z(t) -> np.ndarray:
    """
    Vectorized Riemann-Siegel ``Z(t)``, without range checks.

    Within 1e-6 of Euler-Maclaurin from ``t = 50`` up.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    u = t / TWO_PI
    a = np.sqrt(u)
    N = np.floor(a).astype(int)
    p = a - N

    theta = theta_exact(t)
    theta = np.atleast_1d(theta)
    n = np.arange(1, max(int(N.max()), 1) + 1, dtype=float)
    terms = np.cos(theta[:, None] - t[:, None] * np.log(n)[None, :]) / np.sqrt(n)
    terms[n[None, :] > N[:, None]] = 0.0
    main = 2 * terms.sum(axis=1)

    c0, c1, c2, c3, c4 = _rs_corrections(p)
    inv_a = 1 / a
    series = c0 + inv_a * (c1 + inv_a * (c2 + inv_a * (c3 + inv_a * c4)))
    sign = np.where(N % 2 == 1, 1.0, -1.0)

    return main + sign * u**-0.25 * series


def _check_height(t: float, what="t") -> float:
    t = check_finite(float(t), what)
    if not 0 < t <= ZETA_MAX_HEIGHT:
        raise RangeError(f"Height {what} must lie in (0, {ZETA_MAX_HEIGHT:g}], got: {t:g}")
    return t


def zeta_on_line(t: float) -> complex:
    """``ζ(1/2 + it)`` through :func:`zeta_em()`."""
    return zeta_em(complex(0.5, _check_height(t)))


def _z_em(t: float) -> float:
    zeta = zeta_em(complex(0.5, t))
    theta = theta_exact(t)
    rotated = complex(math.cos(theta), math.sin(theta)) * zeta
    if abs(rotated.imag) > 1e-8 * max(1.0, abs(zeta)):
        log.warning(
            "Z(%s) not real after rotation (Im: %g); θ or ζ inaccurate.", t, rotated.imag
        )
    return rotated.real


def z_function(t: float, rs_min_height: Optional[float] = None) -> float:
    """
    The real-valued ``Z(t) = e^{iθ(t)} ζ(1/2 + it)``.

    :param rs_min_height:
        from this height up use the Riemann-Siegel expansion;
        default :func:`.config.get_rs_min_height()`.
    :raises RangeError:
        if `t` outside ``(0, 5000]``

    >>> z_function(279.0) * z_function(279.5) < 0
    True
    """
    t = _check_height(t)
    if rs_min_height is None:
        rs_min_height = get_rs_min_height()
    if t >= rs_min_height:
        return float(riemann_siegel_z(t)[0])
    return _z_em(t)


def z_values(ts: Sequence[float], rs_min_height: float) -> np.ndarray:
    """Vectorized :func:`z_function()` for heights already range-checked."""
    ts = np.asarray(ts, dtype=float)
    out = np.empty_like(ts)
    fast = ts >= rs_min_height
    if fast.any():
        out[fast] = riemann_siegel_z(ts[fast])
    for i in np.flatnonzero(~fast):
        out[i] = _z_em(float(ts[i]))
    return out


def xi(s: complex) -> complex:
    """
    The completed ``ξ(s) = ½ s(s−1) π^{−s/2} Γ(s/2) ζ(s)``, entire and ``ξ(s) = ξ(1−s)``.

    >>> xi(1), xi(0)
    ((0.5+0j), (0.5+0j))
    >>> abs(xi(0.5).imag) < 1e-15
    True
    """
    s = complex(s)
    if s in (0, 1):
        return complex(0.5)
    gamma_part = np.exp(log_gamma_complex(s / 2) - s / 2 * math.log(math.pi))
    return complex(0.5 * s * (s - 1) * gamma_part * zeta_em(s))


def berry_keating(s: complex) -> complex:
    """
    ``π^{s/2}/Γ(s/2) + π^{(1−s)/2}/Γ((1−s)/2)``, manifestly symmetric under ``s → 1−s``.

    On the critical line its zeros are the roots of ``cos θ(t)``,
    see :func:`berry_keating_roots()`.

    :raises PoleError:
        where ``s/2`` or ``(1−s)/2`` is a pole of Gamma

    >>> z = berry_keating(0.5)
    >>> abs(z - 2 * math.pi ** 0.25 / math.gamma(0.25)) < 1e-14
    True
    """
    s = complex(s)
    log_pi = math.log(math.pi)

    def half(w):
        return np.exp(w / 2 * log_pi - log_gamma_complex(w / 2))

    return complex(half(s) + half(1 - s))


def _scan_grid(t_lo: float, t_hi: float) -> np.ndarray:
    """Grid from `t_lo` with step ``min(0.5, mean_gap/8)``, its last node clipped at `t_hi`."""
    nodes = [t_lo]
    t = t_lo
    while t < t_hi:
        step = min(0.5, mean_gap(t) / 8) if t > 2 * TWO_PI else 0.5
        t = min(t + step, t_hi)
        nodes.append(t)
    return np.array(nodes)


def _is_suspicious(z: np.ndarray, i: int) -> bool:
    """Same-sign local minimum of ``|Z|``: a close pair of zeros may hide there."""
    if not 0 < i < len(z) - 1:
        return False
    a, b, c = z[i - 1], z[i], z[i + 1]
    return a * b > 0 and b * c > 0 and abs(b) < abs(a) and abs(b) < abs(c)


def _sign_change_brackets(ts: np.ndarray, zs: np.ndarray) -> List[Tuple[float, float]]:
    brackets = []
    for (ta, za), (tb, zb) in pairwise(zip(ts, zs)):
        if za == 0:
            brackets.append((ta, ta))
        elif za * zb < 0:
            brackets.append((ta, tb))
    return brackets


def _scan_shard(task) -> List[float]:
    """
    Roots in the cells ``[grid[k], grid[k+1]]`` for ``k`` in ``[first_cell, last_cell)``.

    The shard sees one extra grid node each side, to judge local minima on its borders.
    """
    grid, first_cell, last_cell, rs_min_height = task
    lo = max(first_cell - 1, 0)
    hi = min(last_cell + 2, len(grid))
    ts = grid[lo:hi]
    zs = z_values(ts, rs_min_height)

    def f(x):
        return z_values([x], rs_min_height)[0]

    roots = []
    cell = None
    try:
        for cell in range(first_cell, last_cell):
            i = cell - lo
            ta, tb = ts[i], ts[i + 1]
            if _is_suspicious(zs, i) or _is_suspicious(zs, i + 1):
                sub_ts = np.linspace(ta, tb, REFINE_FACTOR + 1)
                sub_zs = z_values(sub_ts, rs_min_height)
                sub_zs[0], sub_zs[-1] = zs[i], zs[i + 1]
                if is_debug():
                    log.debug("Refined cell [%s, %s]: %s", ta, tb, sub_zs)
                brackets = _sign_change_brackets(sub_ts, sub_zs)
                if not brackets:
                    k = int(np.argmin(np.abs(sub_zs)))
                    if 0 < k < REFINE_FACTOR and abs(sub_zs[k]) < AMBIGUOUS_Z:
                        raise AmbiguityError(
                            f"Cannot resolve |Z({sub_ts[k]})| = {sub_zs[k]:g}"
                            " after maximal refinement."
                        )
            else:
                brackets = _sign_change_brackets(ts[i : i + 2], zs[i : i + 2])

            for a, b in brackets:
                roots.append(a if a == b else optimize.brentq(f, a, b, xtol=ROOT_XTOL))
    except Exception as ex:
        save_jetsam(ex, locals(), "cell", "first_cell", "last_cell", "rs_min_height")
        raise

    return roots


def find_zeros(
    t_lo: float,
    t_hi: float,
    *,
    workers: Optional[int] = None,
    rs_min_height: Optional[float] = None,
) -> List[float]:
    """
    Heights of all zeros of ``Z`` in ``[t_lo, t_hi]``, ascending.

    :param workers:
        shard the scan grid on a process pool of this size;
        default :func:`.config.get_workers()`, ``1`` scans in-process.
    :raises AmbiguityError:
        if a refined cell still hides a near-zero minimum of ``|Z|``

    >>> [round(t, 5) for t in find_zeros(14, 22)]
    [14.13473, 21.02204]
    """
    t_lo = _check_height(t_lo, "t_lo")
    t_hi = _check_height(t_hi, "t_hi")
    if t_hi < t_lo:
        raise DomainError(f"Empty height range [{t_lo:g}, {t_hi:g}]")
    if rs_min_height is None:
        rs_min_height = get_rs_min_height()
    if workers is None:
        workers = get_workers()

    grid = _scan_grid(t_lo, t_hi)
    ncells = len(grid) - 1
    shard_size = max(MIN_CELLS_PER_SHARD, math.ceil(ncells / max(workers, 1)))
    tasks = [
        (grid, cells[0], cells[-1] + 1, rs_min_height)
        for cells in chunked(range(ncells), shard_size)
    ]

    try:
        if workers > 1 and len(tasks) > 1:
            from multiprocessing import Pool

            with Pool(min(workers, len(tasks))) as pool:
                results = pool.map(_scan_shard, tasks)
        else:
            results = [_scan_shard(task) for task in tasks]
    except Exception as ex:
        save_jetsam(ex, locals(), "t_lo", "t_hi", "workers", ncells="ncells")
        raise

    roots = [r for shard in results for r in shard]
    log.info(
        "Scanned [%s, %s] over %i cells in %i shards: %i zeros.",
        t_lo,
        t_hi,
        ncells,
        len(tasks),
        len(roots),
    )
    return roots


@lru_cache(maxsize=8)
def _zero_table(bound: float) -> Tuple[float, ...]:
    return tuple(find_zeros(SCAN_START, bound))


def zero_heights_upto(t_max: float) -> Tuple[float, ...]:
    """Heights of all zeros from the first one up to (at least) `t_max`, memoized."""
    t_max = _check_height(t_max, "t_max")
    if t_max <= SCAN_START:
        return ()
    q = ZERO_TABLE_QUANTUM
    bound = min(SCAN_START + math.ceil((t_max - SCAN_START) / q) * q, ZETA_MAX_HEIGHT)
    return _zero_table(bound)


def true_zeros(t_max: float) -> List[TrueZero]:
    """The :class:`TrueZero` records up to `t_max`, indexed from 1."""
    return [
        TrueZero(i, t)
        for i, t in enumerate(zero_heights_upto(t_max), 1)
        if t <= t_max
    ]


def first_zeros(n: int) -> List[TrueZero]:
    """The first `n` true zeros."""
    n = check_int(n, "n", 1)
    t_max = inverse_staircase(n + 3) + 2
    zeros = true_zeros(t_max)
    if len(zeros) < n:
        raise RangeError(f"Only {len(zeros)} zeros found below {t_max:g}, asked {n}")
    return zeros[:n]


def count_zeros(t: float) -> int:
    """
    ``N(t)``: the number of zeros with height in ``(0, t]``.

    >>> count_zeros(280), count_zeros(285)
    (126, 129)
    """
    t = _check_height(t)
    return bisect.bisect_right(zero_heights_upto(t), t)


def find_zero(bracket_lo: float, bracket_hi: float) -> TrueZero:
    """
    Polish the zero of ``Z`` inside a sign-changing bracket to ``1e-11``.

    The index is the number of zeros up to the root.

    :raises NoSignChangeError:
        if ``Z`` has the same sign at both ends

    >>> z = find_zero(282.3, 282.6)
    >>> z.index, round(z.height, 5)
    (127, 282.46511)
    """
    lo = _check_height(bracket_lo, "bracket_lo")
    hi = _check_height(bracket_hi, "bracket_hi")
    lo, hi = min(lo, hi), max(lo, hi)
    rs_min = get_rs_min_height()
    z_lo, z_hi = z_function(lo, rs_min), z_function(hi, rs_min)
    if z_lo == 0:
        root = lo
    elif z_hi == 0:
        root = hi
    elif z_lo * z_hi > 0:
        raise NoSignChangeError(
            f"Z has the same sign at {lo:g} ({z_lo:g}) and {hi:g} ({z_hi:g})"
        )
    else:
        root = optimize.brentq(
            lambda x: z_function(x, rs_min), lo, hi, xtol=ROOT_XTOL
        )
    heights = zero_heights_upto(root + 1)
    ## Index from the table, nearest to the polished root.
    k = bisect.bisect_right(heights, root + 1e-6)
    return TrueZero(k, root)


def s_fluctuation(t: float) -> float:
    """
    ``S(t) = N(t) − θ(t)/π − 1``, the fluctuation of the zero count.

    Defined between zeros; continuous there, jumps by +1 across each zero.
    """
    t = _check_height(t)
    return count_zeros(t) - theta_exact(t) / math.pi - 1


def critical_sample(t: float) -> CriticalSample:
    """
    All critical-line quantities at `t` in one record.

    >>> s = critical_sample(100)
    >>> s.count, round(s.count - s.theta / math.pi - 1 - s.s_fluct, 12)
    (29, 0.0)
    """
    t = _check_height(t)
    zeta = zeta_on_line(t)
    theta = theta_exact(t)
    count = count_zeros(t)
    z = (complex(math.cos(theta), math.sin(theta)) * zeta).real
    return CriticalSample(
        t=t,
        zeta_re=zeta.real,
        zeta_im=zeta.imag,
        z_value=z,
        theta=theta,
        s_fluct=count - theta / math.pi - 1,
        count=count,
    )


def psi(t: float, include_arg: bool = False) -> float:
    """
    The phase of the quantization condition ``cos Ψ(t) = 0``.

    ``(t/2)(ln(t/2π) − 1) − π/8``, plus ``π·S(t)`` when `include_arg`.
    The smooth part equals ``π(<N(t)> − 1)``, so its cosine vanishes on the second set.

    >>> from zetastair.staircase import t_star
    >>> round(psi(t_star(10)) / math.pi, 9)
    9.0
    """
    t = check_finite(float(t), "t")
    if t <= TWO_PI:
        raise DomainError(f"Ψ needs t > 2π, got: {t:g}")
    smooth = 0.5 * t * (math.log(t / TWO_PI) - 1) - math.pi / 8
    if include_arg:
        smooth += math.pi * s_fluctuation(t)
    return smooth


def berry_keating_roots(n_lo: int, n_hi: int) -> List[float]:
    """
    Zeros of :func:`berry_keating()` on the critical line with indices `n_lo`..`n_hi`.

    There the expression is ``2|π^{s/2}/Γ(s/2)|·cos θ(t)``; the `n`-th root solves
    ``θ(t) = π(n − 3/2)`` and sits within ``~1/(24 t ln(t/2π))`` of ``t**_n``.
    """
    from .staircase import t_star_star

    n_lo = check_int(n_lo, "n_lo", 1)
    n_hi = check_int(n_hi, "n_hi", n_lo)
    roots = []
    for n in range(n_lo, n_hi + 1):
        guess = t_star_star(n)
        target = math.pi * (n - 1.5)
        roots.append(
            optimize.brentq(
                lambda x: theta_exact(x) - target,
                guess - 0.5,
                guess + 0.5,
                xtol=1e-13,
            )
        )
    return roots


def fractional_statistics(n_max: int) -> float:
    """
    Mean of ``frac(<N(t_n)>)`` over the first `n_max` true zeros (``50 <= n_max <= 1000``).

    Near 1/2 if true zeros sat midway between trivial levels; it comes out slightly lower.
    """
    n_max = check_int(n_max, "n_max", 50)
    if n_max > 1000:
        raise RangeError(f"Fractional statistics contracted for n_max <= 1000, got: {n_max}")
    fracs = fractional_parts(n_max)
    return float(np.mean(fracs))


def fractional_parts(n_max: int) -> np.ndarray:
    """``frac(<N(t_n)>)`` for the first `n_max` true zeros."""
    levels = np.array([mean_staircase(z.height) for z in first_zeros(n_max)])
    return levels - np.floor(levels)
