import math

import mpmath
import numpy as np
import pytest
from scipy import optimize, special

_slow = pytest.mark.slow

#: Odlyzko's table around the first bad Gram point.
KNOWN_ZEROS = {
    126: 279.229250928,
    127: 282.465114765,
    128: 283.211185733,
    129: 284.835963981,
}


def lambertw_ref(x: float) -> float:
    return float(special.lambertw(x, 0).real)


def loggamma_ref(x) -> complex:
    return complex(special.loggamma(x))


def mp_zeta(s: complex) -> complex:
    with mpmath.workdps(30):
        return complex(mpmath.zeta(mpmath.mpc(s.real, s.imag)))


def mp_siegelz(t: float) -> float:
    with mpmath.workdps(30):
        return float(mpmath.siegelz(t))


def mp_theta(t: float) -> float:
    with mpmath.workdps(30):
        return float(mpmath.siegeltheta(t))


def mp_zero(n: int) -> float:
    with mpmath.workdps(20):
        return float(mpmath.zetazero(n).imag)


def bisect_root(f, lo, hi) -> float:
    return optimize.brentq(f, lo, hi, xtol=1e-14)


def stirling_gap(t: float) -> float:
    """The size of the ``1/(48t)`` theta term in height units."""
    return 1 / (24 * t * math.log(t / (2 * math.pi)))


def random_zero_sum(n: int, count: int, seed=0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, count))
    return v - v.mean(axis=0)
