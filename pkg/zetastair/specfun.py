# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
Scalar special functions consumed by every other module.

Lambert W on its principal branch, real & complex log-Gamma, the inverse of Gamma
on its increasing branch, and the Riemann-Siegel theta in exact & asymptotic forms.

.. doctest::
    :hide:

    >>> from zetastair.specfun import *
    >>> __name__ = "zetastair.specfun"
"""
import logging
import math
from typing import Union

import numpy as np
from scipy import special

from .base import ConvergenceError, DomainError, PoleError, check_finite

log = logging.getLogger(__name__)

#: Where Gamma attains its minimum on the positive axis.
GAMMA_ARGMIN = 1.461632144968362
#: ``Γ(GAMMA_ARGMIN)``, the smallest value :func:`inverse_gamma()` accepts.
GAMMA_MIN = 0.8856031944108887
LOG_GAMMA_MIN = -0.12148629053584961
_INV_E = math.exp(-1.0)
_LAMBERT_MAXITER = 30


def lambert_w0(x: float) -> float:
    """
    Principal branch ``W₀`` of the Lambert W function, ``W(x)·exp(W(x)) = x``.

    Halley iteration from a piecewise initial guess:
    the branch-point series for ``x < -1/4``, ``log1p(x)`` for moderate `x`
    and the log-log asymptote for large `x`.

    :raises DomainError:
        if ``x < -1/e``

    >>> lambert_w0(0)
    0.0
    >>> round(lambert_w0(math.e), 14)
    1.0
    >>> lambert_w0(1)
    0.567143290409783...
    >>> lambert_w0(-1)
    Traceback (most recent call last):
    zetastair.base.DomainError: Lambert W0 defined only for x >= -1/e, got: -1
    """
    x = check_finite(float(x), "x")
    if x == 0.0:
        return 0.0
    if x < -_INV_E:
        ## Tolerate the 1-ulp spread of the various `-1/e` spellings.
        if x >= -_INV_E * (1 + 4 * np.finfo(float).eps):
            return -1.0
        raise DomainError(f"Lambert W0 defined only for x >= -1/e, got: {x:g}")

    if x < -0.25:
        p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
        w = -1.0 + p * (1.0 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540))))
        if p < 1e-3:
            return w
    elif x < 3.0:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1

    for _ in range(_LAMBERT_MAXITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if f == 0.0 or abs(dw) <= 1e-15 * (1.0 + abs(w)):
            return w

    ## Rounding noise may keep `dw` above the step-tolerance near the branch point.
    residual = abs(w * math.exp(w) - x)
    if residual <= 1e-13 * max(1.0, abs(x)):
        return w
    raise ConvergenceError(
        f"Lambert W0({x!r}) did not converge in {_LAMBERT_MAXITER} Halley steps"
        f" (residual: {residual:g})"
    )


def log_gamma_real(x: float) -> float:
    """
    ``ln Γ(x)`` for positive reals.

    >>> log_gamma_real(5)
    3.178053830347945...
    >>> log_gamma_real(1)
    0.0
    >>> log_gamma_real(0)
    Traceback (most recent call last):
    zetastair.base.DomainError: Real log-Gamma needs x > 0, got: 0
    """
    x = check_finite(float(x), "x")
    if x <= 0:
        raise DomainError(f"Real log-Gamma needs x > 0, got: {x:g}")
    return float(special.gammaln(x))


def log_gamma_complex(s: complex) -> complex:
    """
    Principal log-Gamma, continuous along vertical lines (not ``log(Γ(s))``).

    :raises PoleError:
        at non-positive integers

    >>> abs(log_gamma_complex(2)) < 1e-15
    True
    >>> log_gamma_complex(-3)
    Traceback (most recent call last):
    zetastair.base.PoleError: Gamma has a pole at s = (-3+0j)
    """
    s = complex(s)
    check_finite(s.real, "Re s")
    check_finite(s.imag, "Im s")
    if s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real):
        raise PoleError(f"Gamma has a pole at s = {s}")
    return complex(special.loggamma(s))


def inverse_log_gamma(log_y: float) -> float:
    """
    The ``x >= GAMMA_ARGMIN`` with ``ln Γ(x) = log_y``.

    Newton on ``ln Γ`` started right of the root: ``ln Γ`` is convex & increasing there,
    so the iterates decrease monotonically onto the root.
    Taking the logarithm directly keeps huge arguments like ``e^{1000}`` finite.

    >>> round(inverse_log_gamma(math.log(24)), 12)
    5.0
    """
    log_y = check_finite(float(log_y), "ln y")
    if log_y < LOG_GAMMA_MIN:
        if log_y >= LOG_GAMMA_MIN - 1e-14:
            return GAMMA_ARGMIN
        raise DomainError(
            f"Inverse Gamma needs y >= Γ(x_min) = {GAMMA_MIN}, got: {math.exp(log_y)!r}"
        )
    if log_y - LOG_GAMMA_MIN <= 1e-15:
        return GAMMA_ARGMIN

    x = 2.0
    while special.gammaln(x) < log_y:
        x *= 2.0

    for _ in range(200):
        f = float(special.gammaln(x)) - log_y
        d = float(special.digamma(x))
        if abs(f) <= 1e-14 * max(1.0, abs(log_y)) or d <= 0:
            break
        dx = f / d
        x = max(x - dx, GAMMA_ARGMIN)
        if abs(dx) <= 1e-15 * x:
            break
    else:
        raise ConvergenceError(f"Inverse Gamma of exp({log_y!r}) did not converge")

    return x


def inverse_gamma(y: float) -> float:
    """
    Inverse of Gamma on its increasing branch ``x >= GAMMA_ARGMIN``.

    :raises DomainError:
        if ``y < Γ(x_min) ≈ 0.8856031944``

    >>> round(inverse_gamma(24), 10), round(inverse_gamma(2), 10)
    (5.0, 3.0)
    >>> inverse_gamma(0.5)
    Traceback (most recent call last):
    zetastair.base.DomainError: Inverse Gamma needs y >= Γ(x_min) = 0.8856031944108887, got: 0.5
    """
    y = check_finite(float(y), "y")
    if y <= 0:
        raise DomainError(
            f"Inverse Gamma needs y >= Γ(x_min) = {GAMMA_MIN}, got: {y!r}"
        )
    return inverse_log_gamma(math.log(y))


#: The two evaluation modes of :func:`riemann_siegel_theta()`.
THETA_MODES = ("exact", "asymptotic")

RealOrArray = Union[float, np.ndarray]


def theta_exact(t: RealOrArray) -> RealOrArray:
    """
    ``θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π``, vectorized, without domain checks.
    """
    t = np.asarray(t, dtype=float)
    val = special.loggamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)
    return float(val) if val.ndim == 0 else val


def theta_asymptotic(t: RealOrArray) -> RealOrArray:
    """``(t/2) ln(t/2π) − t/2 − π/8 + 1/(48t)``, vectorized, without domain checks."""
    t = np.asarray(t, dtype=float)
    val = 0.5 * t * np.log(t / (2 * math.pi)) - 0.5 * t - math.pi / 8 + 1 / (48 * t)
    return float(val) if val.ndim == 0 else val


def riemann_siegel_theta(t: float, mode: str = "exact") -> float:
    """
    The phase of ``ζ(1/2 + it)`` stripped by the Z-function.

    :param mode:
        ``exact`` (through :func:`log_gamma_complex()`) or ``asymptotic``
        (the Stirling expansion to ``1/(48t)``)

    >>> round(riemann_siegel_theta(20, "asymptotic"), 6)
    1.186893
    >>> riemann_siegel_theta(-1)
    Traceback (most recent call last):
    zetastair.base.DomainError: Riemann-Siegel theta needs t > 0, got: -1
    """
    t = check_finite(float(t), "t")
    if t <= 0:
        raise DomainError(f"Riemann-Siegel theta needs t > 0, got: {t:g}")
    if mode == "exact":
        return theta_exact(t)
    if mode == "asymptotic":
        return theta_asymptotic(t)
    raise DomainError(f"Unknown theta mode {mode!r}, expected one of: {THETA_MODES}")
