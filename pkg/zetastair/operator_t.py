# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
The operator ``T`` solving ``Γ(T/2π + I/2) = e^{H + θ}`` over the Mehta-Dyson ``H``.

Inverted on the increasing branch of Gamma, ``T = 2π(Γ⁻¹(e^{H+θ}) − I/2)``;
since ``H`` has spectrum ``{1, …, N}``, the eigenvalues of ``T`` are
``tau_scalar(k)``, which approach the first (or, with ``θ − ½``, the second)
set of trivial zeros as ``k`` grows, the gap being the Stirling error.

.. doctest::
    :hide:

    >>> from zetastair.operator_t import *
    >>> __name__ = "zetastair.operator_t"
"""
import logging
import math
from typing import Callable, NamedTuple

import numpy as np
import pandas as pd

from .base import DomainError, SetTag, check_finite
from .mehta_dyson import DysonSystem, SymmetricSpectrum, eigen_sym
from .specfun import inverse_log_gamma, log_gamma_real
from .staircase import TWO_PI, trivial_zero

log = logging.getLogger(__name__)

#: The shift ``θ = ½ ln(2π) − 7/8`` of the operator equation.
THETA_SHIFT = 0.5 * math.log(2 * math.pi) - 0.875
#: Max ``|λ_k − k|`` tolerated on the spectrum of ``H`` before building ``T``.
INTEGER_SPECTRUM_TOL = 1e-7


class OperatorT(NamedTuple):
    source: DysonSystem
    matrix: np.ndarray
    set_tag: SetTag
    h_spectrum: SymmetricSpectrum

    @property
    def size(self) -> int:
        return self.source.size

    @property
    def theta(self) -> float:
        return theta_shift(self.set_tag)


def theta_shift(set_tag) -> float:
    """
    ``θ`` for the first set, lowered by ½ for the second.

    >>> round(theta_shift("first"), 7), round(theta_shift("second"), 7)
    (0.0439385, -0.4560615)
    """
    return THETA_SHIFT - SetTag.parse(set_tag).level_offset


def tau_scalar(n: float, set_tag=SetTag.FIRST) -> float:
    """
    ``2π(Γ⁻¹(e^{n+θ'}) − ½)``: the eigenvalue of ``T`` over the eigenvalue `n` of ``H``.

    >>> abs(tau_scalar(127) / 282.4547596 - 1) < 1e-4
    True
    >>> tau_scalar(0.5)
    Traceback (most recent call last):
    zetastair.base.DomainError: Operator T defined for levels n >= 1, got: 0.5
    """
    n = check_finite(float(n), "n")
    if n < 1 - 1e-9:
        raise DomainError(f"Operator T defined for levels n >= 1, got: {n:g}")
    return TWO_PI * (inverse_log_gamma(n + theta_shift(set_tag)) - 0.5)


def matrix_function(
    spectrum: SymmetricSpectrum, f: Callable[[float], float], eigenvalues=None
) -> np.ndarray:
    """
    ``V·diag(f(λ))·Vᵀ`` by spectral calculus, symmetric by construction.

    :param eigenvalues:
        override the spectrum values fed to `f` (e.g. exact integers)
    :raises DomainError:
        naming the eigenvalue where `f` failed

    >>> spec = eigen_sym(np.diag([1.0, 2.0]))
    >>> np.allclose(matrix_function(spec, math.exp), np.diag([math.e, math.e ** 2]))
    True
    """
    lambdas = spectrum.eigenvalues if eigenvalues is None else eigenvalues
    values = np.empty(len(lambdas))
    for k, lam in enumerate(lambdas):
        try:
            values[k] = f(float(lam))
        except Exception as ex:
            raise DomainError(
                f"Matrix function failed on eigenvalue #{k} = {lam!r}: {ex}"
            ) from ex
    v = spectrum.eigenvectors
    m = (v * values) @ v.T
    return 0.5 * (m + m.T)


def build_operator_t(sys: DysonSystem, set_tag=SetTag.FIRST) -> OperatorT:
    """
    ``T`` over the (verified integer) spectrum of ``H``; shares its eigenvectors.

    :raises DomainError:
        if ``H`` strays from ``{1, …, N}`` beyond ``1e-7``
    """
    set_tag = SetTag.parse(set_tag)
    spectrum = eigen_sym(sys.h_matrix)
    levels = np.arange(1, sys.size + 1, dtype=float)
    deviation = float(np.max(np.abs(spectrum.eigenvalues - levels)))
    if deviation > INTEGER_SPECTRUM_TOL:
        raise DomainError(
            f"Spectrum of H (N={sys.size}) off the integers by {deviation:g}"
            f" > {INTEGER_SPECTRUM_TOL:g}"
        )
    matrix = matrix_function(
        spectrum, lambda k: tau_scalar(k, set_tag), eigenvalues=levels
    )
    log.debug("Built T(N=%i, %s), H-spectrum deviation %g.", sys.size, set_tag, deviation)
    return OperatorT(sys, matrix, set_tag, spectrum)


def gt_residual(op: OperatorT) -> float:
    """
    ``max_k |ln Γ(λ_k/2π + ½) − (k + θ')|`` over the spectrum of ``T``.

    Zero up to rounding: the operator equation holds by spectral calculus.
    """
    lambdas = eigen_sym(op.matrix).eigenvalues
    k = np.arange(1, op.size + 1)
    lhs = np.array([log_gamma_real(lam / TWO_PI + 0.5) for lam in lambdas])
    return float(np.max(np.abs(lhs - (k + op.theta))))


def spectrum_report(op: OperatorT) -> pd.DataFrame:
    """
    Per-index comparison of the spectrum of ``T`` with the trivial zeros of its set.

    Columns: ``k``, ``eigenvalue``, ``trivial_zero``, ``rel_diff``, ``gt_residual``.
    """
    lambdas = eigen_sym(op.matrix).eigenvalues
    k = np.arange(1, op.size + 1)
    ref = np.array([trivial_zero(op.set_tag, i).height for i in k])
    residual = np.array(
        [
            log_gamma_real(lam / TWO_PI + 0.5) - (i + op.theta)
            for i, lam in zip(k, lambdas)
        ]
    )
    return pd.DataFrame(
        {
            "k": k,
            "eigenvalue": lambdas,
            "trivial_zero": ref,
            "rel_diff": np.abs(lambdas - ref) / ref,
            "gt_residual": residual,
        }
    )
