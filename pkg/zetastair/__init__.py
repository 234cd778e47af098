# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
Trivial zeros of the mean staircase of the Riemann zeta zeros, and the operators behind them

The smooth zero count ``<N(t)>`` is inverted exactly with the Lambert W function;
its integer (and half-integer) levels are compared against the true zeros,
Gram points, and the spectrum of an operator built over the Mehta-Dyson log-gas.
"""

__version__ = "1.0.0.dev0"
__release_date__ = "16 Oct 2026, 12:00"
__title__ = "zetastair"
__summary__ = __doc__.splitlines()[1]
__license__ = "Apache-2.0"


from .base import (
    AmbiguityError,
    ConvergenceError,
    CorruptCacheError,
    DomainError,
    NoSignChangeError,
    PoleError,
    RangeError,
    SetTag,
    StaircaseError,
    SymmetryError,
)
from .gram import GramPoint, IstantonEvent, gram_law_holds, gram_point, scan_istantons
from .mehta_dyson import DysonSystem, build_system, hermite_nodes
from .operator_t import OperatorT, build_operator_t, spectrum_report, tau_scalar
from .recipe import Column, Recipe, column
from .specfun import lambert_w0, riemann_siegel_theta
from .staircase import (
    TrivialZero,
    inverse_staircase,
    mean_staircase,
    t_star,
    t_star_star,
    trivial_zero,
)
from .zetaline import TrueZero, count_zeros, find_zero, find_zeros, z_function, zeta_em
