# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
The Mehta-Dyson log-gas: Hermite nodes, the fluctuation matrix ``H``
and the discrete ladder operators ``A`` (annihilation) & ``A*`` (creation).

With ``B_ij = 1/(x_i − x_j)`` on the zeros ``x_i`` of the physicists' Hermite ``H_N``:

- ``A = diag(x) − B`` (the node-difference derivative) and ``A* = 2·diag(x) − A``,
- ``H_ij = −B_ij²``, ``H_ii = 1 + Σ_k B_ik²``, with spectrum exactly ``{1, …, N}``,
- ``[A, A*] = 2(J − I)``, i.e. ``−2`` on zero-sum vectors,
- ``H = N·I − ½·A·A*`` as full matrices,
- ``A*`` climbs the eigenvectors of ``H``: ``A·X_{k+1} = 2(N − k)·X_k``.

.. doctest::
    :hide:

    >>> from zetastair.mehta_dyson import *
    >>> __name__ = "zetastair.mehta_dyson"
"""
import logging
from typing import List, NamedTuple, Tuple

import numpy as np
from numpy.polynomial import hermite

from .base import ConvergenceError, DomainError, RangeError, SymmetryError, check_int

log = logging.getLogger(__name__)

MAX_NODES = 200
#: Sizes above this lose the integer spectrum to conditioning.
MAX_SPECTRUM_SIZE = 60
SYMMETRY_TOL = 1e-12


class NodeSet(NamedTuple):
    degree: int
    nodes: np.ndarray


class DysonSystem(NamedTuple):
    node_set: NodeSet
    h_matrix: np.ndarray
    a_matrix: np.ndarray
    a_star_matrix: np.ndarray

    @property
    def size(self) -> int:
        return self.node_set.degree


class SymmetricSpectrum(NamedTuple):
    """Ascending eigenvalues and orthonormal eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermite_nodes(N: int) -> NodeSet:
    """
    The `N` zeros of the physicists' Hermite polynomial ``H_N``, ascending.

    >>> [round(x, 12) for x in hermite_nodes(3).nodes]
    [-1.224744871392, 0.0, 1.224744871392]
    >>> hermite_nodes(1)
    Traceback (most recent call last):
    zetastair.base.DomainError: Expected integer N >= 2, got: 1
    """
    N = check_int(N, "N", 2)
    if N > MAX_NODES:
        raise RangeError(f"Hermite nodes contracted for N <= {MAX_NODES}, got: {N}")
    x, _ = hermite.hermgauss(N)
    x = np.sort(x)
    ## Exact mirror symmetry (zero sum).
    x = 0.5 * (x - x[::-1])
    return NodeSet(N, x)


def equilibrium_residual(node_set: NodeSet) -> float:
    """``max_i |Σ_{j≠i} 1/(x_i − x_j) − x_i|``: zero on the log-gas equilibrium."""
    b = _inverse_differences(node_set.nodes)
    return float(np.max(np.abs(b.sum(axis=1) - node_set.nodes)))


def _inverse_differences(x: np.ndarray) -> np.ndarray:
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.inf)
    return 1.0 / diff


def build_system(N: int) -> DysonSystem:
    """
    ``H``, ``A`` and ``A*`` on the Hermite nodes of degree `N`.

    >>> sys = build_system(2)
    >>> sys.h_matrix
    array([[ 1.5, -0.5],
           [-0.5,  1.5]])
    >>> sys.a_matrix.round(5)
    array([[-0.70711,  0.70711],
           [-0.70711,  0.70711]])
    """
    node_set = hermite_nodes(N)
    x = node_set.nodes
    b = _inverse_differences(x)
    b2 = b * b

    h = -b2
    np.fill_diagonal(h, 1.0 + b2.sum(axis=1))

    a = -b
    np.fill_diagonal(a, b.sum(axis=1))
    a_star = 2.0 * np.diag(x) - a

    return DysonSystem(node_set, h, a, a_star)


def eigen_sym(m) -> SymmetricSpectrum:
    """
    Full eigendecomposition of a real symmetric matrix.

    Each eigenvector is signed so its first non-negligible component is positive.

    :raises SymmetryError:
        if ``max|M − Mᵀ|`` exceeds ``1e-12`` (relative to ``max|M|`` when above 1)
    :raises ConvergenceError:
        if LAPACK fails to converge

    >>> eigen_sym(build_system(2).h_matrix).eigenvalues.round(12)
    array([1., 2.])
    >>> eigen_sym([[1, 2], [0, 1]])
    Traceback (most recent call last):
    zetastair.base.SymmetryError: Matrix not symmetric: max|M - Mᵀ| = 2
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"Expected a square matrix, got shape: {m.shape}")
    asym = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    if asym > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(m)))):
        raise SymmetryError(f"Matrix not symmetric: max|M - Mᵀ| = {asym:g}")

    try:
        w, v = np.linalg.eigh(0.5 * (m + m.T))
    except np.linalg.LinAlgError as ex:
        raise ConvergenceError(f"Symmetric eigensolver failed: {ex}") from ex

    tol = 1e-12 * max(1.0, float(np.max(np.abs(v)))) if v.size else 0
    for k in range(v.shape[1]):
        col = v[:, k]
        lead = np.flatnonzero(np.abs(col) > tol)
        if lead.size and col[lead[0]] < 0:
            v[:, k] = -col
    return SymmetricSpectrum(w, v)


def integer_spectrum_deviation(sys: DysonSystem) -> float:
    """``max_k |λ_k − k|`` over the spectrum of ``H``."""
    w = eigen_sym(sys.h_matrix).eigenvalues
    return float(np.max(np.abs(w - np.arange(1, sys.size + 1))))


def ladder_chain(sys: DysonSystem) -> List[np.ndarray]:
    """
    ``X_1`` (unit ground state of ``H``, eigenvalue 1) and ``X_{k+1} = A*·X_k``.

    The vectors are not normalized: ``‖X_{k+1}‖ = sqrt(2(N − k))·‖X_k‖``.
    """
    spectrum = eigen_sym(sys.h_matrix)
    chain = [spectrum.eigenvectors[:, 0].copy()]
    for _ in range(sys.size - 1):
        chain.append(sys.a_star_matrix @ chain[-1])
    return chain


def ladder_residuals(sys: DysonSystem) -> Tuple[float, float, float]:
    """
    Relative residuals of the ladder relations over the whole chain.

    :return:
        ``max_k ‖H X_k − k X_k‖ / (‖H‖ ‖X_k‖)``,
        ``max_k ‖A X_{k+1} − 2(N−k) X_k‖ / (2(N−k) ‖X_k‖)``
        and ``‖A X_1‖ / ‖X_1‖`` (the chain bottoms out)
    """
    chain = ladder_chain(sys)
    n = sys.size
    h, a = sys.h_matrix, sys.a_matrix
    h_norm = np.linalg.norm(h, 2)
    eig_res = max(
        np.linalg.norm(h @ xk - k * xk) / (h_norm * np.linalg.norm(xk))
        for k, xk in enumerate(chain, 1)
    )
    down_res = max(
        (
            np.linalg.norm(a @ chain[k] - 2 * (n - k) * chain[k - 1])
            / (2 * (n - k) * np.linalg.norm(chain[k - 1]))
            for k in range(1, n)
        ),
        default=0.0,
    )
    ground = np.linalg.norm(a @ chain[0]) / np.linalg.norm(chain[0])
    return float(eig_res), float(down_res), float(ground)


def commutator_check(sys: DysonSystem) -> np.ndarray:
    """
    ``C = A·A* − A*·A``, which equals ``2(J − I)``.

    >>> np.allclose(commutator_check(build_system(2)), [[0, 2], [2, 0]], atol=1e-12)
    True
    """
    a, a_star = sys.a_matrix, sys.a_star_matrix
    return a @ a_star - a_star @ a


def zero_sum_residual(sys: DysonSystem, vectors=None) -> float:
    """
    ``max ‖C v + 2 v‖ / ‖v‖`` over zero-sum `vectors` (columns).

    :param vectors:
        default: the basis ``e_i − e_{i+1}``
    """
    n = sys.size
    if vectors is None:
        vectors = np.eye(n)[:, :-1] - np.eye(n)[:, 1:]
    vectors = np.asarray(vectors, dtype=float)
    c = commutator_check(sys)
    res = np.linalg.norm(c @ vectors + 2 * vectors, axis=0)
    return float(np.max(res / np.linalg.norm(vectors, axis=0)))


def hamiltonian_identity(sys: DysonSystem) -> float:
    """
    ``max|H − (N·I − ½·A·A*)|``, zero up to rounding.

    >>> hamiltonian_identity(build_system(5)) < 1e-10
    True
    """
    n = sys.size
    rhs = n * np.eye(n) - 0.5 * sys.a_matrix @ sys.a_star_matrix
    return float(np.max(np.abs(sys.h_matrix - rhs)))


def ladder_commutators(sys: DysonSystem) -> Tuple[float, float]:
    """``max|[H, A*] − A*|`` and ``max|[H, A] + A|``: ``A*`` raises and ``A`` lowers by 1."""
    h, a, a_star = sys.h_matrix, sys.a_matrix, sys.a_star_matrix
    raising = h @ a_star - a_star @ h - a_star
    lowering = h @ a - a @ h + a
    return float(np.max(np.abs(raising))), float(np.max(np.abs(lowering)))
