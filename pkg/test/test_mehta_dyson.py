import numpy as np
import pytest
from numpy.polynomial import hermite

from zetastair.base import ConvergenceError, DomainError, RangeError, SymmetryError
from zetastair.mehta_dyson import (
    MAX_SPECTRUM_SIZE,
    build_system,
    commutator_check,
    eigen_sym,
    equilibrium_residual,
    hamiltonian_identity,
    hermite_nodes,
    integer_spectrum_deviation,
    ladder_chain,
    ladder_commutators,
    ladder_residuals,
    zero_sum_residual,
)

from .helpers import random_zero_sum


@pytest.mark.parametrize("N", [2, 3, 10, 20])
def test_hermite_nodes_are_roots(N):
    nodes = hermite_nodes(N).nodes
    assert len(nodes) == N
    assert np.all(np.diff(nodes) > 0)
    assert abs(nodes.sum()) < 1e-12
    assert np.array_equal(nodes, -nodes[::-1])
    coefs = np.zeros(N + 1)
    coefs[N] = 1
    values = hermite.hermval(nodes, coefs)
    scale = np.abs(hermite.hermval(nodes, np.eye(N + 1)[N - 1])) * 2 * N
    assert np.all(np.abs(values) <= 1e-8 * scale)


@pytest.mark.parametrize("N", [2, 5, 30, 60])
def test_nodes_in_equilibrium(N):
    assert equilibrium_residual(hermite_nodes(N)) < 1e-9


@pytest.mark.parametrize("N", [1, 0, 2.5])
def test_hermite_nodes_domain(N):
    with pytest.raises(DomainError):
        hermite_nodes(N)


def test_hermite_nodes_range():
    with pytest.raises(RangeError):
        hermite_nodes(201)


def test_two_by_two_closed_form():
    sys = build_system(2)
    assert np.allclose(sys.h_matrix, [[1.5, -0.5], [-0.5, 1.5]], atol=1e-15)
    w = eigen_sym(sys.h_matrix).eigenvalues
    assert np.allclose(w, [1, 2], atol=1e-12)


@pytest.mark.parametrize("N", range(2, MAX_SPECTRUM_SIZE + 1))
def test_integer_spectrum(N):
    assert integer_spectrum_deviation(build_system(N)) <= 1e-7


@pytest.mark.parametrize("N", [2, 3, 7, 15, 30])
def test_ladder_relations(N):
    eig_res, down_res, ground = ladder_residuals(build_system(N))
    assert eig_res <= 1e-8
    assert down_res <= 1e-8
    assert ground <= 1e-8


def test_ladder_chain_norms():
    sys = build_system(6)
    chain = ladder_chain(sys)
    assert len(chain) == 6
    assert np.linalg.norm(chain[0]) == pytest.approx(1)
    for k, (lo, hi) in enumerate(zip(chain, chain[1:]), 1):
        ratio = np.linalg.norm(hi) / np.linalg.norm(lo)
        assert ratio == pytest.approx(np.sqrt(2 * (6 - k)), rel=1e-8)


def test_ground_state_is_constant():
    ## A kills constants: its rows sum to zero.
    sys = build_system(8)
    assert np.allclose(sys.a_matrix @ np.ones(8), 0, atol=1e-12)
    x1 = eigen_sym(sys.h_matrix).eigenvectors[:, 0]
    assert np.allclose(x1, np.full(8, 1 / np.sqrt(8)), atol=1e-10)


@pytest.mark.parametrize("N", [2, 5, 12])
def test_commutator_is_2_J_minus_I(N):
    c = commutator_check(build_system(N))
    expected = 2 * (np.ones((N, N)) - np.eye(N))
    assert np.allclose(c, expected, atol=1e-9)


@pytest.mark.parametrize("N", [3, 10, 30])
def test_commutator_on_zero_sum_vectors(N):
    sys = build_system(N)
    assert zero_sum_residual(sys) <= 1e-10
    assert zero_sum_residual(sys, random_zero_sum(N, 100)) <= 1e-10


@pytest.mark.parametrize("N", [2, 5, 20, 40])
def test_hamiltonian_identity(N):
    assert hamiltonian_identity(build_system(N)) < 1e-9


@pytest.mark.parametrize("N", [3, 10, 25])
def test_ladder_commutators(N):
    raising, lowering = ladder_commutators(build_system(N))
    assert raising < 1e-8
    assert lowering < 1e-8


def test_eigen_sym_signs_and_order():
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    spec = eigen_sym(m)
    assert np.allclose(spec.eigenvalues, [1, 3])
    for k in range(2):
        col = spec.eigenvectors[:, k]
        first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
        assert first > 0


@pytest.mark.parametrize("N", [10, 40])
def test_eigen_sym_is_orthonormal_decomposition(N):
    h = build_system(N).h_matrix
    spec = eigen_sym(h)
    v, lam = spec.eigenvectors, spec.eigenvalues
    assert np.max(np.abs(h @ v - v * lam)) < 1e-10
    assert np.max(np.abs(v.T @ v - np.eye(N))) < 1e-12


def test_eigen_sym_errors():
    with pytest.raises(SymmetryError, match="not symmetric"):
        eigen_sym([[1, 2], [0, 1]])
    with pytest.raises(DomainError, match="square"):
        eigen_sym(np.ones((2, 3)))


def test_eigen_sym_convergence_error(monkeypatch):
    def scream(_m):
        raise np.linalg.LinAlgError("no luck")

    monkeypatch.setattr(np.linalg, "eigh", scream)
    with pytest.raises(ConvergenceError, match="no luck"):
        eigen_sym(np.eye(2))
