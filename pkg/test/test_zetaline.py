import math

import numpy as np
import pytest

from zetastair.base import DomainError, NoSignChangeError, PoleError, RangeError
from zetastair.config import rs_min_height_plugged
from zetastair.specfun import theta_exact
from zetastair.staircase import mean_staircase, t_star_star
from zetastair.zetaline import (
    _is_suspicious,
    _scan_grid,
    _sign_change_brackets,
    berry_keating,
    berry_keating_roots,
    count_zeros,
    critical_sample,
    find_zero,
    find_zeros,
    first_zeros,
    fractional_parts,
    fractional_statistics,
    psi,
    riemann_siegel_z,
    s_fluctuation,
    true_zeros,
    xi,
    z_function,
    zeta_em,
    zeta_on_line,
)

from .helpers import KNOWN_ZEROS, mp_siegelz, mp_zero, mp_zeta, stirling_gap


@pytest.mark.parametrize(
    "s", [2, 0.5, -0.5 + 3j, 0.5 + 14.134725j, 0.5 + 100j, 3 + 1000j, 0.5 + 4999j]
)
def test_zeta_em_vs_mpmath(s):
    s = complex(s)
    assert abs(zeta_em(s) - mp_zeta(s)) < 1e-10 * max(1, abs(mp_zeta(s)))


def test_zeta_em_pole():
    with pytest.raises(PoleError, match="pole at s = 1"):
        zeta_em(1)


@pytest.mark.parametrize("s", [-1, -3 + 2j, 0.5 + 5001j, 0.5 - 6000j])
def test_zeta_em_range(s):
    with pytest.raises(RangeError):
        zeta_em(s)


def test_range_error_is_domain_error():
    with pytest.raises(DomainError):
        zeta_on_line(6000)


def test_xi_symmetry():
    rng = np.random.default_rng(42)
    points = rng.uniform(-0.5, 1.5, 200) + 1j * rng.uniform(-30, 30, 200)
    for s in points:
        a, b = xi(s), xi(1 - s)
        assert abs(a - b) <= 1e-10 * max(abs(a), abs(b)), s


def test_xi_real_on_critical_line():
    for t in (5.0, 14.0, 30.0):
        v = xi(complex(0.5, t))
        assert abs(v.imag) <= 1e-10 * abs(v)


def test_xi_vanishes_on_known_zero():
    at_zero = abs(xi(complex(0.5, KNOWN_ZEROS[126])))
    between = abs(xi(complex(0.5, 280.5)))
    assert between > 0
    assert at_zero < 1e-6 * between


def test_berry_keating_symmetry():
    for s in (0.3 + 2j, -0.7 + 11j, 1.2 - 5j):
        a, b = berry_keating(s), berry_keating(1 - s)
        assert a == pytest.approx(b, rel=1e-12)


def test_berry_keating_poles():
    with pytest.raises(PoleError):
        berry_keating(-2)


@pytest.mark.parametrize("t", [50.0, 150.0, 300.0, 1000.0, 3000.0])
def test_riemann_siegel_vs_mpmath(t):
    assert abs(riemann_siegel_z(t)[0] - mp_siegelz(t)) < 1e-6


@pytest.mark.parametrize("t", [20.0, 100.0, 199.9, 200.0, 500.0])
def test_z_function_vs_mpmath(t):
    assert z_function(t) == pytest.approx(mp_siegelz(t), abs=1e-6)


def test_em_vs_riemann_siegel():
    ts = np.linspace(50, 1000, 500)
    rs = riemann_siegel_z(ts)
    with rs_min_height_plugged(math.inf):
        em = np.array([z_function(t) for t in ts])
    diff = np.abs(rs - em)
    assert np.max(diff) <= 1e-6


def test_z_function_range():
    with pytest.raises(RangeError):
        z_function(0)
    with pytest.raises(RangeError):
        z_function(5000.5)


def test_scan_grid_resolves_mean_gap():
    grid = _scan_grid(10, 1000)
    assert grid[0] == 10 and grid[-1] == 1000
    steps = np.diff(grid)
    assert np.all(steps > 0)
    assert np.all(steps <= 0.5)


def test_suspicious_minimum():
    z = np.array([3.0, 0.1, 2.0])
    assert _is_suspicious(z, 1)
    assert not _is_suspicious(z, 0)
    assert not _is_suspicious(np.array([3.0, -0.1, 2.0]), 1)


def test_sign_change_brackets():
    ts = np.array([0.0, 1.0, 2.0, 3.0])
    zs = np.array([1.0, -1.0, 0.0, 2.0])
    assert _sign_change_brackets(ts, zs) == [(0.0, 1.0), (2.0, 2.0)]


def test_first_zeros_vs_mpmath():
    zeros = first_zeros(30)
    assert [z.index for z in zeros] == list(range(1, 31))
    for z in zeros[::7]:
        assert z.height == pytest.approx(mp_zero(z.index), abs=1e-9)


@pytest.mark.parametrize("index, height", sorted(KNOWN_ZEROS.items()))
def test_known_zeros(index, height):
    zeros = true_zeros(290)
    assert zeros[index - 1].index == index
    assert zeros[index - 1].height == pytest.approx(height, abs=1e-4)


def test_find_zeros_increasing():
    heights = find_zeros(10, 300, workers=1)
    assert np.all(np.diff(heights) > 0)
    assert len(heights) == count_zeros(300)


def test_find_zeros_workers_independent():
    assert find_zeros(10, 300, workers=1) == find_zeros(10, 300, workers=3)


def test_find_zeros_empty_range():
    with pytest.raises(DomainError):
        find_zeros(30, 20)


@pytest.mark.parametrize(
    "t, count", [(14, 0), (15, 1), (100, 29), (280, 126), (285, 129), (811.2, 500)]
)
def test_count_zeros(t, count):
    assert count_zeros(t) == count


def test_find_zero():
    z = find_zero(282.3, 282.6)
    assert z.index == 127
    assert z.height == pytest.approx(KNOWN_ZEROS[127], abs=1e-5)
    assert abs(z_function(z.height)) < 1e-8


def test_find_zero_no_sign_change():
    with pytest.raises(NoSignChangeError, match="same sign"):
        find_zero(15, 16)


def test_s_fluctuation_steps_across_zero():
    t0 = first_zeros(1)[0].height
    jump = s_fluctuation(t0 + 1e-4) - s_fluctuation(t0 - 1e-4)
    assert jump == pytest.approx(1, abs=1e-3)


def test_s_fluctuation_bounded():
    assert max(abs(s_fluctuation(t)) for t in np.linspace(10, 1000, 3001)) < 2


def test_s_fluctuation_averages_out():
    ts = np.linspace(100, 800, 20001)
    assert abs(np.mean([s_fluctuation(t) for t in ts])) < 0.05


def test_count_tracks_mean_staircase():
    for t in np.linspace(50, 1000, 2001):
        assert abs(count_zeros(t) - mean_staircase(t)) <= 2, t


def test_critical_sample_consistent():
    s = critical_sample(150.0)
    assert s.z_value == pytest.approx(z_function(150.0), abs=1e-6)
    assert abs(s.zeta_re + 1j * s.zeta_im - zeta_on_line(150.0)) < 1e-13
    assert s.count == count_zeros(150.0)


@pytest.mark.parametrize("n", [2, 10, 50, 127, 200])
def test_smooth_psi_vanishes_on_second_set(n):
    assert psi(t_star_star(n)) / math.pi == pytest.approx(n - 1.5, abs=1e-9)


def test_psi_domain():
    with pytest.raises(DomainError):
        psi(5)


def test_psi_with_arg_is_pi_count():
    ## Ψ + πS = π(N(t) - 1) up to the 1/(48t) theta term.
    t = 100.5
    full = psi(t, include_arg=True)
    assert full / math.pi == pytest.approx(count_zeros(t) - 1, abs=0.01)


def test_berry_keating_roots():
    ns = range(2, 51)
    roots = berry_keating_roots(2, 50)
    for n, r in zip(ns, roots):
        assert theta_exact(r) == pytest.approx(math.pi * (n - 1.5), abs=1e-9)
        assert abs(r - t_star_star(n)) <= 1.2 * stirling_gap(r)
        lo = berry_keating(complex(0.5, r - 1e-6))
        hi = berry_keating(complex(0.5, r + 1e-6))
        assert lo.real * hi.real < 0


def test_fractional_statistics():
    mean = fractional_statistics(300)
    assert 0.45 <= mean <= 0.53
    fracs = fractional_parts(300)
    assert np.all((0 <= fracs) & (fracs < 1))


@pytest.mark.parametrize("n", [10, 1001])
def test_fractional_statistics_range(n):
    with pytest.raises(DomainError):
        fractional_statistics(n)
