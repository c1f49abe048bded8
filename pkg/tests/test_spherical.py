"""Spherical-function numerics against independent oracles."""

import math

import numpy as np
import pytest
from scipy.special import eval_legendre

from sphreg import liegroup as lg
from sphreg import spherical as sph
from sphreg.spherical import (
    QuadratureConfig,
    QuadratureError,
    SpectralParameter,
    spherical_sl2,
    spherical_sl3,
)

BIG = QuadratureConfig(n_start=1024, n_max=1 << 20, target=1e-12, fail=1e-7)


def test_chamber_coordinate_matches_qr():
    rng = np.random.default_rng(1)
    for _ in range(25):
        y = rng.uniform(-3, 3)
        theta = rng.uniform(0, 2 * np.pi)
        g = lg.SpecialLinearElement.from_array(
            np.diag([np.exp(y), np.exp(-y)]) @ np.array(
                [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]))
        assert abs(lg.iwasawa_projection(g)[0]
                   - sph.sl2_chamber_coordinate(y, theta)) <= 1e-12


def test_value_at_identity_is_one():
    for xi, eta in [(0.0, 0.0), (1.7, 0.3), (-4.0, -0.2)]:
        v = spherical_sl2(SpectralParameter.rank1(xi, eta), 0.0)
        assert abs(v.value - 1.0) <= 1e-12


def test_against_brute_force_trapezoid():
    # independent evaluation at extreme fixed resolution
    theta = 2.0 * np.pi * np.arange(1_000_000) / 1_000_000
    u = sph.sl2_chamber_coordinate(1.0, theta)
    oracle = np.exp(-u).mean()  # spectral value zero
    got = spherical_sl2(SpectralParameter.rank1(0.0), 1.0).value
    assert abs(got - oracle) <= 1e-10


def test_against_legendre_function_oracle():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 25
    for c, eta, y in [(0.5, 0.0, 1.0), (2.0, 0.0, 0.7), (1.3, 0.2, 1.5)]:
        got = spherical_sl2(SpectralParameter.rank1(c, eta), y).value
        nu = 1j * (c + 1j * eta) - 0.5
        want = complex(mpmath.legenp(mpmath.mpc(nu), 0, mpmath.cosh(2 * y)))
        assert abs(got - want) <= 1e-10


def test_positive_definite_family_is_bounded():
    for xi in (0.3, 1.0, 5.0, 40.0):
        for y in (0.5, 2.0, 4.0):
            v = spherical_sl2(SpectralParameter.rank1(xi), y, BIG)
            assert abs(v.value) <= 1.0 + 1e-9


def test_weyl_symmetry_in_the_spectral_variable():
    rng = np.random.default_rng(2)
    for _ in range(50):
        xi = rng.uniform(0.1, 8.0)
        y = rng.uniform(0.1, 3.0)
        plus = spherical_sl2(SpectralParameter.rank1(xi), y, BIG).value
        minus = spherical_sl2(SpectralParameter.rank1(-xi), y, BIG).value
        assert abs(plus - minus) <= 1e-9


def test_bounded_region_dichotomy():
    from sphreg.accept import load_fixtures
    config = QuadratureConfig(n_start=4096, n_max=1 << 20, target=1e-10, fail=1e-6)
    inside = spherical_sl2(SpectralParameter.rank1(0.0, 0.5), 4.0, config)
    assert abs(inside.value) <= 1.0 + 1e-8

    outside_t4 = abs(spherical_sl2(SpectralParameter.rank1(0.0, 0.75), 4.0, config).value)
    outside_t2 = abs(spherical_sl2(SpectralParameter.rank1(0.0, 0.75), 2.0, config).value)
    recorded = load_fixtures()["unbounded_parameter_magnitude_t4"]
    assert abs(outside_t4 - recorded) <= 0.01 * recorded
    # growth rate e^{(eta - rho) Y} with the excess at half the half-sum
    assert outside_t4 / outside_t2 >= 0.9 * math.exp(1.0)


def test_quadrature_failure_raises():
    tight = QuadratureConfig(n_start=64, n_max=256, target=1e-12, fail=1e-9)
    with pytest.raises(QuadratureError):
        spherical_sl2(SpectralParameter.rank1(500.0), 2.0, tight)


def test_geodesic_range_guard():
    with pytest.raises(ValueError):
        spherical_sl2(SpectralParameter.rank1(1.0), 5.5)


def test_sweep_matches_single_evaluations():
    xis = np.array([3.0, 17.0, 40.0])
    swept = sph.spherical_sl2_sweep(xis, 0.0, 1.2, sph.sl2_sweep_nodes(40.0, 1.2))
    for xi, value in zip(xis, swept):
        single = spherical_sl2(SpectralParameter.rank1(xi), 1.2, BIG).value
        assert abs(value - single) <= 1e-9


def test_sl3_identity_and_boundedness():
    v = spherical_sl3(SpectralParameter.rank2((0.4, 0.7)), (0.0, 0.0), samples=10_000)
    assert abs(v.value - 1.0) <= 1e-12

    v = spherical_sl3(SpectralParameter.rank2((0.4, 0.7)), (1.0, 0.0),
                      samples=100_000, seed=3)
    assert abs(v.value) <= 1.0 + 3.0 * v.estimated_error


def test_sl3_matches_high_count_oracle():
    lam = SpectralParameter.rank2((0.0, 0.0))
    coarse = spherical_sl3(lam, (1.0, 0.0), samples=100_000, seed=11)
    oracle = spherical_sl3(lam, (1.0, 0.0), samples=1_000_000, seed=99)
    tolerance = 3.0 * math.hypot(coarse.estimated_error, oracle.estimated_error)
    assert abs(coarse.value - oracle.value) <= tolerance


def test_sl3_deterministic_per_seed():
    lam = SpectralParameter.rank2((0.5, 0.2), (0.1, 0.0))
    a = spherical_sl3(lam, (0.8, 0.1), samples=5_000, seed=7)
    b = spherical_sl3(lam, (0.8, 0.1), samples=5_000, seed=7)
    assert a.value == b.value and a.estimated_error == b.estimated_error


def test_legendre_recurrence():
    assert sph.legendre(0, 0.77) == 1.0
    assert sph.legendre(1, 0.3) == pytest.approx(0.3, abs=1e-15)
    xs = np.linspace(-1, 1, 21)
    for n in (2, 5, 17, 60):
        assert np.allclose(sph.legendre(n, xs), eval_legendre(n, xs), atol=1e-12)
    seq = sph.legendre_sequence(60, 0.41)
    assert seq[60] == pytest.approx(sph.legendre(60, 0.41), abs=1e-14)
    assert np.all(np.abs(seq) <= 1.0 + 1e-12)


def test_compact_integral_examples():
    assert sph.spherical_compact_su2(0, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert sph.spherical_compact_su2(1, math.pi / 3) == pytest.approx(0.5, abs=1e-12)
    assert sph.spherical_compact_su2(40, 1.0) == pytest.approx(
        sph.legendre(40, math.cos(1.0)), abs=1e-9)
    with pytest.raises(ValueError):
        sph.spherical_compact_su2(3, 0.0)
    with pytest.raises(ValueError):
        sph.spherical_compact_su2(-1, 1.0)


def test_compact_integral_grid_against_recurrence():
    for theta in np.linspace(0.2, 2.9, 12):
        seq = sph.legendre_sequence(100, math.cos(theta))
        for n in (0, 3, 25, 100):
            assert abs(sph.spherical_compact_su2(n, theta) - seq[n]) <= 1e-9


def test_derivative_order_zero_equals_value():
    lam = SpectralParameter.rank1(0.8, 0.1)
    direct = spherical_sl2(SpectralParameter.rank1(2.4, 0.1), 1.1).value
    assert abs(sph.deriv_spherical_sl2(lam, 3.0, 1.1, 0) - direct) <= 1e-12


@pytest.mark.parametrize("order,h,rtol", [(1, 1e-5, 1e-6), (2, 1e-4, 1e-5), (3, 2e-3, 1e-3)])
def test_derivatives_match_central_differences(order, h, rtol):
    lam = SpectralParameter.rank1(0.8, 0.1)
    got = sph.deriv_spherical_sl2(lam, 3.0, 1.1, order)

    def f(y):
        return spherical_sl2(SpectralParameter.rank1(2.4, 0.1), y).value

    if order == 1:
        fd = (f(1.1 + h) - f(1.1 - h)) / (2 * h)
    elif order == 2:
        fd = (f(1.1 + h) - 2 * f(1.1) + f(1.1 - h)) / h ** 2
    else:
        fd = (f(1.1 + 2 * h) - 2 * f(1.1 + h) + 2 * f(1.1 - h) - f(1.1 - 2 * h)) / (2 * h ** 3)
    assert abs(got - fd) <= rtol * max(1.0, abs(fd))


def test_first_derivative_sign_at_spectral_origin():
    # the function decays off the identity, so the slope is negative
    lam = SpectralParameter.rank1(0.0)
    for y in (0.5, 1.0, 2.0):
        assert sph.deriv_spherical_sl2(lam, 1.0, y, 1).real < 0.0


def test_derivative_guards():
    lam = SpectralParameter.rank1(1.0)
    with pytest.raises(ValueError):
        sph.deriv_spherical_sl2(lam, 1.0, 1.0, 4)
    with pytest.raises(ValueError):
        sph.deriv_spherical_sl2(lam, 1.0, -0.5, 1)
