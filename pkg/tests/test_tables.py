from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from polynet.series import EpsilonSeries
from polynet.tables import (
    EXACT_2D, BoundaryCondition as BC, DimensionSetting, UniversalityClass as U,
    UnsupportedCombination, hausdorff_dimensions, nu, theta_star_log_power, x_bulk, x_surface,
)

EPS1, EPS2 = DimensionSetting.epsilon(1), DimensionSetting.epsilon(2)
Ls = st.integers(min_value=1, max_value=60)


def _series_sym(expr, order):
    e = sympy.Symbol("eps")
    poly = sympy.expand(sympy.series(expr(e), e, 0, order + 1).removeO())
    return EpsilonSeries(tuple(F(str(poly.coeff(e, k))) for k in range(order + 1)))


def test_nu_values():
    assert nu(U.SAW) == F(3, 4)
    assert nu(U.THETA) == F(4, 7)
    assert nu(U.BROWNIAN, DimensionSetting.general(3)) == F(1, 2)
    assert nu(U.SAW, EPS2) == EpsilonSeries((F(1, 2), F(1, 16), F(15, 512)))
    with pytest.raises(UnsupportedCombination):
        nu(U.THETA, DimensionSetting.general(3))


def test_exact_2d_examples():
    assert x_bulk(2, U.SAW) == F(2, 3)
    assert x_bulk(1, U.THETA) == 0
    assert x_surface(1, U.SAW) == F(5, 8)
    assert x_surface(2, U.THETA) == 2
    assert x_surface(1, U.SAW, BC.SPECIAL) == F(-1, 24)
    assert [x_bulk(L, U.SAW) for L in (1, 2, 3)] == [F(5, 48), F(2, 3), F(77, 48)]


def _saw_bulk_sym(e, L):
    # Brownian part at d = 4 - eps plus the two-loop anomaly
    return (sympy.Rational(L, 2) * (2 - e) + e / 8 * L * (L - 1)
            + (e / 8) ** 2 * sympy.Rational(L, 4) * (-8 * L ** 2 + 33 * L - 23))


def test_saw_eps2_bulk_against_symbolic_expansion():
    for L in range(1, 8):
        assert x_bulk(L, U.SAW, EPS2) == _series_sym(lambda e: _saw_bulk_sym(e, L), 2)
    assert x_bulk(3, U.SAW, EPS2) == EpsilonSeries((F(3), F(-3, 4), F(3, 64)))


def test_saw_nu_eps2_against_symbolic_inverse():
    expr = lambda e: 1 / ((4 - e) - _saw_bulk_sym(e, 2))
    assert nu(U.SAW, EPS2) == _series_sym(expr, 2)


def test_unsupported_combinations_are_errors():
    with pytest.raises(UnsupportedCombination):
        x_surface(1, U.MUTUALLY_AVOIDING, BC.SPECIAL)
    with pytest.raises(UnsupportedCombination):
        x_surface(1, U.SAW, BC.ORDINARY, EPS2)
    with pytest.raises(UnsupportedCombination):
        x_bulk(2, U.THETA, EPS1)
    with pytest.raises(ValueError):
        x_bulk(0, U.SAW)


def test_theta_log_power():
    assert [theta_star_log_power(L) for L in (1, 3, 5)] == [0, F(-1, 22), F(-5, 11)]


def test_hausdorff():
    h = hausdorff_dimensions(U.SAW)
    assert (h.bulk_dim, h.adsorbed_dim) == (F(4, 3), F(2, 3))
    assert hausdorff_dimensions(U.THETA).bulk_dim == F(7, 4)
    with pytest.raises(UnsupportedCombination):
        hausdorff_dimensions(U.BROWNIAN)


@given(Ls)
def test_mixed_shift(L):
    assert x_surface(L, U.SAW) - x_surface(L, U.SAW, BC.MIXED) == F(L, 2)


@given(Ls)
def test_theta_shifts(L):
    assert x_surface(L, U.THETA, BC.MIXED) == x_surface(L + 1, U.THETA, BC.SPECIAL)
    assert x_surface(L, U.THETA) == x_surface(L + 2, U.THETA, BC.SPECIAL)


@given(st.integers(min_value=1, max_value=20))
def test_eps_zero_is_brownian(L):
    four = DimensionSetting.general(4)
    for cls in (U.SAW, U.MUTUALLY_AVOIDING):
        assert x_bulk(L, cls, EPS2).at(0) == x_bulk(L, U.BROWNIAN, four)
    assert x_surface(L, U.SAW, BC.ORDINARY, EPS1).at(0) == x_surface(L, U.BROWNIAN, BC.ORDINARY, four)


def test_identities():
    assert x_bulk(2, U.SAW) == 2 - 1 / nu(U.SAW)
    for cls in (U.SAW, U.THETA):
        assert x_surface(2, cls) == 2
    for d in (1, 2, 3, F(7, 2)):
        assert x_surface(2, U.BROWNIAN, BC.ORDINARY, DimensionSetting.general(d)) == d
    correction = x_surface(2, U.SAW, BC.ORDINARY, EPS1) - x_surface(2, U.BROWNIAN, BC.ORDINARY, EPS1)
    assert correction[1] == 0


def test_maw_second_order_sign_change():
    # coefficient printed as -(eps/4)^2 L(L-1)(2L-5): positive at L=2, negative from L=3
    assert x_bulk(2, U.MUTUALLY_AVOIDING, EPS2)[2] > 0
    assert x_bulk(3, U.MUTUALLY_AVOIDING, EPS2)[2] < 0
    assert x_bulk(1, U.MUTUALLY_AVOIDING, EPS2)[2] == 0


def test_setting_parse():
    assert DimensionSetting.parse("d=7/2").d == F(7, 2)
    assert DimensionSetting.parse("exact2d") is EXACT_2D
    with pytest.raises(ValueError):
        DimensionSetting.parse("eps3")
