from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polynet import sle_kpz as s
from polynet.exact import Radical
from polynet.tables import BoundaryCondition as BC, UniversalityClass as U, x_bulk, x_surface

KAPPAS = [F(8, 3), F(3), F(4), F(6), F(8)]


def test_kpz_u_examples():
    assert s.kpz_u(F(8, 3), F(3, 4)) == F(5, 8)
    assert s.kpz_u(F(8, 3), 1) == 1
    for k in KAPPAS:
        assert s.kpz_u(k, 0) == 0


def test_kpz_v_examples():
    assert 2 * s.kpz_v(F(8, 3), F(3, 4)) == F(5, 48)
    assert s.kpz_v(4, 0) == 0
    assert s.kpz_v(6, 1) == F(1, 3)


def test_kpz_u_inverse_examples():
    assert s.kpz_u_inverse(6, 0) == F(1, 3)
    assert s.kpz_u_inverse(F(8, 3), F(5, 8)) == F(3, 4)
    assert s.kpz_u_inverse(3, 0) == 0
    with pytest.raises(s.NegativeDiscriminant):
        s.kpz_u_inverse(3, -1)


def test_kpz_u_inverse_irrational():
    r = s.kpz_u_inverse(F(8, 3), F(1, 2))
    assert isinstance(r, Radical)
    assert s.kpz_u(F(8, 3), r) == F(1, 2)


@pytest.mark.parametrize("k", KAPPAS)
@pytest.mark.parametrize("x", [F(0), F(1, 3), F(5, 8), F(2), F(35, 12)])
def test_round_trip(k, x):
    assert s.kpz_u(k, s.kpz_u_inverse(k, x)) == x


def test_heaviside_convention():
    assert s.heaviside(F(0)) == F(1, 2)
    assert (s.heaviside(-1), s.heaviside(2)) == (0, 1)
    assert s.u_inv_zero(6) == F(1, 3)
    assert s.u_inv_zero(2) == 0
    assert s.u_inv_zero(8) == F(1, 2)
    assert s.u_inv_zero(4) == 0


def test_kappa_type():
    assert s.Kappa(F(8, 3)).phase() is s.Phase.SIMPLE
    assert s.Kappa(6).phase() is s.Phase.NON_SIMPLE
    assert s.Kappa(6).dual().value == F(8, 3)
    for bad in (0, -1, 0.0):
        with pytest.raises(ValueError):
            s.Kappa(bad)


def test_float_mode():
    k = 2 ** 0.5 + 2
    assert abs(s.kpz_u(k, s.kpz_u_inverse(k, 0.7)) - 0.7) < 1e-12


def test_delta_Lj():
    assert s.delta_Lj(6, 3, 0).value == 1
    assert s.delta_Lj(6, 1, 2).value == 1
    assert s.delta_Lj(6, 1, 2).flavor is s.Flavor.DUAL
    for L in range(1, 6):
        for j in range(4):
            assert s.delta_Lj(F(8, 3), L, j).value == F(3 * L, 4)


def test_families_examples():
    for L in range(1, 20):
        assert s.x_surface_Lj(6, L, 2) == F((L + 1) * (L + 2), 6)
        assert s.x_bulk_Lj(6, L, L) == F(4 * L * L - 1, 12)
        assert s.x_bulk_Lj(6, L, 0) == F(L * L - 1, 12)
        assert s.x_surface_Lj(6, L, 1) == F(L * (L + 1), 6)
    assert s.x_surface_Lj(6, 2, 2) == s.x_surface_Lj(F(8, 3), 2, 0) == 2
    with pytest.raises(s.JOutOfRange):
        s.x_surface_Lj(6, 2, 4)
    with pytest.raises(s.JOutOfRange):
        s.x_bulk_Lj(6, 2, 3)


@pytest.mark.parametrize("k", [F(8, 3), F(6)])
def test_family_collapse_j0(k):
    for L in range(1, 51):
        closed = L * (2 * L + 4 - k) / (2 * k)
        assert s.x_surface_Lj(k, L, 0) == s.kpz_u(k, 2 * L / k) == closed


def test_tables_reproduced():
    for L in range(1, 51):
        assert s.x_surface_Lj(F(8, 3), L, 0) == x_surface(L, U.SAW)
        assert 2 * s.kpz_v(F(8, 3), s.delta_Lj(F(8, 3), L, 0).value) == x_bulk(L, U.SAW)
        assert s.x_surface_Lj(6, L, L + 1) == x_surface(L, U.MUTUALLY_AVOIDING)
        assert s.x_bulk_Lj(6, L, L) == x_bulk(L, U.MUTUALLY_AVOIDING)
        assert s.x_L_rho(F(8, 3), L, 0, 0) == F(L * (3 * L + 2), 8)
        assert s.x_L_rho(F(8, 3), L, F(-4, 3), F(-4, 3)) == F((3 * L - 4) * (3 * L - 2), 24)


def test_brownian_quantum_additivity():
    for L in range(1, 10):
        assert s.kpz_u(F(8, 3), L) == x_surface(L, U.MUTUALLY_AVOIDING)


def test_x_L_rho_requires_simple():
    with pytest.raises(ValueError):
        s.x_L_rho(6, 1, 0, 0)


def test_beta():
    assert s.sle_rho_boundary_beta(6, 0).beta == F(1, 3)
    r = s.sle_rho_boundary_beta(4, -1)
    assert r.beta == F(1, 4) and r.in_range and r.dimension == F(3, 4)
    assert not s.sle_rho_boundary_beta(6, 1).in_range
    for rho in (F(-1, 2), F(0), F(-1, 3)):
        assert s.x_L_rho(3, 2, rho, rho) == s.sle_rho_boundary_beta(3, rho).beta


def test_wedge_examples():
    assert s.wedge_weight_boundary(6, 1, 0).W == 2
    assert s.wedge_weight_boundary(6, 1, 2).W == F(14, 3)
    assert s.cone_weight_bulk(6, 2, 1).W == 4
    w = s.wedge_weight_boundary(6, 2, 1)
    std, dual = s.weight_to_dims(w, 6)
    assert (std.value, dual.value) == s.wedge_dims_closed_form(6, 2, 1)
    cstd, cdual = s.weight_to_dims(s.cone_weight_bulk(6, 1, 0), 6)
    assert cdual.value == F(1, 3)
    with pytest.raises(ValueError):
        s.wedge_weight_boundary(3, 1, 0)


def test_simple_wedge_weight():
    k = F(8, 3)
    for L in range(1, 6):
        w = s.wedge_weight_rho(k, L, F(-1, 3), F(1, 2))
        assert w.W == 2 * (L + 1) + F(-1, 3) + F(1, 2)
        std, _ = s.weight_to_dims(w, k)
        assert std.value == 2 * L / k + (F(-1, 3) + F(1, 2)) / k


def test_welding_sum():
    a, b = s.WedgeWeight(F(1, 3)), s.WedgeWeight(F(5, 2))
    assert (a + b).W == F(17, 6)


@pytest.mark.parametrize("k", [F(5), F(6), F(8)])
def test_welding_exhaustive(k):
    for L in range(1, 11):
        for j in range(L + 2):
            assert s.welding_consistency(k, L, j)


def test_wedge_cone_relations():
    for k in (F(5), F(6), F(8)):
        for L in range(1, 11):
            for j in range(L + 1):
                d, dt = s.wedge_dims_closed_form(k, L, j)
                c, ct = s.cone_dims_closed_form(k, L, j)
                assert d == 2 * c
                assert dt == 2 * ct - (1 - 4 / k)


def test_special():
    assert s.special_x(F(8, 3), 1) == F(-1, 24)
    assert s.special_x(F(8, 3), 2) == F(1, 3)
    for L in range(1, 21):
        assert s.special_x(4, L) == F((L - 2) ** 2, 4)
        x = s.special_x(F(8, 3), L)
        assert x == x_surface(L, U.SAW, BC.SPECIAL)
        assert x == s.x_L_rho(F(8, 3), L, F(-4, 3), F(-4, 3))
        assert x == s.special_x_coulomb_gas(F(3, 2), L)
    with pytest.raises(ValueError):
        s.special_x(6, 1)


def test_kac_weight():
    assert s.kac_weight(F(3, 2), 1, 1) == 0


def test_modified_kpz():
    for L in range(1, 21):
        assert s.modified_kpz(F(8, 3), F(3 * L, 4)) == F(L * (3 * L - 2), 8)
        assert s.modified_kpz(F(8, 3), 2 * L / F(8, 3)) == s.mixed_x(F(8, 3), L)
        assert s.kpz_u(F(8, 3), 2 * L / F(8, 3)) == s.ordinary_x(F(8, 3), L)
        assert s.x_L_rho(F(8, 3), L, F(-4, 3), 0) == s.mixed_x(F(8, 3), L)
    assert s.modified_kpz(3, F(2, 3)) == 0 == s.mixed_x(3, 1)
    assert s.modified_kpz(F(8, 3), 0) == 0
    assert s.x_L_rho(3, 1, F(-3, 2), 0) != s.mixed_x(3, 1)


rationals = st.fractions(min_value=F(1, 10), max_value=20, max_denominator=30)
kappas = st.fractions(min_value=F(1, 2), max_value=16, max_denominator=12)


@settings(max_examples=200, deadline=None)
@given(kappas, rationals)
def test_prop_round_trip(k, x):
    assert s.kpz_u(k, s.kpz_u_inverse(k, x)) == x


@settings(max_examples=200, deadline=None)
@given(kappas, rationals)
def test_prop_v_is_shifted_u(k, d):
    assert s.kpz_v(k, d) == s.kpz_u(k, (d + 1 - 4 / k) / 2)


@settings(max_examples=200, deadline=None)
@given(kappas, st.integers(1, 30))
def test_prop_j0_collapse(k, L):
    assert s.x_surface_Lj(k, L, 0) == s.kpz_u(k, s.delta_Lj(k, L, 0).value)


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=F(41, 10), max_value=16, max_denominator=12),
       st.integers(1, 12), st.integers(0, 13))
def test_prop_welding(k, L, j):
    if j <= L + 1:
        assert s.welding_consistency(k, L, j)
        assert s.x_surface_Lj(k, L, j) == s.kpz_u(k, s.delta_Lj(k, L, j).value)


@settings(max_examples=200, deadline=None)
@given(kappas, st.fractions(min_value=0, max_value=10, max_denominator=20))
def test_prop_dual_pairing(k, W):
    g2 = s.lqg_gamma_squared(k)
    std, dual = s.weight_to_dims(s.WedgeWeight(W), k)
    assert g2 * (1 - std.value) == 4 * (1 - dual.value)
