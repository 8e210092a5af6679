"""SLE / KPZ exponent algebra.

KPZ maps between quantum (Liouville) boundary dimensions and Euclidean
scaling dimensions, the multiple-SLE families ``x_{L,j}``, the
SLE_kappa(rho1, rho2) boundary weights, quantum wedge and cone welding, and
the special / mixed boundary variants.

``kappa`` is a positive rational so every identity is decided exactly.  A
float ``kappa`` is accepted by :class:`Kappa` for exploratory use; results
are then floats and should be compared with :data:`FLOAT_TOL`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import ExactScalar, Radical, as_exact, canonical, sqrt_exact

__all__ = [
    "FLOAT_TOL",
    "Kappa",
    "Phase",
    "QuantumDim",
    "WedgeWeight",
    "BetaResult",
    "NegativeDiscriminant",
    "JOutOfRange",
    "heaviside",
    "lqg_gamma_squared",
    "kpz_u",
    "kpz_v",
    "kpz_u_inverse",
    "u_inv_zero",
    "standard_kpz",
    "delta_Lj",
    "x_surface_Lj",
    "x_bulk_Lj",
    "x_L_rho",
    "sle_rho_boundary_beta",
    "wedge_weight_boundary",
    "wedge_weight_rho",
    "cone_weight_bulk",
    "weight_to_dims",
    "welding_consistency",
    "wedge_dims_closed_form",
    "cone_dims_closed_form",
    "special_quantum_dim",
    "special_x",
    "special_x_coulomb_gas",
    "kac_weight",
    "modified_kpz",
    "modified_kpz_inverse",
    "mixed_x",
    "ordinary_x",
]

FLOAT_TOL = 1e-12

Number = Union[Fraction, Radical, float]


class NegativeDiscriminant(ValueError):
    pass


class JOutOfRange(ValueError):
    pass


class Phase(enum.Enum):
    SIMPLE = "simple"          # kappa <= 4
    NON_SIMPLE = "non-simple"  # kappa > 4


@dataclass(frozen=True)
class Kappa:
    value: Union[Fraction, float]

    def __post_init__(self):
        v = self.value
        if isinstance(v, float):
            if not math.isfinite(v) or v <= 0:
                raise ValueError("kappa must be positive")
        else:
            v = as_exact(v)
            if not isinstance(v, Fraction):
                raise ValueError("kappa must be rational (or a float in float mode)")
            if v <= 0:
                raise ValueError("kappa must be positive")
            object.__setattr__(self, "value", v)

    @property
    def exact(self) -> bool:
        return not isinstance(self.value, float)

    def phase(self) -> Phase:
        return Phase.SIMPLE if self.value <= 4 else Phase.NON_SIMPLE

    def dual(self) -> "Kappa":
        return Kappa(16 / self.value)

    def __str__(self):
        return str(self.value)


def _k(kappa) -> Union[Fraction, float]:
    if isinstance(kappa, Kappa):
        return kappa.value
    return Kappa(kappa).value


class Flavor(enum.Enum):
    STANDARD = "standard"
    DUAL = "dual"


@dataclass(frozen=True)
class QuantumDim:
    value: Number
    flavor: Flavor = Flavor.STANDARD


class WeightKind(enum.Enum):
    WEDGE = "wedge"
    CONE = "cone"


@dataclass(frozen=True)
class WedgeWeight:
    W: Number
    kind: WeightKind = WeightKind.WEDGE

    def __add__(self, other: "WedgeWeight") -> "WedgeWeight":
        # welding along quantum boundary length adds weights
        if not isinstance(other, WedgeWeight):
            return NotImplemented
        return WedgeWeight(self.W + other.W, self.kind)


def heaviside(x) -> Fraction:
    """Step function with the half-value convention at 0."""
    if x > 0:
        return Fraction(1)
    if x < 0:
        return Fraction(0)
    return Fraction(1, 2)


def lqg_gamma_squared(kappa) -> Number:
    """gamma^2 with gamma = min(sqrt(kappa), 4/sqrt(kappa))."""
    k = _k(kappa)
    return k if k <= 4 else 16 / k


def _gamma(gamma_sq) -> Number:
    if isinstance(gamma_sq, float):
        return math.sqrt(gamma_sq)
    return sqrt_exact(gamma_sq)


# -- KPZ maps ---------------------------------------------------------------

def kpz_u(kappa, delta) -> Number:
    """Boundary KPZ map, quantum Delta -> Euclidean x^S."""
    k = _k(kappa)
    return Fraction(1, 4) * delta * (k * delta + 4 - k)


def kpz_v(kappa, delta) -> Number:
    """Bulk KPZ map; the Euclidean bulk dimension is ``2 * kpz_v``."""
    k = _k(kappa)
    v = (k * k * delta * delta - (4 - k) ** 2) / (16 * k)
    shifted = kpz_u(k, Fraction(1, 2) * (delta + 1 - 4 / k))
    if isinstance(v, float) or isinstance(shifted, float):
        assert abs(float(v) - float(shifted)) <= FLOAT_TOL * max(1.0, abs(float(v)))
    else:
        assert v == shifted, "V_kappa disagrees with U_kappa at the shifted argument"
    return v


def kpz_u_inverse(kappa, x) -> Number:
    """Positive inverse of :func:`kpz_u`."""
    k = _k(kappa)
    disc = 16 * k * x + (4 - k) ** 2
    if disc < 0:
        raise NegativeDiscriminant(f"16*kappa*x + (4-kappa)^2 = {disc} < 0")
    if isinstance(disc, float) or isinstance(k, float):
        return (math.sqrt(disc) + k - 4) / (2 * k)
    return (sqrt_exact(disc) + k - 4) / (2 * k)


def u_inv_zero(kappa) -> Fraction:
    """Quantum dimension of a boundary non-intersection insertion."""
    k = _k(kappa)
    return heaviside(k - 4) * (1 - 4 / k)


def standard_kpz(gamma_sq, delta) -> Number:
    """Standard KPZ relation U_gamma written in terms of gamma^2."""
    return gamma_sq / 4 * delta * delta + (1 - gamma_sq / 4) * delta


# -- multiple SLE families --------------------------------------------------------

def delta_Lj(kappa, L: int, j: int) -> QuantumDim:
    """Dual quantum boundary dimension of an L-star with j arm splittings."""
    if j < 0:
        raise JOutOfRange("j must be >= 0")
    k = _k(kappa)
    return QuantumDim(Fraction(2 * L) / k + j * u_inv_zero(k), Flavor.DUAL)


def x_surface_Lj(kappa, L: int, j: int) -> Number:
    if not 0 <= j <= L + 1:
        raise JOutOfRange(f"surface family needs 0 <= j <= L+1, got j={j}, L={L}")
    k = _k(kappa)
    return (2 * L + j * (k - 4)) * (2 * L + (j - 1) * (k - 4)) / (4 * k)


def x_bulk_Lj(kappa, L: int, j: int) -> Number:
    if not 0 <= j <= L:
        raise JOutOfRange(f"bulk family needs 0 <= j <= L, got j={j}, L={L}")
    k = _k(kappa)
    return (2 * L + (j + 1) * (k - 4)) * (2 * L + (j - 1) * (k - 4)) / (8 * k)


def x_L_rho(kappa, L: int, rho1, rho2) -> Number:
    """Boundary weight of L simple SLE_kappa(rho1, rho2) paths."""
    k = _k(kappa)
    if k > 4:
        raise ValueError("x_L_rho is defined for kappa <= 4")
    s = 2 * L + rho1 + rho2
    return s * (s + 4 - k) / (4 * k)


@dataclass(frozen=True)
class BetaResult:
    beta: Number
    in_range: bool

    @property
    def dimension(self) -> Number:
        """Hausdorff dimension 1 - beta of the boundary intersection."""
        return 1 - self.beta


def sle_rho_boundary_beta(kappa, rho) -> BetaResult:
    """beta(rho); ``in_range`` is False outside (max(-2, kappa/2-4), kappa/2-2)."""
    k = _k(kappa)
    lo = max(Fraction(-2), k / 2 - 4)
    hi = k / 2 - 2
    beta = (2 + rho) * (2 + rho + 2 - k / 2) / k
    return BetaResult(beta, lo < rho < hi)


# -- conformal welding ------------------------------------------------------------

def wedge_weight_boundary(kappa, L: int, j: int) -> WedgeWeight:
    """Weight of the wedge welded from L non-simple paths and L+1 gaps."""
    k = _k(kappa)
    if k <= 4:
        raise ValueError("non-simple welding needs kappa > 4")
    if not 0 <= j <= L + 1:
        raise JOutOfRange("0 <= j <= L+1")
    g2 = 16 / k
    pieces = [WedgeWeight(2 - g2 / 2)] * L + [WedgeWeight(g2 - 2)] * (L + 1 - j) + [WedgeWeight(Fraction(2))] * j
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    assert total.W == L * g2 / 2 + (4 - g2) * j + g2 - 2
    return total


def wedge_weight_rho(kappa, L: int, rho1, rho2) -> WedgeWeight:
    """Weight of the wedge welded from L+1 pieces around L simple paths."""
    k = _k(kappa)
    if k > 4:
        raise ValueError("simple-path welding needs kappa <= 4")
    pieces = [WedgeWeight(2 + rho1)] + [WedgeWeight(Fraction(2))] * (L - 1) + [WedgeWeight(2 + rho2)]
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    return total


def cone_weight_bulk(kappa, L: int, j: int) -> WedgeWeight:
    k = _k(kappa)
    if k <= 4:
        raise ValueError("non-simple welding needs kappa > 4")
    if not 0 <= j <= L:
        raise JOutOfRange("0 <= j <= L")
    g2 = 16 / k
    W = L * (2 - g2 / 2) + 2 * j + (L - j) * (g2 - 2)
    assert W == L * g2 / 2 + j * (4 - g2)
    return WedgeWeight(W, WeightKind.CONE)


def weight_to_dims(w: WedgeWeight, kappa) -> tuple[QuantumDim, QuantumDim]:
    """Standard and dual quantum dimensions carried by a wedge or cone."""
    g2 = lqg_gamma_squared(kappa)
    W = w.W
    if w.kind is WeightKind.WEDGE:
        std = (W - 2) / g2
        dual = (W + 2 - g2) / 4
    else:
        g = _gamma(g2)
        alpha = (g / 2 + 2 / g) - W / (2 * g)
        std = 1 - alpha / g
        dual = 1 - g * alpha / 4
    if not isinstance(g2, float):
        assert g2 * (1 - std) == 4 * (1 - dual), "dual pairing violated"
    return QuantumDim(std, Flavor.STANDARD), QuantumDim(dual, Flavor.DUAL)


def wedge_dims_closed_form(kappa, L: int, j: int) -> tuple[Fraction, Fraction]:
    """Standard and dual boundary dimensions as closed forms in kappa."""
    k = _k(kappa)
    return Fraction(L, 2) + (j - 1) * (k / 4 - 1), Fraction(2 * L) / k + j * (1 - 4 / k)


def cone_dims_closed_form(kappa, L: int, j: int) -> tuple[Fraction, Fraction]:
    k = _k(kappa)
    return (Fraction(L, 4) + Fraction(j - 1, 2) * (k / 4 - 1),
            Fraction(L) / k + Fraction(j + 1, 2) * (1 - 4 / k))


def welding_consistency(kappa, L: int, j: int) -> bool:
    """Welding-derived dimensions reproduce the x_{L,j} families."""
    k = _k(kappa)
    if k <= 4:
        raise ValueError("welding_consistency needs kappa > 4")
    g2 = lqg_gamma_squared(k)
    std, dual = weight_to_dims(wedge_weight_boundary(k, L, j), k)
    target = x_surface_Lj(k, L, j)
    ok = standard_kpz(g2, std.value) == target and kpz_u(k, dual.value) == target
    ok = ok and (std.value, dual.value) == wedge_dims_closed_form(k, L, j)
    if j <= L:
        cstd, cdual = weight_to_dims(cone_weight_bulk(k, L, j), k)
        xb = x_bulk_Lj(k, L, j)
        ok = ok and 2 * standard_kpz(g2, cstd.value) == xb
        ok = ok and 2 * kpz_u(k, cdual.value) == xb
        ok = ok and 2 * kpz_v(k, dual.value) == xb
        ok = ok and (cstd.value, cdual.value) == cone_dims_closed_form(k, L, j)
    return ok


# -- special and mixed boundaries -------------------------------------------------

def _dilute(k):
    if not 2 <= k <= 4:
        raise ValueError("special/mixed boundary exponents need 2 <= kappa <= 4")


def special_quantum_dim(kappa, L: int) -> QuantumDim:
    k = _k(kappa)
    _dilute(k)
    return QuantumDim(Fraction(2 * L) / k - 1, Flavor.STANDARD)


def special_x(kappa, L: int) -> Number:
    """Special-transition boundary dimension of an L-star."""
    k = _k(kappa)
    _dilute(k)
    x = (2 * L - k) * (2 * L + 4 - 2 * k) / (4 * k)
    assert kpz_u(k, special_quantum_dim(k, L).value) == x
    return x


def kac_weight(g, p: int, q: int) -> Fraction:
    """Kac-table weight h_{p,q} for Coulomb-gas coupling g."""
    g = Fraction(g)
    return ((g * p - q) ** 2 - (g - 1) ** 2) / (4 * g)


def special_x_coulomb_gas(g, L: int) -> Fraction:
    """Special-transition boundary dimension in Coulomb-gas form."""
    g = Fraction(g)
    return g * (L + 1) ** 2 / 4 - Fraction(3, 2) * (L + 1) + (9 - (g - 1) ** 2) / (4 * g)


def modified_kpz(gamma_sq, delta) -> Number:
    """KPZ map with the shifted linear coefficient (1 - gamma^2/2)."""
    return gamma_sq / 4 * delta * delta + (1 - gamma_sq / 2) * delta


def modified_kpz_inverse(gamma_sq, x) -> Number:
    """Positive inverse of :func:`modified_kpz`."""
    # gamma^2/4 D^2 + (1 - gamma^2/2) D - x = 0
    a = gamma_sq / 4
    b = 1 - gamma_sq / 2
    disc = b * b + 4 * a * x
    if disc < 0:
        raise NegativeDiscriminant(str(disc))
    root = math.sqrt(disc) if isinstance(disc, float) else sqrt_exact(disc)
    return (root - b) / (2 * a)


def ordinary_x(kappa, L: int) -> Number:
    k = _k(kappa)
    return Fraction(L) / (2 * k) * (2 * L + 4 - k)


def mixed_x(kappa, L: int) -> Number:
    """Mixed ordinary/special boundary dimension (ordinary shifted by -L/2)."""
    k = _k(kappa)
    _dilute(k)
    return Fraction(L) / k * (L + 2 - k)
