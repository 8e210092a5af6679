"""Closed-form scaling dimensions of L-leg vertices.

Bulk dimensions ``x_L`` and surface dimensions ``x_L^S`` for self-avoiding
walks, Theta-point chains, Brownian paths and mutually-avoiding walks, plus
the correlation exponent ``nu``.  Exact rationals throughout; the
``d = 4 - eps`` forms come back as :class:`~polynet.series.EpsilonSeries`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Union

from .series import EpsilonSeries

__all__ = [
    "UniversalityClass",
    "BoundaryCondition",
    "DimensionSetting",
    "UnsupportedCombination",
    "EXACT_2D",
    "nu",
    "x_bulk",
    "x_surface",
    "dimension",
    "theta_star_log_power",
    "hausdorff_dimensions",
    "HausdorffDimensions",
]

Exponent = Union[Fraction, EpsilonSeries]


class UnsupportedCombination(ValueError):
    """The requested (class, boundary condition, setting) has no exponent."""


class UniversalityClass(enum.Enum):
    SAW = "saw"
    THETA = "theta"
    BROWNIAN = "brownian"
    MUTUALLY_AVOIDING = "maw"

    @classmethod
    def parse(cls, text: str) -> "UniversalityClass":
        key = text.strip().lower()
        aliases = {"mutually_avoiding": "maw", "mutuallyavoiding": "maw", "θ": "theta",
                   "brown": "brownian", "rw": "brownian"}
        key = aliases.get(key, key)
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown universality class {text!r}")


class BoundaryCondition(enum.Enum):
    ORDINARY = "ordinary"
    SPECIAL = "special"
    MIXED = "mixed"  # ordinary on one side of the vertex, special on the other

    @classmethod
    def parse(cls, text: str) -> "BoundaryCondition":
        key = text.strip().lower()
        aliases = {"or": "ordinary", "ord": "ordinary", "sp": "special",
                   "o.s": "mixed", "os": "mixed", "mixed_ordinary_special": "mixed"}
        key = aliases.get(key, key)
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown boundary condition {text!r}")


@dataclass(frozen=True)
class DimensionSetting:
    """Where exponents are evaluated: exact 2D, a given dimension d, or d = 4 - eps."""

    kind: str  # "exact2d" | "general" | "epsilon"
    d: Optional[Fraction] = None
    order: Optional[int] = None

    def __post_init__(self):
        if self.kind == "exact2d":
            if self.d is not None or self.order is not None:
                raise ValueError("exact2d takes no parameters")
        elif self.kind == "general":
            if self.d is None or Fraction(self.d) <= 0:
                raise ValueError("general setting needs a positive rational d")
            object.__setattr__(self, "d", Fraction(self.d))
        elif self.kind == "epsilon":
            if self.order not in (1, 2):
                raise ValueError("epsilon order must be 1 or 2")
        else:
            raise ValueError(f"unknown setting kind {self.kind!r}")

    @classmethod
    def general(cls, d) -> "DimensionSetting":
        return cls("general", d=Fraction(d))

    @classmethod
    def epsilon(cls, order: int) -> "DimensionSetting":
        return cls("epsilon", order=order)

    @classmethod
    def parse(cls, text: str) -> "DimensionSetting":
        """Accepts ``exact2d``, ``d=<rational>``, ``eps1``/``eps2``."""
        t = text.strip().lower()
        if t in ("exact2d", "2d", "exact"):
            return EXACT_2D
        if t.startswith("d="):
            return cls.general(Fraction(t[2:]))
        if t in ("eps1", "epsilon1", "epsilon(1)"):
            return cls.epsilon(1)
        if t in ("eps2", "epsilon2", "epsilon(2)"):
            return cls.epsilon(2)
        raise ValueError(f"unknown dimension setting {text!r}")

    def __str__(self):
        if self.kind == "exact2d":
            return "exact2d"
        if self.kind == "general":
            return f"d={self.d}"
        return f"eps{self.order}"


EXACT_2D = DimensionSetting("exact2d")

_SAW, _THETA, _BROWN, _MAW = (UniversalityClass.SAW, UniversalityClass.THETA,
                              UniversalityClass.BROWNIAN, UniversalityClass.MUTUALLY_AVOIDING)


def dimension(setting: DimensionSetting) -> Exponent:
    """The space dimension d of a setting (a series in the eps settings)."""
    if setting.kind == "exact2d":
        return Fraction(2)
    if setting.kind == "general":
        return setting.d
    return EpsilonSeries.dimension(setting.order)


def _check_L(L: int):
    if not isinstance(L, int) or L < 1:
        raise ValueError(f"L must be a positive integer, got {L!r}")


def _unsupported(what: str, *parts) -> UnsupportedCombination:
    return UnsupportedCombination(f"{what} undefined for " + ", ".join(str(getattr(p, 'value', p)) for p in parts))


def _anomaly_free(setting: DimensionSetting) -> bool:
    return setting.kind == "general" and setting.d >= 4


def _brownian_bulk(L: int, d):
    return Fraction(L, 2) * (d - 2)


def _brownian_surface(L: int, d):
    return Fraction(L, 2) * d


def _saw_bulk_anomaly(L: int, order: int) -> EpsilonSeries:
    c1 = Fraction(L * (L - 1), 8)
    if order == 1:
        return EpsilonSeries((Fraction(0), c1))
    c2 = Fraction(1, 64) * Fraction(L, 4) * (-8 * L * L + 33 * L - 23)
    return EpsilonSeries((Fraction(0), c1, c2))


def _maw_bulk_anomaly(L: int, order: int) -> EpsilonSeries:
    c1 = Fraction(L * (L - 1), 4)
    if order == 1:
        return EpsilonSeries((Fraction(0), c1))
    # second-order coefficient exactly as printed: -(eps/4)^2 L(L-1)(2L-5)
    c2 = -Fraction(1, 16) * L * (L - 1) * (2 * L - 5)
    return EpsilonSeries((Fraction(0), c1, c2))


def nu(cls: UniversalityClass, setting: DimensionSetting = EXACT_2D) -> Exponent:
    """Correlation-length exponent nu."""
    if cls in (_BROWN, _MAW):
        if setting.kind == "epsilon":
            return EpsilonSeries.constant(Fraction(1, 2), setting.order)
        return Fraction(1, 2)
    if cls is _THETA:
        if setting.kind != "exact2d":
            raise _unsupported("nu", cls, setting)
        return Fraction(4, 7)
    # SAW
    if setting.kind == "exact2d":
        return Fraction(3, 4)
    if _anomaly_free(setting):
        return Fraction(1, 2)
    if setting.kind == "epsilon":
        # from x_2 = d - 1/nu
        return 1 / (dimension(setting) - x_bulk(2, cls, setting))
    raise _unsupported("nu", cls, setting)


def x_bulk(L: int, cls: UniversalityClass, setting: DimensionSetting = EXACT_2D) -> Exponent:
    """Bulk scaling dimension of an L-leg vertex."""
    _check_L(L)
    if cls is _BROWN:
        if setting.kind == "exact2d":
            return _brownian_bulk(L, Fraction(2))
        return _brownian_bulk(L, dimension(setting))
    if setting.kind == "exact2d":
        if cls is _SAW:
            return Fraction((3 * L - 2) * (3 * L + 2), 48)
        if cls is _THETA:
            return Fraction(L * L - 1, 12)
        return Fraction(4 * L * L - 1, 12)
    if cls is _THETA:
        raise _unsupported("x_bulk", cls, setting)
    if _anomaly_free(setting):
        return _brownian_bulk(L, setting.d)
    if setting.kind == "epsilon":
        base = _brownian_bulk(L, dimension(setting))
        if cls is _SAW:
            return base + _saw_bulk_anomaly(L, setting.order)
        return base + _maw_bulk_anomaly(L, setting.order)
    raise _unsupported("x_bulk", cls, setting)


def x_surface(L: int, cls: UniversalityClass,
              bc: BoundaryCondition = BoundaryCondition.ORDINARY,
              setting: DimensionSetting = EXACT_2D) -> Exponent:
    """Surface scaling dimension of an L-leg vertex on the boundary."""
    _check_L(L)
    if bc is not BoundaryCondition.ORDINARY:
        if cls not in (_SAW, _THETA) or setting.kind != "exact2d":
            raise _unsupported("x_surface", cls, bc, setting)
        if cls is _SAW:
            if bc is BoundaryCondition.SPECIAL:
                return Fraction(3, 8) * L * L - Fraction(3, 4) * L + Fraction(1, 3)
            return Fraction(L * (3 * L - 2), 8)
        if bc is BoundaryCondition.SPECIAL:
            return Fraction(L * (L - 1), 6)
        return Fraction(L * (L + 1), 6)

    if cls is _BROWN:
        return _brownian_surface(L, dimension(setting))
    if setting.kind == "exact2d":
        if cls is _SAW:
            return Fraction(L * (3 * L + 2), 8)
        if cls is _THETA:
            return Fraction((L + 1) * (L + 2), 6)
        return Fraction(L * (2 * L + 1), 3)
    if cls is _THETA:
        raise _unsupported("x_surface", cls, bc, setting)
    if _anomaly_free(setting):
        return _brownian_surface(L, setting.d)
    if cls is _SAW and setting.kind == "epsilon" and setting.order == 1:
        return _brownian_surface(L, dimension(setting)) + EpsilonSeries(
            (Fraction(0), Fraction(L * (L - 2), 8)))
    raise _unsupported("x_surface", cls, bc, setting)


def theta_star_log_power(L: int) -> Fraction:
    """Power of log N in the 3D Theta-point L-star partition function."""
    _check_L(L)
    return -Fraction(comb(L, 3), 22)


@dataclass(frozen=True)
class HausdorffDimensions:
    bulk_dim: Fraction
    adsorbed_dim: Optional[Fraction]


def hausdorff_dimensions(cls: UniversalityClass) -> HausdorffDimensions:
    """Fractal dimension of a 2D chain and, for SAWs, of its adsorbed set."""
    if cls not in (_SAW, _THETA):
        raise _unsupported("hausdorff_dimensions", cls)
    bulk = 2 - x_bulk(2, cls, EXACT_2D)
    adsorbed = None
    if cls is _SAW:
        adsorbed = 1 - x_surface(2, cls, BoundaryCondition.SPECIAL, EXACT_2D)
    return HausdorffDimensions(bulk, adsorbed)
