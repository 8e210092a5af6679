"""Exact identity suites behind ``polynet verify``.

Every suite is a function returning a :class:`SuiteResult`; nothing here
enumerates walks, so the whole registry runs in a few seconds.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Callable, Iterable, Optional

from . import network as netm
from . import sle_kpz as sk
from .network import VertexKind, gamma_exponent
from .series import EpsilonSeries
from .tables import (
    EXACT_2D,
    BoundaryCondition,
    DimensionSetting,
    UniversalityClass,
    hausdorff_dimensions,
    nu,
    x_bulk,
    x_surface,
)

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_all", "golden_values",
           "lbridge_closed_form"]

SAW, THETA = UniversalityClass.SAW, UniversalityClass.THETA
BROWN, MAW = UniversalityClass.BROWNIAN, UniversalityClass.MUTUALLY_AVOIDING
OR, SP, MX = BoundaryCondition.ORDINARY, BoundaryCondition.SPECIAL, BoundaryCondition.MIXED
EPS1, EPS2 = DimensionSetting.epsilon(1), DimensionSetting.epsilon(2)

RANDOM_SEED = 20240607
N_RANDOM = 1000
BROWNIAN_DIMS = (F(1), F(2), F(3), F(4), F(7, 2))


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, label: str):
        self.checks += 1
        if not ok:
            self.failures.append(label)

    def equal(self, got, want, label: str):
        self.check(got == want, f"{label}: got {got}, expected {want}")


# -- golden values ---------------------------------------------------------------

def golden_values() -> list[tuple[str, object, object]]:
    """(label, computed, expected) for every single configuration exponent."""
    rows = [("SAW chain", gamma_exponent(netm.single_chain(), SAW), F(43, 32))]
    for L in range(1, 10):
        rows.append((f"SAW star L={L} (gamma-1)", gamma_exponent(netm.star(L), SAW) - 1,
                     F(4 + 9 * L * (3 - L), 64)))
    rows += [
        ("SAW bridge (or)", gamma_exponent(netm.bridge(OR), SAW), F(9, 16)),
        ("SAW bridge (o.s)", gamma_exponent(netm.bridge(MX), SAW), F(15, 16)),
        ("SAW bridge (sp)", gamma_exponent(netm.bridge(SP), SAW), F(17, 16)),
        ("Theta chain", gamma_exponent(netm.single_chain(), THETA), F(8, 7)),
        ("Theta TAW (or)", gamma_exponent(netm.taw(OR), THETA), F(4, 7)),
        ("Theta arch (or)", gamma_exponent(netm.arch(OR), THETA), F(-4, 7)),
        ("Theta TAW (sp)", gamma_exponent(netm.taw(SP), THETA), F(8, 7)),
        ("Theta arch (sp)", gamma_exponent(netm.arch(SP), THETA), F(4, 7)),
        ("Theta bridge (or)", gamma_exponent(netm.bridge(OR), THETA), F(0)),
        ("Theta bridge (sp)", gamma_exponent(netm.bridge(SP), THETA), F(4, 7)),
        ("Theta TAW (o.s)", gamma_exponent(netm.taw(MX), THETA), F(20, 21)),
        ("Theta bridge (o.s)", gamma_exponent(netm.bridge(MX), THETA), F(8, 21)),
    ]
    return rows


def lbridge_closed_form(cls: UniversalityClass, bc: BoundaryCondition, L: int) -> F:
    """Printed closed forms for the L-arm all-bridge star."""
    if cls is SAW:
        return {OR: F(9, 32) * L * (3 - L), MX: F(3, 32) * L * (13 - 3 * L),
                SP: F(51 * L - 9 * L * L - 8, 32)}[bc]
    return {SP: F(2, 21) * L * (7 - L), MX: F(2, 21) * L * (5 - L),
            OR: F(2, 21) * (3 * L - L * L - 2)}[bc]


def _golden(r: SuiteResult):
    for label, got, want in golden_values():
        r.equal(got, want, label)


def _lbridge_families(r: SuiteResult):
    # compared literally; see lbridge_offset for the relation that does hold
    for cls in (SAW, THETA):
        for bc in (OR, MX, SP):
            for L in range(1, 11):
                got = gamma_exponent(netm.multi_bridge_star(L, bc), cls)
                r.equal(got, lbridge_closed_form(cls, bc, L),
                        f"{cls.value} {bc.value} {L}-bridge star")


def _lbridge_offset(r: SuiteResult):
    # the closed forms equal the network exponent without the -(N-1) term
    for cls in (SAW, THETA):
        for bc in (OR, MX, SP):
            for L in range(1, 11):
                got = gamma_exponent(netm.multi_bridge_star(L, bc), cls) + (L - 1)
                r.equal(got, lbridge_closed_form(cls, bc, L),
                        f"{cls.value} {bc.value} {L}-bridge star + (L-1)")


# -- identities ------------------------------------------------------------------

def _identities(r: SuiteResult):
    chain = netm.single_chain()
    for cls, bc, setting in ((SAW, OR, EXACT_2D), (SAW, SP, EXACT_2D), (THETA, OR, EXACT_2D),
                             (THETA, SP, EXACT_2D), (SAW, OR, EPS1)):
        g = gamma_exponent(chain, cls, setting)
        g1 = gamma_exponent(netm.taw(bc), cls, setting)
        g11 = gamma_exponent(netm.arch(bc), cls, setting)
        r.equal(2 * g1 - g11, g + nu(cls, setting), f"Barber {cls.value} {bc.value} {setting}")
    for cls in (SAW, THETA):
        n = nu(cls)
        r.equal(gamma_exponent(netm.bridge(OR), cls),
                gamma_exponent(netm.arch(OR), cls) + n, f"bridge = arch + nu ({cls.value})")
        r.equal(gamma_exponent(netm.bridge(SP), cls),
                (gamma_exponent(netm.arch(SP), cls) + gamma_exponent(netm.arch(OR), cls)) / 2 + n,
                f"special bridge relation ({cls.value})")
    r.equal(gamma_exponent(netm.bridge(OR), SAW, EPS1),
            gamma_exponent(netm.arch(OR), SAW, EPS1) + nu(SAW, EPS1), "bridge = arch + nu (eps1)")

    for cls, setting in ((SAW, EXACT_2D), (THETA, EXACT_2D), (SAW, EPS1), (SAW, EPS2),
                         (SAW, DimensionSetting.general(5))):
        d = 2 if setting is EXACT_2D else (F(5) if setting.kind == "general"
                                          else EpsilonSeries.dimension(setting.order))
        r.equal(x_bulk(2, cls, setting), d - 1 / nu(cls, setting), f"x2 = d - 1/nu {cls.value} {setting}")
    r.equal(x_surface(2, SAW, OR), F(2), "x2^S = d SAW")
    r.equal(x_surface(2, THETA, OR), F(2), "x2^S = d Theta")
    for d in BROWNIAN_DIMS:
        r.equal(x_surface(2, BROWN, OR, DimensionSetting.general(d)), d, f"x2^S = d Brownian d={d}")
    r.equal(x_surface(2, SAW, OR, EPS1), EpsilonSeries.dimension(1), "x2^S = d SAW eps1")

    for L in range(1, 51):
        r.equal(x_surface(L, SAW, OR) - x_surface(L, SAW, MX), F(L, 2), f"or - mixed shift L={L}")
        r.equal(x_surface(L, THETA, MX), x_surface(L + 1, THETA, SP), f"Theta mixed shift L={L}")
        r.equal(x_surface(L, THETA, OR), x_surface(L + 2, THETA, SP), f"Theta ordinary shift L={L}")
    for L in range(1, 21):
        for cls in (SAW, MAW):
            for setting in (EPS1, EPS2):
                r.equal(x_bulk(L, cls, setting).at(0), x_bulk(L, BROWN, DimensionSetting.general(4)),
                        f"eps->0 bulk {cls.value} L={L} {setting}")
        r.equal(x_surface(L, SAW, OR, EPS1).at(0), x_surface(L, BROWN, OR, DimensionSetting.general(4)),
                f"eps->0 surface L={L}")
    anomaly = x_surface(2, SAW, OR, EPS1) - x_surface(2, BROWN, OR, EPS1)
    r.equal(anomaly[1], F(0), "first-order surface correction vanishes at L=2")
    h = hausdorff_dimensions(SAW)
    r.equal((h.bulk_dim, h.adsorbed_dim), (F(4, 3), F(2, 3)), "SAW Hausdorff dimensions")
    r.equal(h.adsorbed_dim / h.bulk_dim, F(1, 2), "crossover exponent 1/2")
    r.equal(hausdorff_dimensions(THETA).bulk_dim, F(7, 4), "Theta Hausdorff dimension")


def _eight_chain(r: SuiteResult):
    gs = eight_chain_network(bridge=False)
    gb = eight_chain_network(bridge=True)
    c = netm.census(gs)
    r.equal((c.N_chains, c.V, c.V_S, c.loops, c.L_S), (8, 4, 3, 2, 6), "eight-chain census")
    for cls in (SAW, THETA):
        s = netm.bridge_shift_check(gb, gs, cls)
        r.check(s.equal, f"eight-chain bridge shift {cls.value}: {s.difference} vs {s.expected_nu}")
    r.equal(gamma_exponent(gs, SAW), F(-33, 4), "eight-chain surface network")
    r.equal(gamma_exponent(gb, SAW), F(-15, 2), "eight-chain bridge network")


def eight_chain_network(bridge: bool = False) -> netm.NetworkTopology:
    """Surface network with 8 chains; ``bridge`` lifts the 3-leg surface vertex."""
    verts = [("b1", "bulk"), ("b3a", "bulk"), ("b3b", "bulk"), ("b3c", "bulk"),
             ("s1", "surface"), ("s2", "surface"), ("s3", "bridge" if bridge else "surface")]
    chains = [("b1", "b3a"), ("b3a", "b3b"), ("b3a", "s3"), ("b3b", "b3c"), ("b3b", "s2"),
              ("b3c", "s3"), ("b3c", "s2"), ("s3", "s1")]
    return netm.NetworkTopology.build(verts, chains)


def _brownian(r: SuiteResult):
    rng = random.Random(RANDOM_SEED)
    for i in range(N_RANDOM):
        net = netm.random_network(rng, require_surface=(i % 2 == 0))
        for d in BROWNIAN_DIMS:
            res = netm.brownian_reduction_check(net, d)
            r.check(res.equal, f"Brownian reduction d={d}: {res.gamma_full} vs {res.gamma_reduced}"
                               f" for\n{netm.format_network(net)}")


def _bridge_shift(r: SuiteResult):
    rng = random.Random(RANDOM_SEED + 1)
    kinds = (VertexKind.SURFACE, VertexKind.SURFACE, VertexKind.SURFACE_SPECIAL,
             VertexKind.SURFACE_MIXED)
    done = 0
    while done < N_RANDOM:
        net = netm.random_network(rng, require_surface=True, kinds=kinds, surface_prob=0.6)
        plain = [v for v, k in net.vertices if k is VertexKind.SURFACE]
        n_surface = sum(1 for _, k in net.vertices if k.on_surface)
        if not plain or n_surface < 2:
            continue
        done += 1
        k = rng.randint(1, min(len(plain), n_surface - 1))
        chosen = rng.sample(plain, k)
        moved = netm.to_bridges(net, chosen)
        has_special = any(kd is not VertexKind.SURFACE and kd.on_surface for _, kd in net.vertices)
        for cls in (SAW, THETA):
            diff = gamma_exponent(moved, cls) - gamma_exponent(net, cls)
            r.equal(diff, k * nu(cls), f"{k}-bridge shift {cls.value}")
        if not has_special:
            diff = gamma_exponent(moved, SAW, EPS1) - gamma_exponent(net, SAW, EPS1)
            r.equal(diff, k * nu(SAW, EPS1), f"{k}-bridge shift eps1")
        single = netm.to_bridges(net, chosen[:1])
        for cls in (SAW, THETA):
            r.check(netm.bridge_shift_check(single, net, cls).equal, f"bridge_shift_check {cls.value}")


# -- SLE / KPZ ---------------------------------------------------------------------

def _kpz_families(r: SuiteResult):
    k83, k6 = F(8, 3), F(6)
    for L in range(1, 51):
        r.equal(sk.x_bulk_Lj(k83, L, 0), x_bulk(L, SAW), f"kappa=8/3 bulk L={L}")
        r.equal(2 * sk.kpz_v(k83, F(3 * L, 4)), x_bulk(L, SAW), f"kappa=8/3 bulk via V L={L}")
        r.equal(sk.x_surface_Lj(k83, L, 0), x_surface(L, SAW, OR), f"kappa=8/3 ordinary L={L}")
        r.equal(sk.x_L_rho(k83, L, 0, 0), x_surface(L, SAW, OR), f"kappa=8/3 rho=0 L={L}")
        r.equal(sk.x_L_rho(k83, L, -k83 / 2, -k83 / 2), x_surface(L, SAW, SP), f"kappa=8/3 special L={L}")
        r.equal(sk.special_x(k83, L), x_surface(L, SAW, SP), f"kappa=8/3 special_x L={L}")
        r.equal(sk.mixed_x(k83, L), x_surface(L, SAW, MX), f"kappa=8/3 mixed L={L}")
        r.equal(sk.x_bulk_Lj(k6, L, 0), x_bulk(L, THETA), f"kappa=6 bulk L={L}")
        r.equal(sk.x_bulk_Lj(k6, L, 0), F(L * L - 1, 12), f"percolation bulk L={L}")
        r.equal(sk.x_surface_Lj(k6, L, 0), x_surface(L, THETA, SP), f"kappa=6 special L={L}")
        r.equal(sk.x_surface_Lj(k6, L, 1), x_surface(L, THETA, MX), f"kappa=6 mixed L={L}")
        r.equal(sk.x_surface_Lj(k6, L, 1), F(L * (L + 1), 6), f"percolation surface L={L}")
        r.equal(sk.x_surface_Lj(k6, L, 2), x_surface(L, THETA, OR), f"kappa=6 ordinary L={L}")
        r.equal(sk.x_bulk_Lj(k6, L, L), x_bulk(L, MAW), f"Brownian bulk endpoint L={L}")
        r.equal(sk.x_surface_Lj(k6, L, L + 1), x_surface(L, MAW, OR), f"Brownian surface endpoint L={L}")
        r.equal(sk.kpz_u(k83, F(L)), x_surface(L, MAW, OR), f"quantum additivity surface L={L}")
        r.equal(2 * sk.kpz_v(k83, F(L)), x_bulk(L, MAW), f"quantum additivity bulk L={L}")
        for k in (k83, k6):
            r.equal(sk.x_surface_Lj(k, L, 0), sk.kpz_u(k, F(2 * L) / k), f"j=0 collapse kappa={k} L={L}")
            r.equal(sk.x_surface_Lj(k, L, 0), sk.ordinary_x(k, L), f"j=0 closed form kappa={k} L={L}")
    for k in (k83, F(3), F(4), k6, F(8)):
        for x in (F(0), F(1, 3), F(5, 8), F(2), F(35, 12)):
            r.equal(sk.kpz_u(k, sk.kpz_u_inverse(k, x)), x, f"U inverse round trip kappa={k} x={x}")


def _duality(r: SuiteResult):
    for kp in (F(5), F(6), F(8), F(16, 3)):
        r.equal(sk.x_surface_Lj(kp, 2, 2), sk.x_surface_Lj(16 / kp, 2, 0), f"duality kappa'={kp}")


def _welding(r: SuiteResult):
    for k in (F(5), F(6), F(8)):
        for L in range(1, 11):
            for j in range(0, L + 2):
                r.check(sk.welding_consistency(k, L, j), f"welding kappa={k} L={L} j={j}")
            for j in range(0, L + 1):
                wd, wdt = sk.wedge_dims_closed_form(k, L, j)
                cd, cdt = sk.cone_dims_closed_form(k, L, j)
                r.equal(wd, 2 * cd, f"wedge = 2 cone kappa={k} L={L} j={j}")
                r.equal(wdt, 2 * cdt - (1 - 4 / k), f"dual wedge/cone kappa={k} L={L} j={j}")
    for k in (F(2), F(8, 3), F(3), F(4)):
        for L in range(1, 11):
            for rho1, rho2 in ((F(0), F(0)), (-k / 2, -k / 2), (-k / 2, F(0)), (F(1), F(1, 2))):
                std, _ = sk.weight_to_dims(sk.wedge_weight_rho(k, L, rho1, rho2), k)
                r.equal(std.value, (2 * L + rho1 + rho2) / k, f"simple wedge Delta kappa={k} L={L}")
                r.equal(sk.kpz_u(k, std.value), sk.x_L_rho(k, L, rho1, rho2),
                        f"simple wedge KPZ kappa={k} L={L}")


def _modified_kpz(r: SuiteResult):
    for k in (F(2), F(8, 3), F(3), F(4)):
        for L in range(1, 21):
            D = F(2 * L) / k
            r.equal(sk.modified_kpz(k, D), sk.mixed_x(k, L), f"modified KPZ mixed kappa={k} L={L}")
            r.equal(sk.standard_kpz(k, D), sk.ordinary_x(k, L), f"standard KPZ ordinary kappa={k} L={L}")
            r.equal(sk.modified_kpz_inverse(k, sk.mixed_x(k, L)), D, f"modified inverse kappa={k} L={L}")
    for L in range(1, 21):
        r.equal(sk.modified_kpz(F(8, 3), F(3 * L, 4)), F(L * (3 * L - 2), 8), f"modified KPZ 8/3 L={L}")


def _special(r: SuiteResult):
    for k in (F(2), F(8, 3), F(3), F(4)):
        g = 4 / k
        for L in range(1, 21):
            a = sk.special_x(k, L)
            r.equal(sk.special_x_coulomb_gas(g, L), a, f"special Coulomb gas kappa={k} L={L}")
            r.equal(sk.kac_weight(g, L + 1, 3), a, f"special Kac h(L+1,3) kappa={k} L={L}")
            r.equal(sk.x_L_rho(k, L, -k / 2, -k / 2), a, f"special rho=-kappa/2 kappa={k} L={L}")
    for L in range(1, 21):
        r.equal(sk.x_L_rho(F(8, 3), L, F(-4, 3), 0), sk.mixed_x(F(8, 3), L), f"mixed = rho at 8/3 L={L}")
    r.check(sk.x_L_rho(F(3), 1, F(-3, 2), 0) != sk.mixed_x(F(3), 1), "mixed differs from rho at kappa=3")


SUITES: dict[str, Callable[[SuiteResult], None]] = {
    "golden": _golden,
    "lbridge_families": _lbridge_families,
    "lbridge_offset": _lbridge_offset,
    "eight_chain": _eight_chain,
    "identities": _identities,
    "brownian_reduction": _brownian,
    "bridge_shift": _bridge_shift,
    "kpz_families": _kpz_families,
    "duality": _duality,
    "welding": _welding,
    "modified_kpz": _modified_kpz,
    "special_triple": _special,
}


def run_suite(name: str) -> SuiteResult:
    result = SuiteResult(name)
    t0 = time.perf_counter()
    try:
        SUITES[name](result)
    except Exception as exc:  # a crash is a failure, not an abort of the whole run
        result.failures.append(f"raised {type(exc).__name__}: {exc}")
    result.seconds = time.perf_counter() - t0
    return result


def run_all(names: Optional[Iterable[str]] = None) -> list[SuiteResult]:
    return [run_suite(n) for n in (names or SUITES)]
