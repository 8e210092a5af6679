"""Polymer network topologies and their configuration exponents.

A network is a connected multigraph.  Each vertex is in the bulk, on the
confining surface (ordinary, special or mixed boundary condition), or a
bridge vertex sitting under its own movable hyperplane.  Chains are edges;
self-loops are allowed and add 2 to the degree.

The entropic exponent follows from a vertex census: a volume term for each
free vertex, a (d-1) term for each surface vertex beyond the fixed one, an
``x_L`` penalty per vertex and ``-(N-1)`` for monodispersity.
"""
from __future__ import annotations

import enum
import random
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .series import EpsilonSeries
from .tables import (
    BoundaryCondition,
    DimensionSetting,
    UniversalityClass,
    UnsupportedCombination,
    dimension,
    nu,
    x_bulk,
    x_surface,
)

__all__ = [
    "VertexKind",
    "NetworkTopology",
    "VertexCensus",
    "NetworkError",
    "NetworkSyntaxError",
    "DisconnectedNetwork",
    "UnknownVertexReference",
    "IsolatedVertex",
    "DegreeCapExceeded",
    "BridgeInBulkNetwork",
    "UnsupportedNetwork",
    "NotABridgePair",
    "DEFAULT_DEGREE_CAP",
    "parse_network",
    "format_network",
    "census",
    "gamma_exponent",
    "brownian_reduction_check",
    "bridge_shift_check",
    "to_bridges",
    "with_surface_bc",
    "random_network",
    "single_chain",
    "star",
    "taw",
    "arch",
    "bridge",
    "multi_bridge_star",
]

DEFAULT_DEGREE_CAP = 20


class VertexKind(enum.Enum):
    BULK = "bulk"
    SURFACE = "surface"
    SURFACE_SPECIAL = "surface_special"
    SURFACE_MIXED = "surface_mixed"
    BRIDGE = "bridge"

    @property
    def on_surface(self) -> bool:
        return self in (VertexKind.SURFACE, VertexKind.SURFACE_SPECIAL, VertexKind.SURFACE_MIXED)


_BC_KIND = {
    BoundaryCondition.ORDINARY: VertexKind.SURFACE,
    BoundaryCondition.SPECIAL: VertexKind.SURFACE_SPECIAL,
    BoundaryCondition.MIXED: VertexKind.SURFACE_MIXED,
}
_KIND_BC = {v: k for k, v in _BC_KIND.items()}


class NetworkError(ValueError):
    pass


class NetworkSyntaxError(NetworkError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DisconnectedNetwork(NetworkError):
    pass


class UnknownVertexReference(NetworkError):
    pass


class IsolatedVertex(NetworkError):
    pass


class DegreeCapExceeded(NetworkError):
    pass


class BridgeInBulkNetwork(NetworkError):
    pass


class UnsupportedNetwork(NetworkError):
    pass


class NotABridgePair(NetworkError):
    pass


@dataclass(frozen=True)
class NetworkTopology:
    """Validated, immutable network.  Build with :meth:`build` or :func:`parse_network`."""

    vertices: tuple[tuple[str, VertexKind], ...]
    chains: tuple[tuple[str, str], ...]
    degree_cap: int = DEFAULT_DEGREE_CAP

    @classmethod
    def build(cls, vertices: Iterable[tuple[str, "VertexKind | str"]],
              chains: Iterable[tuple[str, str]],
              degree_cap: int = DEFAULT_DEGREE_CAP) -> "NetworkTopology":
        verts = tuple((vid, k if isinstance(k, VertexKind) else VertexKind(k)) for vid, k in vertices)
        # unordered pairs, kept in a canonical order so equal multisets compare equal
        ch = tuple(sorted(tuple(sorted(c)) for c in chains))
        net = cls(verts, ch, degree_cap)
        net.validate()
        return net

    @property
    def kinds(self) -> dict[str, VertexKind]:
        return dict(self.vertices)

    def degrees(self) -> dict[str, int]:
        deg = {vid: 0 for vid, _ in self.vertices}
        for a, b in self.chains:
            deg[a] += 1
            deg[b] += 1
        return deg

    @property
    def is_surface_network(self) -> bool:
        return any(k.on_surface for _, k in self.vertices)

    def validate(self) -> None:
        ids = [vid for vid, _ in self.vertices]
        if len(set(ids)) != len(ids):
            dup = [v for v, c in Counter(ids).items() if c > 1]
            raise NetworkError(f"duplicate vertex id(s): {', '.join(dup)}")
        if not ids:
            raise NetworkError("network has no vertices")
        if not self.chains:
            raise NetworkError("network has no chains")
        known = set(ids)
        for a, b in self.chains:
            for v in (a, b):
                if v not in known:
                    raise UnknownVertexReference(f"chain references undeclared vertex {v!r}")
        deg = self.degrees()
        for vid, d in deg.items():
            if d == 0:
                raise IsolatedVertex(f"vertex {vid!r} has no chain attached")
            if d > self.degree_cap:
                raise DegreeCapExceeded(f"vertex {vid!r} has degree {d} > cap {self.degree_cap}")
        adj = defaultdict(set)
        for a, b in self.chains:
            adj[a].add(b)
            adj[b].add(a)
        seen = {ids[0]}
        stack = [ids[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(ids):
            missing = sorted(known - seen)
            raise DisconnectedNetwork(f"vertices not connected to {ids[0]!r}: {', '.join(missing)}")

    def replace_kinds(self, changes: Mapping[str, VertexKind]) -> "NetworkTopology":
        verts = [(vid, changes.get(vid, k)) for vid, k in self.vertices]
        return NetworkTopology.build(verts, self.chains, self.degree_cap)


# -- file format ---------------------------------------------------------------

_ID = re.compile(r"[A-Za-z0-9_]+\Z")


def parse_network(text: str, degree_cap: int = DEFAULT_DEGREE_CAP) -> NetworkTopology:
    """Parse the line-oriented network format::

        vertex <id> <bulk|surface|surface_special|surface_mixed|bridge>
        chain  <id> <id>

    ``#`` starts a comment.
    """
    vertices: list[tuple[str, VertexKind]] = []
    chains: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        keyword, col = tokens[0]
        if keyword == "vertex":
            if len(tokens) != 3:
                raise NetworkSyntaxError("expected 'vertex <id> <kind>'", lineno, col)
            (vid, vcol), (kind, kcol) = tokens[1], tokens[2]
            if not _ID.match(vid):
                raise NetworkSyntaxError(f"bad vertex id {vid!r}", lineno, vcol)
            try:
                vk = VertexKind(kind)
            except ValueError:
                raise NetworkSyntaxError(f"unknown vertex kind {kind!r}", lineno, kcol) from None
            if any(v == vid for v, _ in vertices):
                raise NetworkSyntaxError(f"vertex {vid!r} declared twice", lineno, vcol)
            vertices.append((vid, vk))
        elif keyword == "chain":
            if len(tokens) != 3:
                raise NetworkSyntaxError("expected 'chain <id> <id>'", lineno, col)
            for tok, tcol in tokens[1:]:
                if not _ID.match(tok):
                    raise NetworkSyntaxError(f"bad vertex id {tok!r}", lineno, tcol)
            chains.append((tokens[1][0], tokens[2][0]))
        else:
            raise NetworkSyntaxError(f"unknown keyword {keyword!r}", lineno, col)
    if not vertices:
        raise NetworkError("network has no vertices")
    return NetworkTopology.build(vertices, chains, degree_cap)


def format_network(net: NetworkTopology) -> str:
    lines = [f"vertex {vid} {k.value}" for vid, k in net.vertices]
    lines += [f"chain {a} {b}" for a, b in net.chains]
    return "\n".join(lines) + "\n"


# -- census --------------------------------------------------------------------

@dataclass(frozen=True)
class VertexCensus:
    n_bulk: Mapping[int, int]
    n_surface: Mapping[int, int]
    n_special: Mapping[int, int]
    n_mixed: Mapping[int, int]
    n_bridge: Mapping[int, int]
    V: int
    V_S: int
    N_chains: int
    loops: int
    L_S: int

    def all_legs(self) -> Counter:
        total = Counter()
        for m in (self.n_bulk, self.n_surface, self.n_special, self.n_mixed, self.n_bridge):
            total.update(m)
        return total


def census(net: NetworkTopology) -> VertexCensus:
    deg = net.degrees()
    maps = {k: Counter() for k in VertexKind}
    for vid, kind in net.vertices:
        maps[kind][deg[vid]] += 1
    n_b, n_s = maps[VertexKind.BULK], maps[VertexKind.SURFACE]
    n_sp, n_mx = maps[VertexKind.SURFACE_SPECIAL], maps[VertexKind.SURFACE_MIXED]
    n_br = maps[VertexKind.BRIDGE]
    V = sum(n_b.values()) + sum(n_br.values())
    V_S = sum(n_s.values()) + sum(n_sp.values()) + sum(n_mx.values())
    legs = Counter()
    for m in maps.values():
        legs.update(m)
    twice_n = sum(L * c for L, c in legs.items())
    assert twice_n % 2 == 0
    N = twice_n // 2
    assert N == len(net.chains)
    loops = N - (V + V_S) + 1
    half_excess = sum((L - 2) * c for L, c in legs.items())
    if Fraction(half_excess, 2) + 1 != loops:
        raise AssertionError(f"loop count mismatch: cycle rank {loops} vs leg formula "
                             f"{Fraction(half_excess, 2) + 1}")
    L_S = sum(L * c for m in (n_s, n_sp, n_mx) for L, c in m.items())
    freeze = lambda c: dict(sorted(c.items()))
    return VertexCensus(freeze(n_b), freeze(n_s), freeze(n_sp), freeze(n_mx), freeze(n_br),
                        V, V_S, N, loops, L_S)


# -- configuration exponent ----------------------------------------------------------

def gamma_exponent(net: NetworkTopology, cls: UniversalityClass,
                   setting: DimensionSetting = DimensionSetting("exact2d")):
    """Configuration exponent gamma_G of a monodisperse network."""
    c = census(net)
    d = dimension(setting)
    nu_ = nu(cls, setting)
    penalty = sum((cnt * x_bulk(L, cls, setting) for L, cnt in c.n_bulk.items()), Fraction(0))
    if c.V_S == 0:
        if c.n_bridge:
            raise BridgeInBulkNetwork("bridge vertices need at least one surface vertex")
        volume = d * (c.V - 1)
    else:
        volume = d * c.V + (d - 1) * (c.V_S - 1)
        ordinary = Counter(c.n_surface)
        ordinary.update(c.n_bridge)  # bridges see an ordinary virtual hyperplane
        for L, cnt in ordinary.items():
            penalty = penalty + cnt * x_surface(L, cls, BoundaryCondition.ORDINARY, setting)
        for L, cnt in c.n_special.items():
            penalty = penalty + cnt * x_surface(L, cls, BoundaryCondition.SPECIAL, setting)
        for L, cnt in c.n_mixed.items():
            penalty = penalty + cnt * x_surface(L, cls, BoundaryCondition.MIXED, setting)
    return nu_ * (volume - penalty) - (c.N_chains - 1)


@dataclass(frozen=True)
class BrownianReduction:
    gamma_full: Fraction
    gamma_reduced: Fraction
    equal: bool


def brownian_reduction_check(net: NetworkTopology, d) -> BrownianReduction:
    """Compare the general formula with the loop-count closed form for random walks."""
    c = census(net)
    if c.n_bridge or c.n_special or c.n_mixed:
        raise UnsupportedNetwork("Brownian reduction covers bulk and ordinary surface vertices only")
    d = Fraction(d)
    full = gamma_exponent(net, UniversalityClass.BROWNIAN, DimensionSetting.general(d))
    reduced = 1 - c.loops * d / 2
    if c.V_S:
        reduced -= Fraction(c.V_S - 1, 2) + Fraction(c.L_S, 2)
    return BrownianReduction(full, reduced, full == reduced)


@dataclass(frozen=True)
class BridgeShift:
    difference: object
    expected_nu: object
    equal: bool


def bridge_shift_check(net_b: NetworkTopology, net_s: NetworkTopology,
                       cls: UniversalityClass,
                       setting: DimensionSetting = DimensionSetting("exact2d")) -> BridgeShift:
    """gamma(net_b) - gamma(net_s) against nu, for a single surface -> bridge move."""
    if sorted(net_b.chains) != sorted(net_s.chains):
        raise NotABridgePair("chain multisets differ")
    kb, ks = net_b.kinds, net_s.kinds
    if set(kb) != set(ks):
        raise NotABridgePair("vertex sets differ")
    changed = [v for v in kb if kb[v] is not ks[v]]
    if len(changed) != 1 or ks[changed[0]] is not VertexKind.SURFACE \
            or kb[changed[0]] is not VertexKind.BRIDGE:
        raise NotABridgePair("networks must differ by exactly one surface -> bridge vertex")
    diff = gamma_exponent(net_b, cls, setting) - gamma_exponent(net_s, cls, setting)
    expected = nu(cls, setting)
    return BridgeShift(diff, expected, diff == expected)


def to_bridges(net: NetworkTopology, ids: Iterable[str]) -> NetworkTopology:
    """Turn the given ordinary surface vertices into bridge vertices."""
    kinds = net.kinds
    changes = {}
    for v in ids:
        if kinds[v] is not VertexKind.SURFACE:
            raise NotABridgePair(f"vertex {v!r} is not an ordinary surface vertex")
        changes[v] = VertexKind.BRIDGE
    return net.replace_kinds(changes)


def with_surface_bc(net: NetworkTopology, bc: BoundaryCondition) -> NetworkTopology:
    """Apply a boundary condition to every plain ``surface`` vertex."""
    target = _BC_KIND[bc]
    return net.replace_kinds({vid: target for vid, k in net.vertices if k is VertexKind.SURFACE})


# -- standard networks ---------------------------------------------------------

def single_chain() -> NetworkTopology:
    return NetworkTopology.build([("a", "bulk"), ("b", "bulk")], [("a", "b")])


def star(L: int) -> NetworkTopology:
    """Bulk L-star: one L-leg core, L free ends."""
    verts = [("c", "bulk")] + [(f"e{i}", "bulk") for i in range(L)]
    return NetworkTopology.build(verts, [("c", f"e{i}") for i in range(L)])


def _kind(bc: BoundaryCondition) -> VertexKind:
    return _BC_KIND[bc]


def taw(bc: BoundaryCondition = BoundaryCondition.ORDINARY) -> NetworkTopology:
    """Terminally attached walk: one end on the surface, one free."""
    return NetworkTopology.build([("s", _kind(bc)), ("e", "bulk")], [("s", "e")])


def arch(bc: BoundaryCondition = BoundaryCondition.ORDINARY,
         other: Optional[BoundaryCondition] = None) -> NetworkTopology:
    other = bc if other is None else other
    return NetworkTopology.build([("s", _kind(bc)), ("t", _kind(other))], [("s", "t")])


def bridge(bc: BoundaryCondition = BoundaryCondition.ORDINARY) -> NetworkTopology:
    """Single bridge: anchored end with boundary condition ``bc``, top end a bridge vertex."""
    return NetworkTopology.build([("s", _kind(bc)), ("t", "bridge")], [("s", "t")])


def multi_bridge_star(L: int, bc: BoundaryCondition = BoundaryCondition.ORDINARY) -> NetworkTopology:
    """Surface L-star whose every arm ends in its own bridge vertex."""
    verts = [("c", _kind(bc))] + [(f"t{i}", "bridge") for i in range(L)]
    return NetworkTopology.build(verts, [("c", f"t{i}") for i in range(L)])


def random_network(rng: random.Random, *, max_vertices: int = 8, max_extra: int = 4,
                   surface_prob: float = 0.4, kinds: Sequence[VertexKind] = (),
                   require_surface: Optional[bool] = None,
                   degree_cap: int = DEFAULT_DEGREE_CAP) -> NetworkTopology:
    """A random connected multigraph: random spanning tree plus extra chains/self-loops.

    ``kinds``, when given, are the vertex kinds drawn uniformly for surface
    vertices (default: plain ``surface``).
    """
    surface_kinds = list(kinds) or [VertexKind.SURFACE]
    while True:
        n = rng.randint(1, max_vertices)
        edges = [(f"v{i}", f"v{rng.randrange(i)}") for i in range(1, n)]
        for _ in range(rng.randint(0 if n > 1 else 1, max_extra)):
            a, b = rng.randrange(n), rng.randrange(n)
            edges.append((f"v{a}", f"v{b}"))
        verts = []
        for i in range(n):
            if rng.random() < surface_prob:
                verts.append((f"v{i}", rng.choice(surface_kinds)))
            else:
                verts.append((f"v{i}", VertexKind.BULK))
        has_surface = any(k.on_surface for _, k in verts)
        if require_surface is not None and has_surface != require_surface:
            if require_surface:
                i = rng.randrange(n)
                verts[i] = (f"v{i}", rng.choice(surface_kinds))
            else:
                verts = [(v, VertexKind.BULK) for v, _ in verts]
        deg = Counter()
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        if max(deg.values()) > degree_cap:
            continue
        return NetworkTopology.build(verts, edges, degree_cap)
