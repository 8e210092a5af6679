"""Exact enumeration of self-avoiding walk ensembles on 2D lattices.

Square and hexagonal lattices; the hexagonal lattice lives on the brick-wall
embedding: every site ``(x, y)`` has horizontal neighbours ``(x +- 1, y)``,
and a vertical bond up if ``x + y`` is even, down otherwise.  The surface is
the row ``y = 0`` (a zigzag edge of the honeycomb)::

        y=1   o---o---o---o---o
              |       |       |
        y=0   o---o---o---o---o      <- surface, half-space is y >= 0
              ^ x=0   ^ x=2
      (even-x surface sites carry the bond up; odd-x ones only run sideways)

Ensembles (walks start at the origin, a surface site with an upward bond):

* ``free``     all SAWs.  Square: first step fixed, counts multiplied by 4.
* ``taw``      terminally attached: every site has y >= 0.
* ``arch``     TAW whose last site is also on y = 0.
* ``bridge``   y(w0) < y(wi) <= y(wN) for every 1 <= i <= N.
* ``polygon``  self-avoiding polygons in y >= 0 touching y = 0, counted up to
               horizontal lattice translation.  ``unit`` weighting counts each
               polygon once; ``contact`` weights it by its number of surface
               sites (choice of a surface root).

A surface fugacity ``a`` weights a walk by ``a**m`` where ``m`` counts
surface sites other than the anchor (all surface sites for polygons).
Censuses keep the full contact histogram, so any fugacity can be applied
after the fact.

The search is a depth-first backtracking over an occupancy grid, compiled
with numba.  Parallel runs split the tree into depth-k prefixes, search them
on a thread pool (the kernel releases the GIL) and sum the per-prefix
histograms in prefix order.
"""
from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numba
import numpy as np

from .exact import ExactScalar, Radical, as_exact, format_exact

__all__ = [
    "Lattice",
    "EnsembleKind",
    "Weighting",
    "Ensemble",
    "WalkCensus",
    "NMaxTooLarge",
    "InvalidFugacity",
    "N_MAX_LIMIT",
    "ORACLE_N_MAX",
    "enumerate_walks",
    "oracle_enumerate",
    "census_to_csv",
    "census_from_csv",
    "default_threads",
]

N_MAX_LIMIT = 28
ORACLE_N_MAX = 12


class NMaxTooLarge(ValueError):
    pass


class InvalidFugacity(ValueError):
    pass


class Lattice(enum.Enum):
    SQUARE = "square"
    HEXAGONAL = "hexagonal"

    @property
    def coordination(self) -> int:
        return 4 if self is Lattice.SQUARE else 3


class EnsembleKind(enum.Enum):
    FREE = "free"
    TAW = "taw"
    ARCH = "arch"
    BRIDGE = "bridge"
    POLYGON = "polygon"


class Weighting(enum.Enum):
    UNIT = "unit"
    CONTACT = "contact"


@dataclass(frozen=True)
class Ensemble:
    kind: EnsembleKind
    surface_fugacity: ExactScalar = Fraction(1)
    weighting: Weighting = Weighting.UNIT

    def __post_init__(self):
        object.__setattr__(self, "kind", EnsembleKind(self.kind))
        object.__setattr__(self, "weighting", Weighting(self.weighting))
        a = self.surface_fugacity
        if isinstance(a, str):
            a = as_exact(a)
        elif not isinstance(a, Radical):
            a = Fraction(a)
        if a < 0:
            raise InvalidFugacity(f"surface fugacity must be >= 0, got {a}")
        object.__setattr__(self, "surface_fugacity", a)
        if self.weighting is Weighting.CONTACT and self.kind is not EnsembleKind.POLYGON:
            raise ValueError("contact weighting applies to polygons only")

    def __str__(self):
        s = self.kind.value
        if self.kind is not EnsembleKind.FREE:
            s += f"(a={format_exact(self.surface_fugacity)}"
            if self.kind is EnsembleKind.POLYGON:
                s += f", weight={self.weighting.value}"
            s += ")"
        return s


@dataclass
class WalkCensus:
    """Exact per-length data for one lattice ensemble.

    ``histogram[N][m]`` is the number of configurations of length N with m
    weighted surface sites (one entry, m=0, for free walks).
    """

    lattice: Lattice
    ensemble: Ensemble
    n_max: int
    histogram: dict[int, tuple[int, ...]]
    r2_sums: Optional[dict[int, int]] = None
    metadata: dict[str, str] = field(default_factory=dict)

    def weight(self, n: int) -> ExactScalar:
        a = self.ensemble.surface_fugacity
        contact = self.ensemble.weighting is Weighting.CONTACT
        total: ExactScalar = Fraction(0)
        power: ExactScalar = Fraction(1)
        for m, c in enumerate(self.histogram.get(n, ())):
            if c:
                total = total + (c * m if contact else c) * power
            power = power * a
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    @property
    def counts(self) -> dict[int, ExactScalar]:
        """Weighted count per length; includes zero entries for infeasible lengths."""
        return {n: self.weight(n) for n in range(1, self.n_max + 1)}

    def polynomial(self, n: int) -> tuple[int, ...]:
        """Coefficients of the count as a polynomial in the fugacity."""
        h = self.histogram.get(n, ())
        if self.ensemble.weighting is Weighting.CONTACT:
            return tuple(m * c for m, c in enumerate(h))
        return tuple(h)

    def with_ensemble(self, ensemble: Ensemble) -> "WalkCensus":
        """Same enumeration, different fugacity or polygon weighting."""
        if ensemble.kind is not self.ensemble.kind:
            raise ValueError("cannot change the ensemble kind of a census")
        return WalkCensus(self.lattice, ensemble, self.n_max, self.histogram,
                          self.r2_sums, dict(self.metadata))

    def same_data(self, other: "WalkCensus") -> bool:
        trim = lambda h: {n: tuple(v[: max((i + 1 for i, c in enumerate(v) if c), default=0)])
                          for n, v in h.items()}
        return (self.lattice is other.lattice and self.ensemble == other.ensemble
                and self.n_max == other.n_max and trim(self.histogram) == trim(other.histogram)
                and (self.r2_sums or {}) == (other.r2_sums or {}))


# -- compiled kernel -----------------------------------------------------------

_SQ, _HEX = 0, 1
_FREE, _TAW, _ARCH, _BRIDGE, _POLY = 0, 1, 2, 3, 4
_LAT_CODE = {Lattice.SQUARE: _SQ, Lattice.HEXAGONAL: _HEX}
_ENS_CODE = {EnsembleKind.FREE: _FREE, EnsembleKind.TAW: _TAW, EnsembleKind.ARCH: _ARCH,
             EnsembleKind.BRIDGE: _BRIDGE, EnsembleKind.POLYGON: _POLY}


@numba.njit(cache=True, nogil=True)
def _step(lat, x, y, d):
    if d == 0:
        return x + 1, y, True
    if d == 1:
        return x - 1, y, True
    if d == 2:
        if lat == _HEX and ((x + y) & 1) != 0:
            return x, y + 1, False
        return x, y + 1, True
    if lat == _HEX and ((x + y) & 1) == 0:
        return x, y - 1, False
    return x, y - 1, True


@numba.njit(cache=True, nogil=True)
def _adjacent(lat, x, y, tx, ty):
    for d in range(4):
        nx, ny, ok = _step(lat, x, y, d)
        if ok and nx == tx and ny == ty:
            return True
    return False


@numba.njit(cache=True, nogil=True)
def _record(lat, ens, n, nmax, xs, ys, m_at, h_at, hist, r2):
    x = xs[n]
    y = ys[n]
    if ens == _FREE:
        hist[n, 0] += 1
        dx = x - xs[0]
        dy = y - ys[0]
        r2[n] += dx * dx + dy * dy
    elif ens == _TAW:
        hist[n, m_at[n]] += 1
    elif ens == _ARCH:
        if y == 0:
            hist[n, m_at[n]] += 1
    elif ens == _BRIDGE:
        if y == h_at[n]:
            hist[n, 0] += 1
    else:
        if n >= 2 and n + 1 <= nmax and _adjacent(lat, x, y, xs[0], ys[0]):
            hist[n + 1, m_at[n]] += 1


@numba.njit(cache=True, nogil=True)
def _walk(lat, ens, px, py, plen, nmax, rec_lo, emit_depth, hist, r2, out):
    """Depth-first search below one prefix.

    Records every node at depth >= rec_lo.  If emit_depth >= 0, nodes at that
    depth are copied to ``out`` (when it has room) instead of being expanded.
    Returns the number of emitted nodes.
    """
    off = nmax + 2
    size = 2 * nmax + 5
    grid = np.zeros((size, size), np.uint8)
    xs = np.empty(nmax + 2, np.int64)
    ys = np.empty(nmax + 2, np.int64)
    dirs = np.empty(nmax + 2, np.int64)
    m_at = np.empty(nmax + 2, np.int64)
    h_at = np.empty(nmax + 2, np.int64)
    max_depth = nmax - 1 if ens == _POLY else nmax
    x0 = px[0]
    y0 = py[0]
    for i in range(plen + 1):
        xs[i] = px[i]
        ys[i] = py[i]
        grid[px[i] + off, py[i] + off] = 1
        if i == 0:
            m_at[0] = 1 if ens == _POLY else 0
            h_at[0] = py[0]
        else:
            m_at[i] = m_at[i - 1] + (1 if py[i] == 0 else 0)
            h_at[i] = max(h_at[i - 1], py[i])
    nemit = 0
    depth = plen
    if emit_depth == depth:
        if nemit < out.shape[0]:
            for i in range(depth + 1):
                out[nemit, i, 0] = xs[i]
                out[nemit, i, 1] = ys[i]
        return 1
    if depth >= rec_lo and depth >= 1:
        _record(lat, ens, depth, nmax, xs, ys, m_at, h_at, hist, r2)
    dirs[depth] = -1
    while True:
        dirs[depth] += 1
        d = dirs[depth]
        if d > 3 or depth >= max_depth:
            if depth == plen:
                break
            grid[xs[depth] + off, ys[depth] + off] = 0
            depth -= 1
            continue
        nx, ny, ok = _step(lat, xs[depth], ys[depth], d)
        if not ok or grid[nx + off, ny + off] != 0:
            continue
        nd = depth + 1
        if ens != _FREE:
            if ny < 0:
                continue
            if ens == _BRIDGE and ny <= y0:
                continue
            if ens == _ARCH and ny > nmax - nd:
                continue
            if ens == _POLY and abs(nx - x0) + abs(ny - y0) > nmax - nd:
                continue
        xs[nd] = nx
        ys[nd] = ny
        m_at[nd] = m_at[depth] + (1 if ny == 0 else 0)
        h_at[nd] = max(h_at[depth], ny)
        if nd == emit_depth:
            if nemit < out.shape[0]:
                for i in range(nd + 1):
                    out[nemit, i, 0] = xs[i]
                    out[nemit, i, 1] = ys[i]
            nemit += 1
            continue
        grid[nx + off, ny + off] = 1
        depth = nd
        if depth >= rec_lo:
            _record(lat, ens, depth, nmax, xs, ys, m_at, h_at, hist, r2)
        dirs[depth] = -1
    return nemit


@numba.njit(cache=True, nogil=True)
def _search_batch(lat, ens, prefixes, plen, nmax, hist_out, r2_out):
    empty = np.zeros((0, 1, 2), np.int64)
    for p in range(prefixes.shape[0]):
        _walk(lat, ens, prefixes[p, :, 0], prefixes[p, :, 1], plen, nmax, plen, -1,
              hist_out[p], r2_out[p], empty)


def default_threads() -> int:
    env = os.environ.get("POLYNET_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"POLYNET_THREADS must be a positive integer, got {env!r}") from None
        if n < 1:
            raise ValueError("POLYNET_THREADS must be >= 1")
        return n
    return 1


def _start_prefixes(lattice: Lattice, kind: EnsembleKind) -> tuple[list[list[tuple[int, int]]], int]:
    """Starting walks and the symmetry factor applied to their counts."""
    if kind is EnsembleKind.FREE and lattice is Lattice.SQUARE:
        return [[(0, 0), (1, 0)]], 4
    if kind is EnsembleKind.POLYGON and lattice is Lattice.HEXAGONAL:
        # both surface sites of the unit cell, so each polygon is rooted at all its contacts
        return [[(0, 0)], [(1, 0)]], 1
    return [[(0, 0)]], 1


def _run_root(lat, ens, root, nmax, threads, min_prefixes):
    width = nmax + 2
    hist = np.zeros((width, width), np.int64)
    r2 = np.zeros(width, np.int64)
    plen0 = len(root) - 1
    px = np.array([p[0] for p in root], np.int64)
    py = np.array([p[1] for p in root], np.int64)
    probe = np.zeros((0, 1, 2), np.int64)
    k = -1
    count = 0
    for depth in range(plen0 + 1, nmax):
        count = _walk(lat, ens, px, py, plen0, nmax, nmax + 1, depth,
                      np.zeros((width, width), np.int64), np.zeros(width, np.int64), probe)
        if count >= min_prefixes:
            k = depth
            break
    if k < 0:
        _walk(lat, ens, px, py, plen0, nmax, 1, -1, hist, r2, probe)
        return hist, r2, 1, plen0
    prefixes = np.zeros((count, k + 1, 2), np.int64)
    _walk(lat, ens, px, py, plen0, nmax, 1, k, hist, r2, prefixes)
    hist_p = np.zeros((count, width, width), np.int64)
    r2_p = np.zeros((count, width), np.int64)
    bounds = np.linspace(0, count, min(count, 4 * threads) + 1).astype(int)
    chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

    def work(ab):
        a, b = ab
        _search_batch(lat, ens, prefixes[a:b], k, nmax, hist_p[a:b], r2_p[a:b])

    if threads == 1:
        for ab in chunks:
            work(ab)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, chunks))
    # ordered reduction over prefixes
    for p in range(count):
        hist += hist_p[p]
        r2 += r2_p[p]
    return hist, r2, count, k


def enumerate_walks(lattice: Lattice, ensemble: Ensemble, n_max: int,
                    threads: Optional[int] = None) -> WalkCensus:
    """Exact census of ``ensemble`` on ``lattice`` for lengths 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > N_MAX_LIMIT:
        raise NMaxTooLarge(f"n_max={n_max} exceeds the guardrail {N_MAX_LIMIT}")
    threads = default_threads() if threads is None else int(threads)
    if threads < 1:
        raise ValueError("threads must be >= 1")
    lat = _LAT_CODE[lattice]
    ens = _ENS_CODE[ensemble.kind]
    roots, factor = _start_prefixes(lattice, ensemble.kind)
    t0 = time.perf_counter()
    width = n_max + 2
    hist = np.zeros((width, width), np.int64)
    r2 = np.zeros(width, np.int64)
    n_prefixes = []
    for root in roots:
        h, r, count, k = _run_root(lat, ens, root, n_max, threads, 8 * threads)
        hist += h
        r2 += r
        n_prefixes.append(f"{count}@depth{k}")
    elapsed = time.perf_counter() - t0

    histogram: dict[int, tuple[int, ...]] = {}
    for n in range(1, n_max + 1):
        row = [int(c) * factor for c in hist[n]]
        if ensemble.kind is EnsembleKind.POLYGON:
            # rooted closed walks: each polygon with m contacts appears 2m times
            poly = []
            for m, c in enumerate(row):
                if m == 0:
                    assert c == 0
                    poly.append(0)
                    continue
                q, rem = divmod(c, 2 * m)
                assert rem == 0, "rooted polygon count not divisible by 2m"
                poly.append(q)
            row = poly
        while row and row[-1] == 0:
            row.pop()
        histogram[n] = tuple(row)
    r2_sums = None
    if ensemble.kind is EnsembleKind.FREE:
        r2_sums = {n: int(r2[n]) * factor for n in range(1, n_max + 1)}
    meta = {
        "lattice": lattice.value,
        "ensemble": str(ensemble),
        "n_max": str(n_max),
        "symmetry": (f"first step fixed, counts x{factor}" if factor > 1
                     else "no symmetry reduction"),
        "anchor": _anchor_note(lattice, ensemble.kind),
        "fugacity": "a^m, m = surface sites excluding the anchor"
                    if ensemble.kind is not EnsembleKind.POLYGON else "a^m, m = all surface sites",
        "fugacity_value": format_exact(ensemble.surface_fugacity),
        "threads": str(threads),
        "prefixes": ",".join(n_prefixes),
        "wall_time_s": f"{elapsed:.3f}",
    }
    if lattice is Lattice.HEXAGONAL:
        meta["embedding"] = "brick-wall; vertical bond up iff x+y even; surface y=0 zigzag"
    return WalkCensus(lattice, ensemble, n_max, histogram, r2_sums, meta)


def _anchor_note(lattice: Lattice, kind: EnsembleKind) -> str:
    if kind is EnsembleKind.FREE:
        return "origin (walks per site)"
    if kind is EnsembleKind.POLYGON:
        return "up to horizontal lattice translation"
    return "origin on y=0" + (" (site with upward bond)" if lattice is Lattice.HEXAGONAL else "")


# -- brute-force oracle --------------------------------------------------------------

def _neighbours(lattice: Lattice, site):
    x, y = site
    out = [(x + 1, y), (x - 1, y)]
    if lattice is Lattice.SQUARE:
        out += [(x, y + 1), (x, y - 1)]
    elif (x + y) % 2 == 0:
        out.append((x, y + 1))
    else:
        out.append((x, y - 1))
    return out


def oracle_enumerate(lattice: Lattice, ensemble: Ensemble, n_max: int) -> WalkCensus:
    """Independent brute force: every SAW from the origin, classified afterwards.

    No pruning beyond self-avoidance, no symmetry reduction, polygons are
    deduplicated as translated edge sets.  Test use only.
    """
    if n_max > ORACLE_N_MAX:
        raise NMaxTooLarge(f"oracle is limited to n_max <= {ORACLE_N_MAX}")
    kind = ensemble.kind
    hist: dict[int, dict[int, int]] = {n: {} for n in range(1, n_max + 1)}
    r2 = {n: 0 for n in range(1, n_max + 1)}
    polygons: dict[int, set] = {n: set() for n in range(1, n_max + 1)}
    step = 2 if lattice is Lattice.HEXAGONAL else 1

    def classify(walk):
        n = len(walk) - 1
        ys = [p[1] for p in walk]
        if kind is EnsembleKind.FREE:
            hist[n][0] = hist[n].get(0, 0) + 1
            r2[n] += walk[-1][0] ** 2 + walk[-1][1] ** 2
            return
        if kind is EnsembleKind.POLYGON:
            if n + 1 <= n_max and n >= 2 and walk[0] in _neighbours(lattice, walk[-1]) \
                    and min(ys) >= 0:
                shift = min(p[0] for p in walk)
                shift -= shift % step
                ring = walk + [walk[0]]
                edges = frozenset(frozenset(((a[0] - shift, a[1]), (b[0] - shift, b[1])))
                                  for a, b in zip(ring, ring[1:]))
                polygons[n + 1].add(edges)
            return
        m = sum(1 for y in ys[1:] if y == 0)
        if kind is EnsembleKind.TAW:
            ok = min(ys) >= 0
        elif kind is EnsembleKind.ARCH:
            ok = min(ys) >= 0 and ys[-1] == 0
        else:
            ok = all(ys[0] < y <= ys[-1] for y in ys[1:])
        if ok:
            key = 0 if kind is EnsembleKind.BRIDGE else m
            hist[n][key] = hist[n].get(key, 0) + 1

    def grow(walk, seen):
        if len(walk) > 1:
            classify(walk)
        if len(walk) - 1 == n_max:
            return
        for nb in _neighbours(lattice, walk[-1]):
            if nb not in seen:
                seen.add(nb)
                walk.append(nb)
                grow(walk, seen)
                walk.pop()
                seen.discard(nb)

    grow([(0, 0)], {(0, 0)})

    histogram = {}
    for n in range(1, n_max + 1):
        if kind is EnsembleKind.POLYGON:
            per_m: dict[int, int] = {}
            for poly in polygons[n]:
                sites = {s for e in poly for s in e}
                m = sum(1 for s in sites if s[1] == 0)
                per_m[m] = per_m.get(m, 0) + 1
            src = per_m
        else:
            src = hist[n]
        top = max(src, default=-1)
        histogram[n] = tuple(src.get(m, 0) for m in range(top + 1))
    r2_sums = r2 if kind is EnsembleKind.FREE else None
    meta = {"lattice": lattice.value, "ensemble": str(ensemble), "n_max": str(n_max),
            "method": "brute-force oracle"}
    return WalkCensus(lattice, ensemble, n_max, histogram, r2_sums, meta)


# -- CSV ------------------------------------------------------------------------

def census_to_csv(census: WalkCensus, meta: bool = True, long: bool = False) -> str:
    """``N,count[,r2_sum]`` with '#' metadata lines.

    ``long=True`` writes the contact histogram as ``N,contacts,count`` instead,
    i.e. the count as a polynomial in the fugacity.
    """
    lines = []
    if meta:
        for k, v in census.metadata.items():
            lines.append(f"# {k}: {v}")
    if long:
        lines.append("N,contacts,count")
        for n in range(1, census.n_max + 1):
            for m, c in enumerate(census.polynomial(n)):
                if c:
                    lines.append(f"{n},{m},{c}")
        return "\n".join(lines) + "\n"
    has_r2 = census.r2_sums is not None
    lines.append("N,count,r2_sum" if has_r2 else "N,count")
    for n in range(1, census.n_max + 1):
        row = f"{n},{format_exact(census.weight(n))}"
        if has_r2:
            row += f",{census.r2_sums[n]}"
        lines.append(row)
    return "\n".join(lines) + "\n"


@dataclass
class CsvCensus:
    """Counts read back from CSV; enough for fitting."""

    counts: dict[int, ExactScalar]
    r2_sums: Optional[dict[int, int]]
    metadata: dict[str, str]


def census_from_csv(text: str) -> CsvCensus:
    meta = {}
    rows = []
    header = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = value.strip()
            continue
        if header is None:
            header = [h.strip() for h in line.split(",")]
            continue
        rows.append([c.strip() for c in line.split(",")])
    if header is None:
        raise ValueError("CSV has no header")
    if header[:2] != ["N", "count"] and header != ["N", "contacts", "count"]:
        raise ValueError(f"unexpected CSV header {header}")
    counts: dict[int, ExactScalar] = {}
    r2 = {} if "r2_sum" in header else None
    if header == ["N", "contacts", "count"]:
        a = as_exact(meta.get("fugacity_value", "1"))
        for n, m, c in rows:
            counts[int(n)] = counts.get(int(n), 0) + int(c) * a ** int(m)
    else:
        for row in rows:
            counts[int(row[0])] = as_exact(row[1])
            if r2 is not None:
                r2[int(row[0])] = int(row[2])
    return CsvCensus(counts, r2, meta)
