from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polynet.enumeration import (
    Ensemble, EnsembleKind as E, InvalidFugacity, Lattice, NMaxTooLarge, Weighting,
    census_from_csv, census_to_csv, enumerate_walks, oracle_enumerate,
)
from polynet.exact import Radical

SQ, HEX = Lattice.SQUARE, Lattice.HEXAGONAL


def counts(lattice, kind, n, **kw):
    c = enumerate_walks(lattice, Ensemble(kind, **kw), n)
    return [c.counts[k] for k in range(1, n + 1)]


def brute_force(n, inside, accept):
    # plain square-lattice walks from the origin, no pruning
    out = [0] * (n + 1)
    steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]

    def go(path):
        k = len(path) - 1
        if k and accept(path):
            out[k] += 1
        if k == n:
            return
        x, y = path[-1]
        for dx, dy in steps:
            p = (x + dx, y + dy)
            if p not in path and inside(p):
                go(path + [p])

    go([(0, 0)])
    return out[1:]


def test_square_free_small():
    assert counts(SQ, E.FREE, 5) == [4, 12, 36, 100, 284]


def test_known_series():
    assert counts(SQ, E.TAW, 8) == [3, 7, 19, 49, 131, 339, 899, 2345]
    assert counts(SQ, E.BRIDGE, 8) == [1, 3, 7, 17, 41, 101, 251, 631]
    assert counts(SQ, E.POLYGON, 12)[3::2] == [1, 2, 7, 28, 124]
    assert counts(HEX, E.FREE, 10) == [3, 6, 12, 24, 48, 90, 174, 336, 648, 1218]
    assert counts(HEX, E.POLYGON, 10)[5::4] == [1, 3]


def test_square_brute_force():
    n = 7
    half = lambda p: p[1] >= 0
    assert counts(SQ, E.FREE, n) == brute_force(n, lambda p: True, lambda w: True)
    assert counts(SQ, E.TAW, n) == brute_force(n, half, lambda w: True)
    assert counts(SQ, E.ARCH, n) == brute_force(n, half, lambda w: w[-1][1] == 0)
    bridge = lambda w: all(0 < p[1] <= w[-1][1] for p in w[1:])
    assert counts(SQ, E.BRIDGE, n) == brute_force(n, half, bridge)


@pytest.mark.parametrize("lattice", list(Lattice))
@pytest.mark.parametrize("kind", list(E))
def test_oracle_agreement(lattice, kind):
    n = 10
    assert enumerate_walks(lattice, Ensemble(kind), n).same_data(
        oracle_enumerate(lattice, Ensemble(kind), n))


@pytest.mark.parametrize("lattice", list(Lattice))
def test_containment_and_bounds(lattice):
    n = 14
    z = lattice.coordination
    free, taw, bridge = (counts(lattice, k, n) for k in (E.FREE, E.TAW, E.BRIDGE))
    for k in range(n):
        assert 0 < bridge[k] <= taw[k] <= free[k] <= z * (z - 1) ** k


def test_square_free_ratios_bracket():
    c = counts(SQ, E.FREE, 20)
    assert 2.6 < c[-1] / c[-2] < 2.7
    assert c[19] == 897697164


@pytest.mark.parametrize("kind", [E.FREE, E.ARCH, E.POLYGON])
def test_thread_invariance(kind):
    runs = [enumerate_walks(SQ, Ensemble(kind), 12, threads=t) for t in (1, 4, 8)]
    assert runs[0].same_data(runs[1]) and runs[0].same_data(runs[2])


def test_r2_sums():
    c = enumerate_walks(SQ, Ensemble(E.FREE), 3)
    # two-step walks: 4 straight (R^2=4) and 8 bent (R^2=2)
    assert c.r2_sums[1] == 4 and c.r2_sums[2] == 32
    assert enumerate_walks(SQ, Ensemble(E.TAW), 3).r2_sums is None


def test_fugacity_polynomial():
    c = enumerate_walks(SQ, Ensemble(E.TAW, 2), 3)
    assert c.polynomial(1) == (1, 2)
    assert c.weight(1) == 1 + 2 * 2
    assert c.with_ensemble(Ensemble(E.TAW, 1)).weight(3) == 19
    root2 = Radical(1, 1, 2)
    assert c.with_ensemble(Ensemble(E.TAW, root2)).weight(1) == 1 + 2 * root2


def test_contact_weighting():
    base = enumerate_walks(SQ, Ensemble(E.POLYGON), 8)
    contact = base.with_ensemble(Ensemble(E.POLYGON, weighting=Weighting.CONTACT))
    assert base.weight(4) == 1 and contact.weight(4) == 2
    for n in range(4, 9, 2):
        assert contact.weight(n) >= base.weight(n)
    assert contact.weight(8) == sum(m * c for m, c in enumerate(base.histogram[8]))


def test_errors():
    with pytest.raises(NMaxTooLarge):
        enumerate_walks(SQ, Ensemble(E.FREE), 29)
    with pytest.raises(InvalidFugacity):
        Ensemble(E.TAW, -1)
    with pytest.raises(ValueError):
        Ensemble(E.TAW, weighting=Weighting.CONTACT)
    with pytest.raises(ValueError):
        enumerate_walks(SQ, Ensemble(E.FREE), 0)


def test_ensemble_from_strings():
    e = Ensemble("polygon", "1.5", "contact")
    assert e.kind is E.POLYGON and e.surface_fugacity == F(3, 2)
    assert str(e) == "polygon(a=3/2, weight=contact)"


def test_metadata():
    m = enumerate_walks(HEX, Ensemble(E.FREE), 4).metadata
    assert "symmetry" in m and "anchor" in m and "embedding" in m


@pytest.mark.parametrize("long", [False, True])
def test_csv_round_trip(long):
    c = enumerate_walks(SQ, Ensemble(E.ARCH, F(3, 2)), 9)
    back = census_from_csv(census_to_csv(c, long=long))
    assert back.counts == {n: w for n, w in c.counts.items() if w or not long}


def test_csv_free_moments():
    c = enumerate_walks(SQ, Ensemble(E.FREE), 6)
    back = census_from_csv(census_to_csv(c, meta=False))
    assert back.counts == c.counts and back.r2_sums == c.r2_sums


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(list(Lattice)), st.sampled_from([E.TAW, E.ARCH, E.BRIDGE]),
       st.fractions(min_value=0, max_value=5, max_denominator=7), st.integers(1, 9))
def test_prop_fugacity_is_polynomial(lattice, kind, a, n):
    base = enumerate_walks(lattice, Ensemble(kind), n)
    direct = oracle_enumerate(lattice, Ensemble(kind, a), n)
    assert base.with_ensemble(Ensemble(kind, a)).counts == direct.counts
    assert sum(base.polynomial(n)) == base.weight(n)
