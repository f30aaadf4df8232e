from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from g2cubics import braid, fricke, g2
from g2cubics.braid import BraidWord
from g2cubics.errors import OrbitTruncated
from g2cubics.fricke import PInvariants, SurfaceParams, SurfacePoint
from g2cubics.octonion import unit_sum

q = st.fractions(min_value=-10, max_value=10, max_denominator=9)
p_states = st.tuples(q, q, q, q).map(lambda t: PInvariants(*t))
gens = st.sampled_from(braid.GENERATORS)
E7_TRIPLE = tuple(unit_sum(line) for line in ((1, 3, 7), (2, 6, 7), (4, 5, 7)))
KLEIN_XYZ = {(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)}


def test_braid_word_reduction():
    w = BraidWord.parse("b1 b2 b2^-1 b1^-1 b2")
    assert w.reduced() == BraidWord([2])
    assert str(BraidWord([1, -2])) == "b1 b2^-1"
    assert BraidWord([1, -2]).inverse() == BraidWord([2, -1])
    with pytest.raises(ValueError):
        BraidWord(["b3"])


def test_p_examples():
    assert tuple(braid.braid_p(1, PInvariants.of((1, 1, 1, -2)))) == (-1, 1, 1, 0)
    assert tuple(braid.braid_p(1, PInvariants.of((3, 3, 3, 0)))) == (3, 3, 3, 0)


def test_xyz_example():
    assert tuple(braid.braid_xyz(1, SurfacePoint.of((0, 0, 0)), Fraction(-1))) == (0, 1, 0)


@given(p_states, gens)
def test_p_generators_invertible(p, g):
    assert braid.braid_p(-g, braid.braid_p(g, p)) == p


@given(p_states)
def test_p_braid_relation(p):
    assert braid.act_word("p", (1, 2, 1), p) == braid.act_word("p", (2, 1, 2), p)


@given(p_states, gens)
def test_p_sum_conserved(p, g):
    new = braid.braid_p(g, p)
    assert new.p4 + new.s1 == p.p4 + p.s1


@given(q, q, q, q, gens)
def test_xyz_moves(x, y, z, b, g):
    pt = SurfacePoint(x, y, z)
    new = braid.braid_xyz(g, pt, b)
    assert braid.braid_xyz(-g, new, b) == pt
    c = fricke.c_from_surface(pt, b)
    assert fricke.fricke_residual(new, SurfaceParams(b, c)) == 0


@given(q, q, q, q)
def test_xyz_braid_relation(x, y, z, b):
    pt = SurfacePoint(x, y, z)
    assert braid.act_word("xyz", (1, 2, 1), pt, b) == braid.act_word("xyz", (2, 1, 2), pt, b)


def test_matrix_level(rng):
    g = g2.conj_map(unit_sum((1, 2, 4)))
    for gen in braid.GENERATORS:
        assert braid.braid_triple(gen, (g, g, g)) == (g, g, g)
    trip = tuple(g2.conj_map(g2.random_norm3(rng)) for _ in range(3))
    prod = trip[0] @ trip[1] @ trip[2]
    for gen in braid.GENERATORS:
        a, b, c = braid.braid_triple(gen, trip)
        assert (a @ b @ c).isclose(prod, 1e-8 * max(1, float(np.abs(np.asarray(prod.m)).max())))
        back = braid.braid_triple(-gen, (a, b, c))
        assert all(x.isclose(y, 1e-7) for x, y in zip(back, trip))


def test_oct_level_compatibility(rng):
    for _ in range(10):
        trip = tuple(g2.random_norm3(rng) for _ in range(3))
        p = fricke.p_invariants(*trip)
        mats = tuple(g2.conj_map(v) for v in trip)
        for gen in braid.GENERATORS:
            new = braid.braid_oct(gen, trip)
            assert new[2 if abs(gen) == 1 else 0] is trip[2 if abs(gen) == 1 else 0]
            assert fricke.p_invariants(*new, tol=1e-8).isclose(braid.braid_p(gen, p), 1e-8)
            for m, want in zip((g2.conj_map(v, 1e-8) for v in new), braid.braid_triple(gen, mats)):
                assert m.isclose(want, 1e-8)


def test_oct_level_exact():
    for gen in braid.GENERATORS:
        new = braid.braid_oct(gen, E7_TRIPLE)
        assert fricke.p_invariants(*new) == braid.braid_p(gen, PInvariants.of((1, 1, 1, -2)))


def test_klein_orbits():
    r = braid.braid_orbit((0, 0, 0), "xyz", b=-1)
    assert {tuple(p) for p in r.points} == KLEIN_XYZ
    assert braid.braid_orbit((1, 1, 1, -2), "p").size == 7
    assert braid.braid_orbit(E7_TRIPLE, "oct").size == 7
    assert braid.braid_orbit(tuple(g2.conj_map(v) for v in E7_TRIPLE), "matrix").size == 7
    assert braid.braid_orbit((3, 3, 3, 0), "p").size == 1


def test_orbit_is_closed_and_deterministic():
    r = braid.braid_orbit((1, 1, 1, -2), "p", log_edges=True)
    pts = {tuple(p) for p in r.points}
    for p in r.points:
        for g in braid.GENERATORS:
            assert tuple(braid.braid_p(g, PInvariants(*p))) in pts
    assert r.points == sorted(r.points)
    assert braid.braid_orbit((1, 1, 1, -2), "p").to_json() == r.to_json()
    assert len(r.edges) == 4 * 7


def test_orbit_truncation():
    with pytest.raises(OrbitTruncated) as info:
        braid.braid_orbit((1, 1, 1, -2), "p", max_size=3)
    assert info.value.partial.size == 3
    with pytest.raises(ValueError):
        braid.braid_orbit((1, 1, 1, -2), "p", max_size=0)


def test_float_orbit_matches_exact():
    r = braid.braid_orbit((1.0, 1.0, 1.0, -2.0), "p")
    assert r.size == 7


def test_size18_orbit():
    import math
    c = math.cos(math.pi / 7)
    r = braid.braid_orbit((-1.0, -1.0, 1 - 4 * c, 2 - 4 * c), "p", max_size=100)
    assert r.size == 18


def test_orbit_json():
    obj = braid.braid_orbit((0, 0, 0), "xyz", b=-1).to_json()
    assert obj["level"] == "xyz" and obj["size"] == 7 and obj["b"] == "-1/1"
    assert obj["points"][0] == ["0/1", "0/1", "0/1"]


def test_equivariance_dictionary():
    rep = braid.equivariance_dictionary(samples=100)
    assert rep.ok and not rep.searched
    assert rep.dictionary == {2: (1,), 1: ("s-2",)}


def test_word_search_finds_alternative():
    # a deliberately wrong candidate forces the bounded search
    rep = braid.equivariance_dictionary(samples=20, candidates={1: (1,), 2: (2,)}, max_length=2)
    assert rep.searched and not rep.missing
    assert rep.dictionary[2] == (1,)
    rng = np.random.default_rng(0)
    states = braid.random_rational_states(rng, 20)
    for pt, b in states:
        assert braid.xyz_word(rep.dictionary[1], pt, b) == braid.conjugated_p_move(1, pt, b)


def test_conserved_quantities():
    assert braid.conserved_quantities("p", PInvariants.of((1, 1, 1, -2))) == {"p4+s1": 1}
    cq = braid.conserved_quantities("oct", E7_TRIPLE)
    assert (cq["alpha"], cq["beta"]) == (-1, -1)
