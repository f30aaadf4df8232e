import itertools
from fractions import Fraction

import pytest

from g2cubics import braid, fano, fricke, g2
from g2cubics.errors import BadIndex, ClosureTruncated
from g2cubics.fricke import PInvariants
from g2cubics.octonion import oct_form


def test_lines():
    lines = fano.fano_lines()
    assert len(lines) == 7 and (1, 2, 4) in lines
    for a, b in itertools.combinations(range(1, 8), 2):
        assert sum(a in l and b in l for l in lines) == 1


def test_lines_through():
    assert set(fano.lines_through(7)) == {(4, 5, 7), (2, 6, 7), (1, 3, 7)}
    for k in range(1, 8):
        through = fano.lines_through(k)
        assert len(through) == 3 and all(k in l and fano.is_line(l) for l in through)
    for bad in (0, 8, "7", 2.0, True):
        with pytest.raises(BadIndex):
            fano.lines_through(bad)


def test_generators():
    for line in fano.fano_lines():
        v, g = fano.line_to_generator(line)
        assert g.apply(v) == v
        assert g ** 3 == g2.G2Element.identity() and g != g2.G2Element.identity()
        assert all((Fraction(x) * 4).denominator == 1 for x in g.m.ravel())
    with pytest.raises(BadIndex):
        fano.line_to_generator((1, 2, 3))


@pytest.mark.parametrize("k", range(1, 8))
def test_point_invariants(k):
    p = fano.point_invariants(k)
    assert tuple(p) == (1, 1, 1, -2)
    pt, b = fricke.phi(p)
    assert tuple(pt) == (0, 0, 0) and b == -1 and fricke.c_from_surface(pt, b) == 0


def test_generator_pairings_and_product():
    gens = fano.point_generators(7)
    vs = [v for v, _ in gens]
    for a, b in itertools.combinations(vs, 2):
        assert oct_form(a, b) == 1
    g1, g2_, g3 = (g for _, g in gens)
    assert tuple(g2.alpha_beta_of(g1 @ g2_ @ g3)) == (-1, -1)
    assert g2.alpha_beta_of(g1 @ g2_ @ g3) == fricke.alpha_beta_from_p(PInvariants.of((1, 1, 1, -2)))


def test_klein_orbit_from_point():
    r = braid.braid_orbit(fano.point_invariants(7), "p")
    assert r.size == 7
    image = {tuple(fricke.phi(PInvariants(*p))[0]) for p in r.points}
    assert image == {tuple(p) for p in braid.braid_orbit((0, 0, 0), "xyz", b=-1).points}


def test_single_generator_closure():
    _, g = fano.line_to_generator((1, 2, 4))
    res = fano.group_closure([g])
    assert res.order == 3 and res.element_orders == {1: 1, 3: 2}


def test_closure_e7():
    res = fano.point_closure(7)
    assert res.order == 6048 == 2 ** 5 * 3 ** 3 * 7
    assert res.automorphism_failures() == 0
    assert res.orthogonality_failures() == 0
    assert sum(res.element_orders.values()) == 6048
    assert sorted(res.element_orders) == [1, 2, 3, 4, 6, 7, 8, 12]
    e = res.element(17)
    assert g2.is_automorphism(e)
    assert res.to_json()["order"] == 6048


def test_closure_truncation():
    with pytest.raises(ClosureTruncated):
        fano.point_closure(7, max_order=100)
    with pytest.raises(ValueError):
        fano.group_closure([])
