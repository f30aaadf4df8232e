import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from g2cubics import fricke, sl2
from g2cubics.errors import NotARoot, NotUnimodular
from g2cubics.sl2 import SL2Matrix

q = st.fractions(min_value=-3, max_value=3, max_denominator=8)
thetas = st.tuples(q, q, q, q)


def test_seven_functions_examples():
    I = ((1, 0), (0, 1))
    assert tuple(sl2.seven_functions(I, I, I)) == (2,) * 7
    t = sl2.seven_functions(((1, 1), (0, 1)), ((1, 0), (1, 1)), I)
    assert tuple(t) == (2, 2, 3, 2, 2, 2, 3)


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        SL2Matrix(((1, 1), (1, 1)))


def test_fricke_relation_exact(rng):
    for _ in range(100):
        t = sl2.seven_functions(*(sl2.random_sl2(rng) for _ in range(3)))
        assert fricke.fricke_residual(t.point, sl2.fricke_params(*t.m)) == 0


def test_fricke_params_examples():
    assert tuple(sl2.fricke_params(2, 2, 2, 2)) == (-8, -8, -8, 28)
    assert tuple(sl2.fricke_params(0, 0, 0, 0)) == (0, 0, 0, -4)
    t, u = 2 * math.cos(2 * math.pi / 7), 2 * math.cos(4 * math.pi / 7)
    assert np.allclose([complex(x) for x in sl2.fricke_params(t, t, t, u)], [-1, -1, -1, 0])


def test_theta_to_m():
    assert sl2.theta_to_m((0, 0, 0, 0)) == (2, 2, 2, 2)
    assert sl2.theta_to_m((1, 1, 1, 1)) == (-2, -2, -2, -2)
    assert tuple(sl2.params_of_theta((1, 1, 1, 1))) == (-8, -8, -8, 28)
    klein = sl2.theta_to_m((Fraction(2, 7),) * 3 + (Fraction(4, 7),))
    assert np.allclose(klein, [2 * math.cos(2 * math.pi / 7)] * 3 + [2 * math.cos(4 * math.pi / 7)])


@given(thetas)
def test_triality(theta):
    assert sl2.triality(sl2.triality(sl2.triality(theta))) == theta
    fixed = sl2.triality(theta) == theta
    assert fixed == (theta[0] == theta[1] == theta[2])


def test_triality_on_parameters(rng):
    for _ in range(50):
        th = sl2.random_theta(rng)
        a = sl2.params_of_theta(th)
        b = sl2.params_of_theta(sl2.triality(th))
        assert np.allclose([complex(x) for x in b], [complex(x) for x in (a.b3, a.b1, a.b2, a.c)], atol=1e-10)
        assert sorted(map(complex, (a.b1, a.b2, a.b3)), key=lambda z: (z.real, z.imag)) == \
            pytest.approx(sorted(map(complex, (b.b1, b.b2, b.b3)), key=lambda z: (z.real, z.imag)))


@given(q, q)
def test_symmetric_locus(t, u):
    p = sl2.params_of_theta((t, t, t, u))
    assert p.b1 == p.b2 == p.b3 if not isinstance(p.b1, complex) else \
        abs(p.b1 - p.b2) < 1e-12 and abs(p.b2 - p.b3) < 1e-12


def test_roots():
    roots = sl2.d4_roots()
    assert len(roots) == 24
    assert all(sl2.dot(r, r) == 1 for r in roots)
    assert all(tuple(-x for x in r) in roots for r in roots)
    a1, a2, a3, a4 = roots.simple
    assert tuple(x + y + z + 2 * w for x, y, z, w in zip(a1, a2, a3, a4)) == (0, 0, 0, 1)


@given(thetas)
def test_reflection(theta):
    for rho in sl2.d4_roots():
        assert sl2.reflect(sl2.reflect(theta, rho), rho) == tuple(theta)
    e1 = sl2.d4_roots().simple[0]
    assert sl2.reflect(theta, e1) == (-theta[0], *theta[1:])


def test_reflect_requires_root():
    with pytest.raises(NotARoot):
        sl2.reflect((0, 0, 0, 0), (1, 1, 0, 0))


def test_reflection_example():
    half = (Fraction(1, 2),) * 4
    img = sl2.reflect((1, 1, 0, 0), half)
    assert img == (0, 0, -1, -1)
    # both give (8, 8, -8, 28)
    assert tuple(sl2.params_of_theta((1, 1, 0, 0))) == (8, 8, -8, 28)
    assert tuple(sl2.params_of_theta(img)) == (8, 8, -8, 28)


def test_affine_weyl_examples(rng):
    rep = sl2.affine_weyl_check((1, 0, 0, 0))
    assert rep.ok and rep.translation_residual == 0
    half = (Fraction(1, 2),) * 4
    assert tuple(sl2.params_of_theta((1, 0, 0, 0))) == (0, 0, 0, -4)
    assert tuple(sl2.params_of_theta(sl2.reflect((1, 0, 0, 0), half))) == (0, 0, 0, -4)
    for _ in range(20):
        rep = sl2.affine_weyl_check(sl2.random_theta(rng))
        assert rep.ok and rep.max_residual < 1e-8


@given(thetas)
def test_affine_weyl_exact_integer_shifts(theta):
    base = sl2.params_of_theta(theta)
    for rho in sl2.d4_roots():
        img = sl2.params_of_theta(sl2.translate(theta, rho))
        assert np.allclose([complex(x) for x in img], [complex(x) for x in base], atol=1e-9)
