"""Acceptance criteria, one or more tests per criterion.

The terminal summary (see conftest.py) prints one PASS/FAIL line per
criterion.  Run alone with ``pytest tests/test_acceptance.py``.
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from g2cubics import braid, fano, fricke, g2, octonion, sl2, verify
from g2cubics.fricke import PInvariants, SurfaceParams
from g2cubics.g2 import AlphaBeta

KLEIN_XYZ = {(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)}


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def _report(n, **values):
    print(f"[criterion {n}] " + ", ".join(f"{k}={v}" for k, v in values.items()))


def test_criterion_01_octonion_table():
    with Timer() as t:
        index, sign = octonion.generate_table(octonion.FANO_LINES)
        mismatches = 0
        for i in range(8):
            for j in range(8):
                prod = octonion.Octonion.basis(i) * octonion.Octonion.basis(j)
                want = octonion.Octonion.basis(index[i][j]).scale(sign[i][j])
                mismatches += prod != want
        bad_sym = 0
        for f in (octonion.shift_index, octonion.double_index):
            for i in range(1, 8):
                for j in range(1, 8):
                    if i != j:
                        k, s = index[i][j], sign[i][j]
                        bad_sym += (index[f(i)][f(j)], sign[f(i)][f(j)]) != (f(k), s)
    _report(1, mismatches=mismatches, symmetry_violations=bad_sym, seconds=round(t.seconds, 3))
    assert mismatches == 0 and bad_sym == 0
    assert t.seconds < 1


def test_criterion_02_class_construction():
    with Timer() as t:
        checks = verify.suite_class(seed=2, tol=1e-9, samples=200)
    _report(2, **{c.name.split(" (")[0]: c.residual for c in checks}, seconds=round(t.seconds, 3))
    assert all(c.passed for c in checks)
    assert t.seconds < 5


def test_criterion_03_alpha_beta_polynomials():
    rng = np.random.default_rng(3)
    with Timer() as t:
        worst = max(verify.theorem_residual(verify.random_triple(rng)) for _ in range(1000))
    _report(3, max_relative_error=worst, seconds=round(t.seconds, 3))
    assert worst < 1e-6
    assert t.seconds < 30


def test_criterion_04_klein_pipeline():
    with Timer() as t:
        p = PInvariants.of((1, 1, 1, -2))
        pt, b = fricke.phi(p)
        c = fricke.c_from_surface(pt, b)
        ab = fricke.alpha_beta_from_p(p)
        orbit = braid.braid_orbit(p, "p")
        image = {tuple(fricke.phi(PInvariants(*q))[0]) for q in orbit.points}
    _report(4, xyzbc=(*pt, b, c), alpha_beta=tuple(ab), orbit_size=orbit.size, seconds=round(t.seconds, 3))
    assert (*pt, b, c) == (0, 0, 0, -1, 0)
    assert all(isinstance(x, Fraction) for x in (*pt, b, c))
    assert tuple(ab) == (-1, -1)
    assert orbit.size == 7 and image == KLEIN_XYZ
    assert t.seconds < 1


def test_criterion_05_finite_group():
    orders, failures = {}, {}
    rng = np.random.default_rng(5)
    with Timer() as t:
        for k in range(1, 8):
            res = fano.point_closure(k)
            orders[k] = res.order
            # exact integer check of every element, plus the Fraction-level
            # predicate on a sample as a cross-check of the bulk kernel
            failures[k] = res.automorphism_failures()
            for i in rng.choice(res.order, 20, replace=False):
                failures[k] += not g2.is_automorphism(res.element(int(i)))
    _report(5, orders=orders, automorphism_failures=sum(failures.values()), seconds=round(t.seconds, 2))
    assert all(o == 6048 for o in orders.values())
    assert sum(failures.values()) == 0
    assert t.seconds < 60


def test_criterion_06_braid_algebra():
    checks = verify.suite_braid(seed=6, tol=1e-8, samples=100)
    wanted = [c for c in checks if "dictionary" not in c.name and "Klein" not in c.name]
    _report(6, **{c.name: c.residual for c in wanted})
    for c in wanted:
        assert c.passed, c.name


def test_criterion_07_equivariance_dictionary():
    rep = braid.equivariance_dictionary(samples=100, seed=7)
    _report(7, dictionary={g: braid.word_to_str(w) for g, w in rep.dictionary.items()},
            candidates=rep.candidates, searched=rep.searched, klein=rep.klein_orbits_match)
    assert not rep.missing
    assert rep.klein_orbits_match


def test_criterion_08_fiber_structure():
    checks = verify.fiber_checks(seed=8, samples=30)
    _report(8, **{c.name: c.passed for c in checks})
    fib = fricke.pr_fiber(AlphaBeta(Fraction(6), Fraction(6)))
    assert sorted((f.b, f.c, f.multiplicity) for f in fib) == [(-8, 28, 1), (1, 1, 2)]
    for c in checks:
        assert c.passed, c.name


def test_criterion_09_locus_geometry():
    checks = verify.locus_checks(seed=9, samples=100, tol=1e-8)
    _report(9, **{c.name: c.residual for c in checks})
    for c in checks:
        assert c.passed, c.name


def test_criterion_10_covering_identity():
    rng = np.random.default_rng(10)
    q = lambda: Fraction(int(rng.integers(-30, 31)), int(rng.integers(1, 13)))
    bad = sum(lhs != rhs for lhs, rhs in (fricke.covering_check(q(), q(), q(), q()) for _ in range(100)))
    b = Fraction(0)
    c, d = b * b / 4 - 2 * b - 4, -4 - b / 2
    same = True
    for _ in range(20):
        X, Y, Z = q(), q(), q()
        lhs, rhs = fricke.covering_check(0, X, Y, Z)
        cay = fricke.fricke_residual((2 - X * X, 2 - Y * Y, 2 - Z * Z), SurfaceParams(0, -4))
        same &= lhs == rhs == cay
    _report(10, mismatches=bad, c=c, d=d)
    assert bad == 0
    assert c == d == -4 and same


def test_criterion_11_sl2_d4():
    rng = np.random.default_rng(11)
    fr_bad = 0
    for _ in range(500):
        t7 = sl2.seven_functions(*(sl2.random_sl2(rng) for _ in range(3)))
        fr_bad += fricke.fricke_residual(t7.point, sl2.fricke_params(*t7.m)) != 0
    worst = 0.0
    for _ in range(50):
        worst = max(worst, sl2.affine_weyl_check(sl2.random_theta(rng), 1e-8).max_residual)
    tri = 0.0
    multiset = sym = True
    for _ in range(50):
        th = sl2.random_theta(rng)
        a, b = sl2.params_of_theta(th), sl2.params_of_theta(sl2.triality(th))
        tri = max(tri, max(abs(x - y) for x, y in zip((a.b3, a.b1, a.b2, a.c), tuple(b))))
        key = lambda z: (round(z.real, 8), round(z.imag, 8))
        multiset &= sorted(map(key, (a.b1, a.b2, a.b3))) == sorted(map(key, (b.b1, b.b2, b.b3)))
        u, v = Fraction(int(rng.integers(-9, 10)), 7), Fraction(int(rng.integers(-9, 10)), 5)
        p = sl2.params_of_theta((u, u, u, v))
        sym &= p.b1 == p.b2 == p.b3
    _report(11, fricke_nonzero=fr_bad, affine_weyl_residual=worst, triality_residual=tri)
    assert fr_bad == 0
    assert worst < 1e-8
    assert tri < 1e-8 and multiset and sym


@pytest.fixture(scope="module")
def size18():
    return verify.size18_check(seed=0)


def test_criterion_12_realize(size18):
    _report(12, realize_residual=size18.realize_residual)
    assert size18.realize_residual < 1e-8


def test_criterion_12_sextic_divides_charpoly(size18):
    # Literal divisibility of the degree-7 charpoly of g1^2 g2 by the sextic.
    # The charpoly has coefficients in Q(cos(pi/7)); only two of its roots are
    # roots of the sextic (see test_criterion_12_shared_eigenvalue).
    _report(12, division_residual=size18.division_residual)
    assert size18.division_residual < 1e-6


def test_criterion_12_shared_eigenvalue(size18):
    # the sextic is the minimal polynomial over Q of an eigenvalue: it is
    # irreducible and has a root in common with the charpoly
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    irreducible = sympy.Poly(list(verify.SEXTIC), x).is_irreducible
    _report(12, shared_roots=len(size18.shared_roots), irreducible=irreducible,
            galois_norm_residual=size18.norm_residual)
    assert irreducible
    assert len(size18.shared_roots) >= 1
    assert size18.norm_residual < 1e-12


def test_criterion_12_real_root(size18):
    _report(12, real_root=size18.sextic_real_root)
    assert size18.sextic_real_root > 1


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
