"""Verification suites behind ``g2cubics verify``.

Each suite returns a list of :class:`Check` records; nothing here raises on
a failed check, so a report always covers every item.
"""
import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import braid, config, fano, fricke, g2, octonion, sl2
from .fricke import PInvariants, SurfaceParams, SurfacePoint
from .g2 import AlphaBeta, TorusPoint


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    residual: object = None
    detail: str = ""

    def to_json(self):
        r = self.residual
        if isinstance(r, Fraction):
            r = str(r)
        elif r is not None:
            r = float(r)
        return {"suite": self.suite, "check": self.name, "passed": bool(self.passed),
                "residual": r, "detail": self.detail}


def _rand_q(rng, height=9):
    return Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height + 1)))


def _rand_c(rng, scale=2.0):
    return complex(*rng.uniform(-scale, scale, 2))


# -- octonion -----------------------------------------------------------------

def suite_octonion(seed=0, tol=None, samples=50):
    tol = config.resolve(tol)
    out = []
    gen_index, gen_sign = octonion.generate_table()
    mismatches = sum((gen_index[i][j], gen_sign[i][j]) != (octonion.MUL_INDEX[i][j], octonion.MUL_SIGN[i][j])
                     for i in range(8) for j in range(8))
    out.append(Check("octonion", "table matches the seven lines", mismatches == 0, mismatches))
    for name, f in (("n -> n+1", octonion.shift_index), ("n -> 2n", octonion.double_index)):
        bad = 0
        for i in range(1, 8):
            for j in range(1, 8):
                if i == j:
                    continue
                k, s = octonion.MUL_INDEX[i][j], octonion.MUL_SIGN[i][j]
                k2, s2 = octonion.MUL_INDEX[f(i)][f(j)], octonion.MUL_SIGN[f(i)][f(j)]
                bad += (k2, s2) != (f(k), s)
        out.append(Check("octonion", f"table invariant under {name}", bad == 0, bad))
    gram = max(abs(octonion.oct_form(octonion.Octonion.basis(i), octonion.Octonion.basis(j))
                   - (1 if i == j else 0)) for i in range(8) for j in range(8))
    out.append(Check("octonion", "basis orthonormal for the form", gram == 0, gram))
    rng = np.random.default_rng(seed)
    comp = alt = conj = 0.0
    for _ in range(samples):
        a, b = (octonion.Octonion(*(rng.normal(size=8) + 1j * rng.normal(size=8))) for _ in range(2))
        ab = a * b
        comp = max(comp, abs(ab.norm() - a.norm() * b.norm()) / max(1.0, abs(a.norm() * b.norm())))
        alt = max(alt, max(abs(x) for x in octonion.assoc(a, a, b).c),
                  max(abs(x) for x in octonion.assoc(a, b, b).c))
        conj = max(conj, max(abs(x - y) for x, y in zip(ab.conj().c, (b.conj() * a.conj()).c)))
    out.append(Check("octonion", "norm is multiplicative", comp < tol, comp))
    out.append(Check("octonion", "alternative laws", alt < tol * 100, alt))
    out.append(Check("octonion", "conj(ab) = conj(b) conj(a)", conj < tol * 100, conj))
    return out


# -- class C ------------------------------------------------------------------

def suite_class(seed=0, tol=None, samples=200):
    tol = config.resolve(tol)
    rng = np.random.default_rng(seed)
    auto = order = spec = 0.0
    mult_ok = True
    for _ in range(samples):
        g = g2.conj_map(g2.random_norm3(rng))
        auto = max(auto, g2.automorphism_residual(g))
        order = max(order, float(np.abs(np.asarray((g ** 3).m) - np.eye(7)).max()))
        spec = max(spec, g2.spectrum_deviation(g))
        mult_ok &= g2.class_multiplicities(g, 1e-8) == (1, 3, 3)
    return [
        Check("class", f"conj_map is an automorphism ({samples} samples)", auto < tol, auto),
        Check("class", "conj_map has order 3", order < tol, order),
        Check("class", "spectrum {1, w x3, wbar x3}", spec < 1e-6 and mult_ok, spec,
              "multiplicities from trace and g^3 = 1 agree" if mult_ok else "multiplicity mismatch"),
    ]


# -- theorem, pr map and loci -------------------------------------------------

def random_triple(rng):
    return tuple(g2.random_norm3(rng) for _ in range(3))


def theorem_residual(triple):
    """Relative disagreement between the polynomial and the matrix-trace routes."""
    p = fricke.p_invariants(*triple)
    poly = fricke.alpha_beta_from_p(p)
    g1, g2_, g3 = (g2.conj_map(v) for v in triple)
    mat = g2.alpha_beta_of(g1 @ g2_ @ g3)
    return max(abs(complex(a) - complex(b)) / max(1.0, abs(complex(b))) for a, b in zip(poly, mat))


def suite_theorem(seed=0, tol=None, samples=1000):
    rng = np.random.default_rng(seed)
    worst = max(theorem_residual(random_triple(rng)) for _ in range(samples))
    out = [Check("theorem", f"alpha, beta from p match the product ({samples} triples)",
                 worst < 1e-6, worst)]
    klein = fricke.alpha_beta_from_p(PInvariants.of((1, 1, 1, -2)))
    out.append(Check("theorem", "Klein point gives (-1, -1)", tuple(klein) == (-1, -1)))
    out.extend(fiber_checks(seed))
    out.extend(locus_checks(seed))
    out.extend(covering_checks(seed))
    return out


def fiber_checks(seed=0, samples=30):
    rng = np.random.default_rng(seed)
    fib = fricke.pr_fiber(AlphaBeta(Fraction(6), Fraction(6)))
    got = sorted((f.b, f.c, f.multiplicity) for f in fib)
    want = sorted([(Fraction(1), Fraction(1), 2), (Fraction(-8), Fraction(28), 1)])
    out = [Check("theorem", "pr fibre over (6, 6)", got == want, detail=str(got))]
    bad = 0
    for _ in range(samples):
        ab = AlphaBeta(_rand_q(rng), _rand_q(rng))
        disc = fricke.cubic_discriminant(fricke.bcubic(ab))
        bad += disc != 27 * fricke.locus_values_ab(ab)[0]
    out.append(Check("theorem", f"cubic discriminant = 27 d1 ({samples} exact samples)", bad == 0, bad))
    distinct = avoid = True
    for _ in range(samples):
        ab = AlphaBeta(_rand_c(rng), _rand_c(rng))
        d1, d2 = fricke.locus_values_ab(ab)
        if abs(d1) < 1e-3 or abs(d2) < 1e-3:
            continue
        fib = fricke.pr_fiber(ab)
        distinct &= len(fib) == 3 and all(f.multiplicity == 1 for f in fib)
        for f in fib:
            s1, s2, _ = fricke.locus_values_bc(f.params)
            avoid &= abs(s1) > 1e-6 and abs(s2) > 1e-6
    out.append(Check("theorem", "generic fibres have 3 distinct points", bool(distinct)))
    out.append(Check("theorem", "generic fibre points avoid the singular loci", bool(avoid)))
    return out


def sing2_c(b):
    """The two ``c`` with ``sing2(b, c) = 0``."""
    disc = cmath.sqrt((6 * b - 4) ** 2 - 4 * (4 * b ** 3 - 3 * b ** 2))
    return ((6 * b - 4) + disc) / 2, ((6 * b - 4) - disc) / 2


def locus_checks(seed=0, samples=100, tol=1e-8):
    rng = np.random.default_rng(seed + 1)
    s1 = s2 = 0.0
    dbl_bad = 0
    for _ in range(samples):
        b = _rand_c(rng)
        c = (b * b - 8 * b - 16) / 4
        s1 = max(s1, abs(fricke.locus_values_ab(fricke.pr(SurfaceParams(b, c)))[0]))
        b2 = _rand_c(rng)
        c2 = sing2_c(b2)[int(rng.integers(2))]
        s2 = max(s2, abs(fricke.locus_values_ab(fricke.pr(SurfaceParams(b2, c2)))[1]))
        bq = _rand_q(rng)
        dbl_bad += fricke.locus_values_ab(fricke.pr(SurfaceParams(bq, bq * bq + bq - 1)))[0] != 0
    long_ = short = 0.0
    for _ in range(samples):
        a = cmath.exp(complex(rng.uniform(-0.5, 0.5), rng.uniform(-math.pi, math.pi)))
        long_ = max(long_, abs(fricke.locus_values_ab(g2.torus_alpha_beta(TorusPoint(a, a)))[0]))
        short = max(short, abs(fricke.locus_values_ab(g2.torus_alpha_beta(TorusPoint(a, 1.0 + 0j)))[1]))
    return [
        Check("theorem", "pr(sing1 = 0) lies on d1 = 0", s1 < tol, s1),
        Check("theorem", "pr(sing2 = 0) lies on d2 = 0", s2 < tol, s2),
        Check("theorem", "pr(dbl = 0) lies on d1 = 0 (exact)", dbl_bad == 0, dbl_bad),
        Check("theorem", "torus long-root wall lies on d1 = 0", long_ < tol, long_),
        Check("theorem", "torus short-root wall lies on d2 = 0", short < tol, short),
    ]


def covering_checks(seed=0, samples=100):
    rng = np.random.default_rng(seed + 2)
    bad = 0
    for _ in range(samples):
        lhs, rhs = fricke.covering_check(*(_rand_q(rng) for _ in range(4)))
        bad += lhs != rhs
    b0 = Fraction(0)
    c0, d0 = b0 * b0 / 4 - 2 * b0 - 4, -4 - b0 / 2
    cayley = c0 == d0 == -4 and all(
        (lambda t: t[0] == t[1])(fricke.covering_check(0, *(_rand_q(rng) for _ in range(3))))
        for _ in range(20))
    return [
        Check("theorem", f"covering identity ({samples} exact samples)", bad == 0, bad),
        Check("theorem", "b = 0 gives the Cayley endomorphism (c = d = -4)", cayley),
    ]


# -- braid ----------------------------------------------------------------------

def random_p(rng):
    return PInvariants(*(_rand_q(rng) for _ in range(4)))


def suite_braid(seed=0, tol=None, samples=100):
    tol = 1e-8 if tol is None else tol
    rng = np.random.default_rng(seed)
    rel_p = rel_xyz = inv = cons = 0
    for _ in range(samples):
        p = random_p(rng)
        rel_p += braid.act_word("p", (1, 2, 1), p) != braid.act_word("p", (2, 1, 2), p)
        for gen in braid.GENERATORS:
            inv += braid.braid_p(-gen, braid.braid_p(gen, p)) != p
            q = braid.braid_p(gen, p)
            cons += q.p4 + q.s1 != p.p4 + p.s1
        pt, b = SurfacePoint(*(_rand_q(rng) for _ in range(3))), _rand_q(rng)
        rel_xyz += braid.act_word("xyz", (1, 2, 1), pt, b) != braid.act_word("xyz", (2, 1, 2), pt, b)
        for gen in braid.GENERATORS:
            inv += braid.braid_xyz(-gen, braid.braid_xyz(gen, pt, b), b) != pt
            cons += fricke.c_from_surface(braid.braid_xyz(gen, pt, b), b) != fricke.c_from_surface(pt, b)
    out = [
        Check("braid", "braid relation at p level (exact)", rel_p == 0, rel_p),
        Check("braid", "braid relation at xyz level (exact)", rel_xyz == 0, rel_xyz),
        Check("braid", "inverse generators undo the moves", inv == 0, inv),
        Check("braid", "p4 + s1 and c are conserved", cons == 0, cons),
    ]
    sq_p = sq_m = rel_m = 0.0
    for _ in range(20):
        trip = random_triple(rng)
        p = fricke.p_invariants(*trip)
        mats = tuple(g2.conj_map(v) for v in trip)
        for gen in braid.GENERATORS:
            new = braid.braid_oct(gen, trip)
            got = fricke.p_invariants(*new, tol=1e-6)
            want = braid.braid_p(gen, p)
            sq_p = max(sq_p, max(abs(complex(a) - complex(b)) for a, b in zip(got, want)))
            for m_new, m_want in zip((g2.conj_map(v, 1e-6) for v in new), braid.braid_triple(gen, mats)):
                sq_m = max(sq_m, float(np.abs(np.asarray(m_new.m) - np.asarray(m_want.m)).max()))
        lhs = braid.act_word("matrix", (1, 2, 1), mats)
        rhs = braid.act_word("matrix", (2, 1, 2), mats)
        scale = max(1.0, max(float(np.abs(np.asarray(a.m)).max()) for a in lhs))
        rel_m = max(rel_m, max(float(np.abs(np.asarray(a.m) - np.asarray(b.m)).max())
                               for a, b in zip(lhs, rhs)) / scale)
    out += [
        Check("braid", "p_invariants o braid_oct = braid_p o p_invariants", sq_p < tol, sq_p),
        Check("braid", "conj_map o braid_oct = braid_triple o conj_map", sq_m < tol, sq_m),
        Check("braid", "braid relation at matrix level (relative)", rel_m < tol, rel_m),
    ]
    rep = braid.equivariance_dictionary(samples=samples, seed=seed)
    words = ", ".join(f"b{g}^p -> {braid.word_to_str(w)}" for g, w in sorted(rep.dictionary.items()))
    out.append(Check("braid", "p / xyz equivariance dictionary", not rep.missing, detail=words))
    out.append(Check("braid", "Klein orbits agree under phi", rep.klein_orbits_match))
    return out


# -- Weyl groups ------------------------------------------------------------------

def suite_weyl(seed=0, tol=None, samples=50):
    tol = 1e-8 if tol is None else tol
    rng = np.random.default_rng(seed)
    g2_res = 0.0
    size_ok = True
    for _ in range(samples):
        t = TorusPoint(_rand_q(rng) or Fraction(2), _rand_q(rng) or Fraction(3))
        orbit = g2.weyl_orbit(t)
        base = g2.torus_alpha_beta(t)
        g2_res = max(g2_res, max(max(abs(a - b) for a, b in zip(base, g2.torus_alpha_beta(q)))
                                 for _, q in orbit))
        size_ok &= len(orbit) <= 12
    out = [Check("weyl", "alpha, beta are Weyl invariant (exact)", g2_res == 0 and size_ok, g2_res)]
    worst = 0.0
    for _ in range(samples):
        worst = max(worst, sl2.affine_weyl_check(sl2.random_theta(rng)).max_residual)
    out.append(Check("weyl", f"affine D4 invariance ({samples} theta x 24 roots)", worst < tol, worst))
    tri = 0.0
    sym_ok = True
    for _ in range(samples):
        th = sl2.random_theta(rng)
        a = sl2.params_of_theta(th)
        b = sl2.params_of_theta(sl2.triality(th))
        tri = max(tri, max(abs(x - y) for x, y in zip((a.b3, a.b1, a.b2, a.c), tuple(b))))
        q = _rand_q(rng)
        p = sl2.params_of_theta((q, q, q, _rand_q(rng)))
        sym_ok &= p.b1 == p.b2 == p.b3
    out.append(Check("weyl", "triality cycles (b1, b2, b3) and fixes c", tri < tol, tri))
    out.append(Check("weyl", "theta1 = theta2 = theta3 gives b1 = b2 = b3", bool(sym_ok)))
    roots = sl2.d4_roots()
    e4 = tuple(sum(c * r[i] for c, r in zip((1, 1, 1, 2), roots.simple)) for i in range(4))
    out.append(Check("weyl", "24 roots of norm 1, a1+a2+a3+2a4 = e4",
                     len(roots) == 24 and all(sl2.dot(r, r) == 1 for r in roots)
                     and e4 == (0, 0, 0, 1)))
    fricke_bad = 0
    for _ in range(samples):
        ms = [sl2.random_sl2(rng) for _ in range(3)]
        t7 = sl2.seven_functions(*ms)
        fricke_bad += fricke.fricke_residual(t7.point, sl2.fricke_params(*t7.m)) != 0
    out.append(Check("weyl", "Fricke relation for SL2 triples (exact)", fricke_bad == 0, fricke_bad))
    return out


# -- Fano group -------------------------------------------------------------------

def suite_fano(seed=0, tol=None, max_order=10**5, points=range(1, 8)):
    out = []
    for k in points:
        t0 = time.perf_counter()
        res = fano.point_closure(k, max_order)
        bad = res.automorphism_failures() + res.orthogonality_failures()
        out.append(Check("fano", f"point {k}: order 6048, all automorphisms",
                         res.order == 6048 and bad == 0, bad,
                         f"order {res.order} in {time.perf_counter() - t0:.2f}s ({res.backend})"))
    p = fano.point_invariants(7)
    out.append(Check("fano", "point 7 invariants (1, 1, 1, -2)", tuple(p) == (1, 1, 1, -2)))
    return out


SUITES = {
    "octonion": suite_octonion,
    "class": suite_class,
    "theorem": suite_theorem,
    "braid": suite_braid,
    "weyl": suite_weyl,
    "fano": suite_fano,
}


def run(suite="all", seed=0, tol=None):
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        try:
            fn = SUITES[name]
        except KeyError:
            raise ValueError(f"unknown suite {name!r}") from None
        out.extend(fn(seed=seed, tol=tol))
    return out


# -- the size-18 example ------------------------------------------------------------

SEXTIC = (1, -2, 2, -3, 2, -2, 1)


def size18_p():
    c = math.cos(math.pi / 7)
    return PInvariants(-1.0 + 0j, -1.0 + 0j, complex(1 - 4 * c), complex(2 - 4 * c))


@dataclass
class Size18Report:
    realize_residual: float
    charpoly: np.ndarray
    division_residual: float
    shared_roots: list
    sextic_real_root: float
    norm_residual: float


def size18_check(seed=0):
    """Realise the size-18 invariants, then relate ``charpoly(g1^2 g2)`` to the sextic.

    ``division_residual`` is the largest remainder coefficient of the
    charpoly modulo the sextic.  ``norm_residual`` compares the sextic with the
    product of the quadratic factor ``X^2 - ((t+1)/2) X + 1`` of the charpoly
    over the three conjugates ``t = 1 - 4 cos(k pi / 7)``, k = 1, 3, 5.
    """
    p = size18_p()
    v1, v2, v3 = fricke.realize_triple(p, tol=1e-8, seed=seed)
    got = fricke.p_invariants(v1, v2, v3, tol=1e-8)
    res = max(abs(complex(a) - complex(b)) for a, b in zip(got, p))
    g1, g2_ = g2.conj_map(v1), g2.conj_map(v2)
    m = np.asarray((g1 @ g1 @ g2_).m, dtype=complex)
    cp = np.poly(m)
    _, rem = np.polydiv(cp, np.array(SEXTIC, dtype=float))
    div_res = float(np.abs(rem).max())
    sextic_roots = np.roots(SEXTIC)
    shared = [r for r in sextic_roots if abs(np.polyval(cp, r)) < 1e-6]
    real = max(r.real for r in sextic_roots if abs(r.imag) < 1e-9)
    prod = np.array([1.0 + 0j])
    for k in (1, 3, 5):
        t = 1 - 4 * math.cos(k * math.pi / 7)
        prod = np.polymul(prod, [1, -(t + 1) / 2, 1])
    norm_res = float(np.abs(prod - np.array(SEXTIC)).max())
    return Size18Report(res, cp, div_res, shared, real, norm_res)
