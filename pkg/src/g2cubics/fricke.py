"""Invariants of octonion triples and the symmetric Fricke cubic picture.

The four p-invariants coordinatise the quotient of C^3 by G2; the map
``phi`` turns them into a point ``(x, y, z)`` on the symmetric Fricke cubic
with parameter ``b``, and ``pr`` sends the surface parameters ``(b, c)`` to
the invariants ``(alpha, beta)`` of the product ``g1 g2 g3``.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

import numpy as np

from . import scalars
from .errors import NormNotThree, RealizationFailed
from .g2 import AlphaBeta
from .octonion import Octonion, oct_form, oct_mul, oct_norm, vector7


@dataclass(frozen=True)
class PInvariants:
    p1: object
    p2: object
    p3: object
    p4: object

    @property
    def s1(self):
        return self.p1 + self.p2 + self.p3

    @property
    def s2(self):
        return self.p1 * self.p2 + self.p2 * self.p3 + self.p3 * self.p1

    @property
    def s3(self):
        return self.p1 * self.p2 * self.p3

    def astuple(self):
        return (self.p1, self.p2, self.p3, self.p4)

    def __iter__(self):
        return iter(self.astuple())

    def isclose(self, other, tol=None):
        return all(scalars.close(a, b, tol) for a, b in zip(self, other))

    @classmethod
    def of(cls, values):
        ring, vals = scalars.promote(values)
        if len(vals) != 4:
            raise ValueError("p-invariants are a 4-tuple")
        return cls(*vals)


@dataclass(frozen=True)
class SurfacePoint:
    x: object
    y: object
    z: object

    def astuple(self):
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.astuple())

    def isclose(self, other, tol=None):
        return all(scalars.close(a, b, tol) for a, b in zip(self, other))

    @classmethod
    def of(cls, values):
        _, vals = scalars.promote(values)
        return cls(*vals)


@dataclass(frozen=True)
class SurfaceParams:
    """Symmetric Fricke cubic ``xyz + x^2 + y^2 + z^2 + b(x + y + z) + c = 0``."""
    b: object
    c: object

    def asym(self):
        return AsymParams(self.b, self.b, self.b, self.c)

    def __iter__(self):
        return iter((self.b, self.c))


@dataclass(frozen=True)
class AsymParams:
    b1: object
    b2: object
    b3: object
    c: object

    def __iter__(self):
        return iter((self.b1, self.b2, self.b3, self.c))

    def is_symmetric(self, tol=None):
        return scalars.close(self.b1, self.b2, tol) and scalars.close(self.b2, self.b3, tol)


def _frac(x):
    return Fraction(x) if isinstance(x, int) else x


def p_invariants(v1, v2, v3, tol=None):
    """``(<v2,v3>, <v1,v3>, <v1,v2>, <v1, v2 v3>)`` for three norm-3 vectors in V."""
    for v in (v1, v2, v3):
        n = oct_norm(v)
        if not scalars.close(n, 3, tol):
            raise NormNotThree(n)
    return PInvariants(oct_form(v2, v3), oct_form(v1, v3), oct_form(v1, v2),
                       oct_form(v1, oct_mul(v2, v3)))


def alpha_beta_from_p(p):
    """Invariants of ``g1 g2 g3`` as polynomials in ``p4`` and the symmetric functions of p1..p3."""
    p4, s1, s2, s3 = p.p4, p.s1, p.s2, p.s3
    alpha8 = p4 * s1 - s1 ** 2 + 3 * p4 + 3 * s1 + 3 * s2 + s3 - 6
    beta64 = (-p4 ** 3 + 3 * p4 ** 2 * s1 - 3 * p4 * s1 ** 2 - 7 * s1 ** 3 + 9 * p4 ** 2
              - 12 * p4 * s1 + 18 * p4 * s2 + 6 * p4 * s3 + 39 * s1 ** 2 + 18 * s1 * s2
              + 6 * s1 * s3 - 9 * p4 - 9 * s1 - 90 * s2 - 30 * s3 - 183)
    if isinstance(alpha8, Fraction) or isinstance(alpha8, int):
        return AlphaBeta(Fraction(alpha8, 8), Fraction(beta64, 64))
    return AlphaBeta(alpha8 / 8, beta64 / 64)


def _half(x):
    return Fraction(x) / 2 if scalars.ring_of(x) == scalars.EXACT else x / 2


def phi(p):
    """``x = (1 - p1)/2`` etc. and ``b = (p1 + p2 + p3 + p4 - 5)/4``."""
    x, y, z = (_half(1 - q) for q in (p.p1, p.p2, p.p3))
    b = _half(_half(p.p1 + p.p2 + p.p3 + p.p4 - 5))
    return SurfacePoint(x, y, z), b


def phi_inv(pt, b):
    p1, p2, p3 = (1 - 2 * _frac(u) for u in pt)
    p4 = 4 * _frac(b) + 5 - p1 - p2 - p3
    return PInvariants(p1, p2, p3, p4)


def c_from_surface(pt, b):
    x, y, z = pt
    return -(x * y * z + x * x + y * y + z * z + b * (x + y + z))


def fricke_residual(pt, params):
    x, y, z = pt
    if isinstance(params, SurfaceParams):
        params = params.asym()
    b1, b2, b3, c = params
    return x * y * z + x * x + y * y + z * z + b1 * x + b2 * y + b3 * z + c


def pr(params):
    """``(b, c) -> (alpha, beta)`` with ``alpha = c + 2 + 3b``, ``beta = -b^3 + 3b^2 + 3bc + 3b - 2``."""
    b, c = _frac(params.b), _frac(params.c)
    return AlphaBeta(c + 2 + 3 * b, -b ** 3 + 3 * b ** 2 + 3 * b * c + 3 * b - 2)


def bcubic(ab):
    """Coefficients (highest first) of ``b^3 + 6b^2 - 3(alpha - 1) b + beta + 2``."""
    alpha, beta = _frac(ab.alpha), _frac(ab.beta)
    return (alpha ** 0, 6 * alpha ** 0, -3 * (alpha - 1), beta + 2)


def cubic_discriminant(coeffs):
    """Discriminant of ``a b^3 + p b^2 + q b + r`` (generic formula)."""
    a, p, q, r = coeffs
    return p * p * q * q - 4 * a * q ** 3 - 4 * p ** 3 * r - 27 * a * a * r * r + 18 * a * p * q * r


@dataclass(frozen=True)
class Surd:
    """``a + k sqrt(d)`` with rational a, k and square-free integer d (d may be negative)."""
    a: Fraction
    k: Fraction
    d: int

    def __complex__(self):
        return complex(complex(self.a) + complex(self.k) * np.sqrt(complex(self.d)))

    def __float__(self):
        if self.d < 0:
            raise TypeError("complex surd")
        return float(self.a) + float(self.k) * float(np.sqrt(self.d))

    def _wrap(self, a, k):
        return a if k == 0 else Surd(a, k, self.d)

    def __add__(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                return NotImplemented
            return self._wrap(self.a + other.a, self.k + other.k)
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.a + other, self.k)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.k, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                return NotImplemented
            return self._wrap(self.a * other.a + self.k * other.k * self.d,
                              self.a * other.k + self.k * other.a)
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.a * other, self.k * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Fraction(1)
        for _ in range(n):
            out = self * out
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.a / other, self.k / other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.a, self.k, self.d) == (other.a, other.k, other.d)
        return False

    def __hash__(self):
        return hash((self.a, self.k, self.d))

    def __repr__(self):
        return f"({self.a} {'+' if self.k >= 0 else '-'} {abs(self.k)}*sqrt({self.d}))"


def squarefree_split(n, limit=10**6):
    """Write ``n = s^2 f`` with ``f`` square-free (trial division up to ``limit``)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, f, p = 1, 1, 2
    while p * p <= n and p <= limit:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        f *= p ** (e % 2)
        p += 1 if p == 2 else 2
    r = isqrt(n)
    if r * r == n:
        s *= r
    else:
        f *= n
    return s, sign * f


def rational_sqrt(q):
    """``sqrt(q)`` as a Fraction, or as a Surd when irrational."""
    q = Fraction(q)
    num = q.numerator * q.denominator
    s, f = squarefree_split(num)
    if f == 1:
        return Fraction(s, q.denominator)
    if f == 0:
        return Fraction(0)
    return Surd(Fraction(0), Fraction(s, q.denominator), f)


@dataclass(frozen=True)
class FiberPoint:
    b: object
    c: object
    multiplicity: int

    @property
    def params(self):
        return SurfaceParams(self.b, self.c)


def _poly_eval(coeffs, x):
    acc = coeffs[0] * 0
    for a in coeffs:
        acc = acc * x + a
    return acc


def _deflate(coeffs, root):
    out = [coeffs[0]]
    for a in coeffs[1:-1]:
        out.append(a + out[-1] * root)
    return out


def _exact_roots(coeffs):
    """Roots of a monic rational polynomial of degree <= 3 with multiplicities.

    Rational roots are found by rounding numeric roots to the lattice
    allowed by the rational root theorem and checking exactly; a leftover
    quadratic is solved with the quadratic formula.  Returns None if the
    polynomial has no rational root (irreducible cubic).
    """
    coeffs = [Fraction(a) for a in coeffs]
    denom = lcm(*(a.denominator for a in coeffs))
    roots = []
    while len(coeffs) > 3:
        found = None
        for r in np.roots([complex(a) for a in coeffs]):
            if abs(r.imag) > 1e-6 * max(1.0, abs(r)):
                continue
            cand = Fraction(float(r.real)).limit_denominator(max(denom, 1))
            for c in (cand, Fraction(round(r.real))):
                if _poly_eval(coeffs, c) == 0:
                    found = c
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        coeffs = _deflate(coeffs, found)
    if len(coeffs) == 3:
        a, p, q = coeffs
        p, q = p / a, q / a
        disc = p * p / 4 - q
        sq = rational_sqrt(disc)
        if isinstance(sq, Fraction):
            roots += [-p / 2 + sq, -p / 2 - sq]
        else:
            roots += [Surd(-p / 2, sq.k, sq.d), Surd(-p / 2, -sq.k, sq.d)]
    elif len(coeffs) == 2:
        roots.append(-coeffs[1] / coeffs[0])
    merged = []
    for r in roots:
        for i, (s, m) in enumerate(merged):
            if s == r:
                merged[i] = (s, m + 1)
                break
        else:
            merged.append((r, 1))
    return merged


def _numeric_roots(coeffs, merge_tol=1e-8):
    coeffs = np.array([complex(a) for a in coeffs])
    roots = list(np.roots(coeffs))
    deriv = np.polyder(coeffs)
    scale = max(1.0, float(np.abs(coeffs).max()))
    merged = []
    for r in roots:
        for i, (s, m) in enumerate(merged):
            gap = abs(r - s)
            near = gap < merge_tol * max(1.0, abs(s))
            # a double root is only resolved to ~sqrt(eps); accept it when the
            # derivative also vanishes at the midpoint
            double = gap < 1e-5 * max(1.0, abs(s)) and \
                abs(np.polyval(deriv, (r * m + s * 1) / (m + 1))) < 1e-6 * scale
            if near or double:
                merged[i] = ((s * m + r) / (m + 1), m + 1)
                break
        else:
            merged.append((r, 1))
    return merged


def pr_fiber(ab, merge_tol=1e-8):
    """Points ``(b, c, multiplicity)`` with ``pr(b, c) = (alpha, beta)``."""
    coeffs = bcubic(ab)
    alpha = _frac(ab.alpha)
    exact = all(scalars.ring_of(a) == scalars.EXACT for a in coeffs)
    roots = _exact_roots(coeffs) if exact else None
    if roots is None:
        roots = _numeric_roots(coeffs, merge_tol)
        alpha = complex(alpha)
    out = [FiberPoint(b, alpha - 2 - 3 * b, m) for b, m in roots]
    return sorted(out, key=lambda f: (complex(f.b).real, complex(f.b).imag))


def locus_values_ab(ab):
    """``d1`` (fibres of pr degenerate) and ``d2`` (the other Weyl discriminant component)."""
    a, B = _frac(ab.alpha), _frac(ab.beta)
    d1 = 4 * a ** 3 - 12 * a * B - B ** 2 - 36 * a - 24 * B - 36
    d2 = a ** 2 - 4 * B - 12
    return d1, d2


def locus_values_bc(params):
    """The two singular-locus factors and the extra conic in the preimage of d1."""
    b, c = _frac(params.b), _frac(params.c)
    sing1 = b ** 2 - 8 * b - 4 * c - 16
    sing2 = 4 * b ** 3 - 3 * b ** 2 - 6 * b * c + c ** 2 + 4 * c
    dbl = b ** 2 + b - c - 1
    return sing1, sing2, dbl


def very_symmetric(m):
    """Parameters when all four local monodromies share the trace ``m``."""
    m = _frac(m)
    return SurfaceParams(-2 * m ** 2, m ** 4 - 4 + 4 * m ** 2)


def covering_check(b, X, Y, Z):
    """Both sides of ``f(2 - X^2, 2 - Y^2, 2 - Z^2) = g(X, Y, Z) g(-X, Y, Z)``.

    ``f`` is the symmetric cubic with ``c = b^2/4 - 2b - 4`` and ``g`` is
    ``XYZ + X^2 + Y^2 + Z^2 + d`` with ``d = -4 - b/2``.
    """
    b, X, Y, Z = (_frac(t) for t in (b, X, Y, Z))
    c = b * b / 4 - 2 * b - 4
    d = -4 - b / 2
    lhs = fricke_residual((2 - X * X, 2 - Y * Y, 2 - Z * Z), SurfaceParams(b, c))

    def g(u, v, w):
        return u * v * w + u * u + v * v + w * w + d

    return lhs, g(X, Y, Z) * g(-X, Y, Z)


# -- singular points ---------------------------------------------------------

def _grad(params, pt):
    b = complex(params.b)
    x, y, z = pt
    return np.array([y * z + 2 * x + b, x * z + 2 * y + b, x * y + 2 * z + b])


def _hess(pt):
    x, y, z = pt
    return np.array([[2, z, y], [z, 2, x], [y, x, 2]], dtype=complex)


def critical_points(params, seed=0, starts=200, tol=1e-12):
    """Critical points of the Fricke polynomial, by multistart Newton."""
    rng = np.random.default_rng(seed)
    found = []
    b = complex(params.b)
    scale = 2.0 + abs(b)
    for _ in range(starts):
        pt = scale * (rng.normal(size=3) + 1j * rng.normal(size=3))
        for _ in range(100):
            try:
                step = np.linalg.solve(_hess(pt), _grad(params, pt))
            except np.linalg.LinAlgError:
                break
            pt = pt - step
            if np.abs(step).max() < tol * max(1.0, np.abs(pt).max()):
                break
        if np.abs(_grad(params, pt)).max() > 1e-9 * max(1.0, np.abs(pt).max() ** 2):
            continue
        if not any(np.abs(pt - q).max() < 1e-6 * max(1.0, np.abs(q).max()) for q in found):
            found.append(pt)
    return found


def singularity_residual(params, seed=0):
    """``min |F|`` over critical points; zero exactly when the surface is singular."""
    c = complex(params.c)
    pts = critical_points(params, seed=seed)
    if not pts:
        return float("inf")
    return min(abs(fricke_residual(tuple(p), SurfaceParams(complex(params.b), c))) for p in pts)


# -- numeric realisation ------------------------------------------------------

def _basis(i):
    return Octonion.basis(i, scalars.FLOAT)


def _linear_rows(v1, v2):
    rows = np.zeros((3, 7), dtype=complex)
    for j in range(1, 8):
        e = _basis(j)
        rows[0, j - 1] = oct_form(v2, e)
        rows[1, j - 1] = oct_form(v1, e)
        rows[2, j - 1] = oct_form(v1, oct_mul(v2, e))
    return rows


def _residuals(v1, v2, x, target, rows):
    lin = rows @ x - target
    return np.concatenate([lin, [np.sum(x * x) - 3]])


def realize_triple(p, tol=1e-8, seed=0):
    """A numeric triple ``(v1, v2, v3)`` of norm-3 vectors with invariants ``p``.

    ``v1 = sqrt(3) e1``, ``v2`` lies in the span of ``e1, e2``, and ``v3`` solves
    three linear conditions plus the norm equation (a quadratic along a
    null direction of the linear system), then Newton-polished.
    """
    p1, p2, p3, p4 = (complex(t) for t in p)
    r3 = np.sqrt(3 + 0j)
    v1 = vector7(r3, 0j, 0j, 0j, 0j, 0j, 0j)
    a = p3 / r3
    rest = 3 - a * a
    if abs(rest) < 1e-12:
        rest = 0j   # v2 = +-v1
    c = np.sqrt(rest + 0j)
    if c.imag < 0 or (c.imag == 0 and c.real < 0):
        c = -c
    v2 = vector7(a, c, 0j, 0j, 0j, 0j, 0j)
    rows = _linear_rows(v1, v2)
    target = np.array([p1, p2, p4])
    x0 = np.linalg.lstsq(rows, target, rcond=None)[0]
    _, sing, vh = np.linalg.svd(rows)
    rank = int(np.sum(sing > 1e-10 * max(1.0, sing.max())))
    null = vh[rank:].conj().T
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(20):
        w = null @ (rng.normal(size=null.shape[1]) + 1j * rng.normal(size=null.shape[1]))
        nw, cross, n0 = np.sum(w * w), np.sum(x0 * w), np.sum(x0 * x0)
        if abs(nw) < 1e-6:
            continue
        disc = np.sqrt(cross * cross - nw * (n0 - 3))
        for t in ((-cross + disc) / nw, (-cross - disc) / nw):
            x = _polish(x0 + t * w, v1, v2, target, rows)
            res = np.abs(_residuals(v1, v2, x, target, rows)).max()
            if best is None or res < best[0]:
                best = (res, x)
        if best[0] < tol:
            break
    if best is None:
        raise RealizationFailed(float("inf"))
    res, x = best
    v3 = vector7(*x)
    try:
        got = p_invariants(v1, v2, v3, tol=tol)
    except NormNotThree:
        raise RealizationFailed(res) from None
    err = max(abs(complex(g) - complex(w)) for g, w in zip(got, (p1, p2, p3, p4)))
    if err > tol:
        raise RealizationFailed(err)
    return v1, v2, v3


def _polish(x, v1, v2, target, rows, iters=8):
    for _ in range(iters):
        r = _residuals(v1, v2, x, target, rows)
        if np.abs(r).max() < 1e-15:
            break
        jac = np.vstack([rows, 2 * x[None, :]])
        x = x - np.linalg.lstsq(jac, r, rcond=None)[0]
    return x


# -- JSON ------------------------------------------------------------------

def triple_to_json(v1, v2, v3):
    return {name: [scalars.to_json(t) for t in v.c[1:]]
            for name, v in (("v1", v1), ("v2", v2), ("v3", v3))}


def triple_from_json(obj):
    out = []
    for name in ("v1", "v2", "v3"):
        vals = [scalars.from_json(t) for t in obj[name]]
        if len(vals) != 7:
            raise ValueError(f"{name} must have 7 coefficients")
        out.append(vector7(*vals))
    return tuple(out)


def invariants_to_json(p):
    pt, b = phi(p)
    c = c_from_surface(pt, b)
    ab = alpha_beta_from_p(p)
    enc = scalars.to_json
    return {
        "p": [enc(t) for t in p],
        "xyzb": [enc(t) for t in (*pt, b)],
        "c": enc(c),
        "alpha_beta": [enc(ab.alpha), enc(ab.beta)],
    }
