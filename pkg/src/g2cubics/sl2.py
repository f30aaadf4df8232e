"""Trace coordinates of SL2 triples, theta parameters and the D4- root system."""
import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import config, scalars
from .errors import NotARoot, NotUnimodular
from .fricke import AsymParams


class SL2Matrix:
    """A 2x2 matrix of determinant one, stored as a tuple of rows."""

    __slots__ = ("rows",)

    def __init__(self, rows, tol=None):
        (a, b), (c, d) = rows
        ring, vals = scalars.promote([a, b, c, d])
        a, b, c, d = vals
        det = a * d - b * c
        if not scalars.close(det, 1, tol):
            raise NotUnimodular(f"determinant {scalars.fmt(det)} != 1")
        self.rows = ((a, b), (c, d))

    @classmethod
    def identity(cls):
        return cls(((1, 0), (0, 1)))

    def __matmul__(self, other):
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return SL2Matrix(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))

    def inverse(self):
        (a, b), (c, d) = self.rows
        return SL2Matrix(((d, -b), (-c, a)))

    def trace(self):
        return self.rows[0][0] + self.rows[1][1]

    def __repr__(self):
        return f"SL2Matrix({self.rows!r})"


@dataclass(frozen=True)
class TraceSeven:
    x: object
    y: object
    z: object
    m1: object
    m2: object
    m3: object
    m4: object

    def __iter__(self):
        return iter((self.x, self.y, self.z, self.m1, self.m2, self.m3, self.m4))

    @property
    def point(self):
        return (self.x, self.y, self.z)

    @property
    def m(self):
        return (self.m1, self.m2, self.m3, self.m4)


def seven_functions(M1, M2, M3):
    M1, M2, M3 = (M if isinstance(M, SL2Matrix) else SL2Matrix(M) for M in (M1, M2, M3))
    return TraceSeven((M2 @ M3).trace(), (M1 @ M3).trace(), (M1 @ M2).trace(),
                      M1.trace(), M2.trace(), M3.trace(), (M1 @ M2 @ M3).trace())


def fricke_params(m1, m2, m3, m4):
    return AsymParams(-(m1 * m4 + m2 * m3), -(m2 * m4 + m1 * m3), -(m3 * m4 + m1 * m2),
                      m1 * m2 * m3 * m4 - 4 + m1 * m1 + m2 * m2 + m3 * m3 + m4 * m4)


def random_sl2(rng, steps=4, height=3):
    """An exact SL2 matrix: a product of elementary matrices with rational entries."""
    M = SL2Matrix.identity()
    for _ in range(steps):
        t = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height + 1)))
        E = ((1, t), (0, 1)) if rng.random() < 0.5 else ((1, 0), (t, 1))
        M = M @ SL2Matrix(E)
    return M


# -- theta parameters ---------------------------------------------------------

# 2 cos(pi k / d) for the rational theta where it is rational (Niven: d = 1, 2, 3),
# keyed by (d, k mod 2d)
_RATIONAL_COS = {(1, 0): 2, (1, 1): -2, (2, 1): 0, (2, 3): 0,
                 (3, 1): 1, (3, 5): 1, (3, 2): -1, (3, 4): -1}


def theta_to_m(theta):
    """``m_i = 2 cos(pi theta_i)``; exact for rational theta with denominator 1, 2 or 3."""
    out = []
    for t in theta:
        if scalars.ring_of(t) == scalars.EXACT:
            t = Fraction(t)
            d = t.denominator
            key = (d, t.numerator % (2 * d))
            if key in _RATIONAL_COS:
                out.append(Fraction(_RATIONAL_COS[key]))
                continue
        out.append(2 * cmath.cos(cmath.pi * complex(t)))
    if any(isinstance(v, complex) for v in out):
        out = [complex(v) for v in out]
    return tuple(out)


def params_of_theta(theta):
    return fricke_params(*theta_to_m(theta))


def triality(theta):
    t1, t2, t3, t4 = theta
    return (t3, t1, t2, t4)


# -- the D4- root system ------------------------------------------------------

def _eps(i):
    return tuple(Fraction(int(k == i)) for k in range(4))


@dataclass(frozen=True)
class RootSystem:
    roots: tuple
    simple: tuple

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, v):
        return tuple(Fraction(x) for x in v) in self.roots


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def d4_roots():
    roots = []
    for i in range(4):
        e = _eps(i)
        roots.append(e)
        roots.append(tuple(-x for x in e))
    half = Fraction(1, 2)
    for signs in itertools.product((1, -1), repeat=4):
        roots.append(tuple(s * half for s in signs))
    e1, e2, e3, e4 = (_eps(i) for i in range(4))
    a4 = tuple((x - y - z - w) / 2 for x, y, z, w in zip(e4, e1, e2, e3))
    return RootSystem(tuple(roots), (e1, e2, e3, a4))


def _is_root(rho, tol=None):
    n = dot(rho, rho)
    return scalars.close(n, 1, tol)


def reflect(theta, rho, tol=None):
    if not _is_root(rho, tol):
        raise NotARoot(f"{rho!r} does not have norm 1")
    s = 2 * dot(theta, rho)
    return tuple(t - s * r for t, r in zip(theta, rho))


def translate(theta, rho):
    return tuple(t + 2 * r for t, r in zip(theta, rho))


@dataclass
class WeylReport:
    theta: tuple
    reflection_residual: float
    translation_residual: float
    failures: list
    scale: float = 1.0

    @property
    def max_residual(self):
        return max(self.reflection_residual, self.translation_residual)

    @property
    def relative_residual(self):
        return self.max_residual / self.scale

    @property
    def ok(self):
        return not self.failures


def _param_distance(p, q):
    return max(abs(complex(a) - complex(b)) for a, b in zip(p, q))


def affine_weyl_check(theta, tol=None):
    """Compare the Fricke parameters of ``theta`` with those of its images."""
    tol = config.resolve(tol)
    base = params_of_theta(theta)
    refl = trans = 0.0
    failures = []
    for rho in d4_roots():
        for kind, image in (("reflect", reflect(theta, rho)), ("translate", translate(theta, rho))):
            r = _param_distance(base, params_of_theta(image))
            if kind == "reflect":
                refl = max(refl, r)
            else:
                trans = max(trans, r)
            if r > tol * max(1.0, max(abs(complex(x)) for x in base)):  # relative
                failures.append((kind, rho, r))
    scale = max(1.0, max(abs(complex(x)) for x in base))
    return WeylReport(tuple(theta), refl, trans, failures, scale)


def random_theta(rng, real=1.0, imag=0.5):
    """Complex theta in a box; large imaginary parts make the cosines
    exponentially large and the comparison meaningless in double precision."""
    return tuple(complex(rng.uniform(-real, real), rng.uniform(-imag, imag)) for _ in range(4))
