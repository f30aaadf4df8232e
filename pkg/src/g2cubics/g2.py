"""Elements of G2 as 7x7 matrices on V, the class C of order-3 elements,
and the torus / Weyl-group invariants alpha and beta."""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from . import _kernels, config, scalars
from .errors import MixedRingError, NormNotThree, ZeroTorusCoordinate
from .octonion import (STRUCTURE, MUL_INDEX, MUL_SIGN, Octonion, half_unit, left_matrix,
                       oct_norm, right_matrix, vector7)


def _as_matrix(m):
    """Coerce to a 7x7 ndarray: complex128, or object dtype holding Fractions."""
    if isinstance(m, np.ndarray) and m.dtype == complex:
        arr = m
    else:
        flat = list(np.asarray(m, dtype=object).ravel())
        ring, vals = scalars.promote(flat)
        arr = np.array(vals, dtype=object if ring == scalars.EXACT else complex)
    arr = arr.reshape(7, 7)
    arr.setflags(write=False)
    return arr


class G2Element:
    """An automorphism of the octonions, stored as its action on V (basis e1..e7)."""

    __slots__ = ("m",)

    def __init__(self, m):
        object.__setattr__(self, "m", _as_matrix(m))

    def __setattr__(self, name, value):
        raise AttributeError("G2Element is immutable")

    @property
    def ring(self):
        return scalars.EXACT if self.m.dtype == object else scalars.FLOAT

    @classmethod
    def identity(cls, ring=scalars.EXACT):
        if ring == scalars.EXACT:
            return cls(np.array([[Fraction(int(i == j)) for j in range(7)] for i in range(7)], dtype=object))
        return cls(np.eye(7, dtype=complex))

    def _check(self, other):
        if self.ring != other.ring:
            raise MixedRingError("G2 elements over different scalar rings")

    def __matmul__(self, other):
        if isinstance(other, G2Element):
            self._check(other)
            return G2Element(self.m @ other.m)
        if isinstance(other, Octonion):
            return self.apply(other)
        return NotImplemented

    def __mul__(self, other):
        return self.__matmul__(other)

    def __pow__(self, k):
        result = G2Element.identity(self.ring)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result @ base
        return result

    def inverse(self):
        # elements of G2 are orthogonal for the (orthonormal) form on V
        return G2Element(self.m.T)

    def apply(self, q):
        """Image of an octonion: the real part is fixed, V is mapped by the matrix."""
        if q.ring != self.ring:
            raise MixedRingError("matrix and octonion over different rings")
        image = self.m @ np.array(q.c[1:], dtype=self.m.dtype)
        return Octonion(q.c[0], *image)

    def trace(self):
        return _sum(np.diag(self.m))

    def isclose(self, other, tol=None):
        if self.ring == other.ring == scalars.EXACT:
            return bool(np.all(self.m == other.m))
        diff = np.abs(self.m.astype(complex) - other.m.astype(complex))
        return bool(diff.max() < config.resolve(tol))

    def __eq__(self, other):
        if not isinstance(other, G2Element):
            return NotImplemented
        return self.isclose(other)

    def __hash__(self):
        if self.ring != scalars.EXACT:
            raise TypeError("floating matrices are unhashable")
        return hash(tuple(self.m.ravel()))

    def __repr__(self):
        return f"G2Element({self.ring}, trace={scalars.fmt(self.trace())})"

    def to_json(self):
        return {"matrix": [scalars.to_json(x) for x in self.m.ravel()]}

    @classmethod
    def from_json(cls, obj):
        vals = [scalars.from_json(x) for x in obj["matrix"]]
        if len(vals) != 49:
            raise ValueError("a G2 matrix has 49 entries")
        return cls(np.array(vals, dtype=object).reshape(7, 7))


def _sum(values):
    values = list(values)
    total = values[0]
    for v in values[1:]:
        total = total + v
    return total


def conj_map(v, tol=None):
    """Matrix on V of ``q -> a q a^{-1}`` with ``a = (1+v)/2``, for ``n(v) = 3``.

    The result is an order-3 automorphism fixing ``v``.
    """
    a = half_unit(v, tol)
    a_inv = Octonion(a.c[0], *(-x for x in a.c[1:]))   # conj(a), since n(a) = 1
    dtype = object if v.ring == scalars.EXACT else complex
    left = np.array(left_matrix(a), dtype=dtype)
    right = np.array(right_matrix(a_inv), dtype=dtype)
    return G2Element((right @ left)[1:, 1:])


def is_automorphism(g, tol=None):
    """Whether ``g(e_i) g(e_j) = g(e_i e_j)`` for all ``1 <= i, j <= 7``."""
    return automorphism_residual(g) == 0 if g.ring == scalars.EXACT else \
        automorphism_residual(g) < config.resolve(tol)


def automorphism_residual(g):
    """Largest coefficient of ``g(e_i) g(e_j) - g(e_i e_j)``; exact for rational g."""
    if g.ring == scalars.EXACT:
        denom = lcm(*(Fraction(x).denominator for x in g.m.ravel()))
        scaled = np.array([[int(x * denom) for x in row] for row in g.m], dtype=object)
        if denom < 2**20 and np.abs(scaled).max() < 2**20:
            worst = _kernels.automorphism_residuals(scaled.astype(np.int64)[None], denom)[0]
        else:
            worst = _kernels._pure.automorphism_residuals(scaled[None], denom)[0]
        return Fraction(int(worst), denom * denom)
    ext = np.zeros((8, 8), dtype=complex)
    ext[0, 0] = 1
    ext[1:, 1:] = g.m
    lhs = np.einsum("ai,bj,abk->ijk", ext, ext, STRUCTURE)
    idx = np.array(MUL_INDEX)
    sgn = np.array(MUL_SIGN)
    rhs = np.transpose(sgn[None, :, :] * ext[:, idx], (1, 2, 0))
    return float(np.abs(lhs - rhs)[1:, 1:, :].max())


def fixed_vector(g, tol=None):
    """Recover ``v`` (norm 3) with ``conj_map(v) = g`` for ``g`` in the class C.

    Exact matrices give an exact ``v`` when ``3 / n(u)`` is a rational square
    for the rational fixed vector ``u``; otherwise the float path is used.
    """
    v = None
    if g.ring == scalars.EXACT:
        u = _exact_kernel_vector(g.m)
        root = _rational_sqrt(Fraction(3) / oct_norm(u))
        if root is not None:
            v = u.scale(root)
        else:
            g = G2Element(g.m.astype(complex))
    if v is None:
        _, _, vh = np.linalg.svd(g.m - np.eye(7))
        u = vector7(*vh[-1].conj())
        v = u.scale(np.sqrt(3 / complex(oct_norm(u))))
    for cand in (v, -v):
        if conj_map(cand, tol).isclose(g, tol):
            return cand
    raise NormNotThree(oct_norm(v), "matrix is not of the form conj_map(v)")


def _rational_sqrt(q):
    from math import isqrt
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _exact_kernel_vector(m):
    """A nonzero rational vector in the kernel of ``m - I`` (Gaussian elimination)."""
    a = [[Fraction(m[i][j]) - (1 if i == j else 0) for j in range(7)] for i in range(7)]
    pivots = []
    row = 0
    for col in range(7):
        piv = next((r for r in range(row, 7) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(7):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(7) if c not in pivots]
    if not free:
        raise ValueError("matrix has no fixed vector")
    f = free[0]
    sol = [Fraction(0)] * 7
    sol[f] = Fraction(1)
    for r, c in enumerate(pivots):
        sol[c] = -a[r][f]
    return vector7(*sol)


@dataclass(frozen=True)
class AlphaBeta:
    alpha: object
    beta: object

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def isclose(self, other, tol=None):
        return scalars.close(self.alpha, other.alpha, tol) and scalars.close(self.beta, other.beta, tol)


def alpha_beta_of(g):
    """``alpha = Tr(g) - 1`` and ``2 beta = alpha^2 - 2 alpha - Tr(g^2) - 5``."""
    t1 = g.trace()
    t2 = _sum(np.diag(g.m @ g.m))
    alpha = t1 - 1
    beta = (alpha * alpha - 2 * alpha - t2 - 5) / 2
    return AlphaBeta(alpha, beta)


@dataclass(frozen=True)
class TorusPoint:
    """``diag(1, a1, a2, 1/(a1 a2), 1/a1, 1/a2, a1 a2)`` in a weight basis of V."""
    a1: object
    a2: object

    def __post_init__(self):
        if self.a1 == 0 or self.a2 == 0:
            raise ZeroTorusCoordinate("torus coordinates must be invertible")

    @property
    def a3(self):
        return 1 / (self.a1 * self.a2)

    def eigenvalues(self):
        a1, a2 = self.a1, self.a2
        return (a1 ** 0, a1, a2, 1 / (a1 * a2), 1 / a1, 1 / a2, a1 * a2)

    def isclose(self, other, tol=None):
        return scalars.close(self.a1, other.a1, tol) and scalars.close(self.a2, other.a2, tol)


def _torus(t):
    if isinstance(t, TorusPoint):
        return t
    a1, a2 = t
    if isinstance(a1, int):
        a1 = Fraction(a1)
    if isinstance(a2, int):
        a2 = Fraction(a2)
    return TorusPoint(a1, a2)


def torus_alpha_beta(t):
    t = _torus(t)
    a1, a2 = t.a1, t.a2
    alpha = a1 + 1 / a1 + a2 + 1 / a2 + a1 * a2 + 1 / (a1 * a2)
    beta = (a1 / a2 + a2 / a1 + a1 * a1 * a2 + a1 * a2 * a2
            + 1 / (a1 * a1 * a2) + 1 / (a1 * a2 * a2))
    return AlphaBeta(alpha, beta)


def weyl_act(gen, t):
    """Apply ``r1(a1, a2) = (1/a1, a1 a2)`` or ``r2(a1, a2) = (a2, a1)``."""
    t = _torus(t)
    if gen in ("r1", 1):
        return TorusPoint(1 / t.a1, t.a1 * t.a2)
    if gen in ("r2", 2):
        return TorusPoint(t.a2, t.a1)
    raise ValueError(f"unknown Weyl generator {gen!r}")


def weyl_orbit(t, tol=None):
    """All images of ``t`` under the dihedral Weyl group, with the words reaching them."""
    t = _torus(t)
    exact = scalars.ring_of(t.a1) == scalars.EXACT and scalars.ring_of(t.a2) == scalars.EXACT
    found = [((), t)]
    frontier = [((), t)]
    while frontier:
        nxt = []
        for word, p in frontier:
            for gen in ("r1", "r2"):
                q = weyl_act(gen, p)
                seen = any((q == s) if exact else q.isclose(s, tol) for _, s in found)
                if not seen:
                    found.append((word + (gen,), q))
                    nxt.append((word + (gen,), q))
        frontier = nxt
    return found


def weyl_group_words():
    """Twelve reduced words in r1, r2 giving the distinct Weyl group elements."""
    words = [()]
    for length in range(1, 7):
        for start in ("r1", "r2"):
            w = tuple(("r1", "r2")[(i + (start == "r2")) % 2] for i in range(length))
            if length == 6 and start == "r2":
                continue   # (r1 r2)^3 = (r2 r1)^3 is the longest element
            words.append(w)
    return words


def apply_word(word, t):
    t = _torus(t)
    for gen in reversed(word):
        t = weyl_act(gen, t)
    return t


def weyl_denominator(t):
    """Long- and short-root factors of the squared Weyl denominator."""
    t = _torus(t)
    a1, a2 = t.a1, t.a2
    a3 = 1 / (a1 * a2)
    long_ = ((a1 - a2) * (a2 - a3) * (a3 - a1)) ** 2
    short = (a1 * a2 + a2 * a3 + a3 * a1 - a1 - a2 - a3) ** 2
    return long_, short


def expected_dim(class_dims, dim_g, dim_center):
    """Expected dimension ``sum(dim C_i) - 2 dim(G/Z)`` of a character variety."""
    if any(d < 0 for d in class_dims) or dim_g < 0 or dim_center < 0:
        raise ValueError("dimensions must be nonnegative")
    return sum(class_dims) - 2 * (dim_g - dim_center)


def random_norm3(rng, box=1.0, min_norm=0.1):
    """Random complex ``v`` in V with ``n(v) = 3``.

    Draws from ``[-box, box]^2`` per coefficient and rejects nearly
    isotropic draws before rescaling.
    """
    while True:
        coeffs = rng.uniform(-box, box, 7) + 1j * rng.uniform(-box, box, 7)
        n = complex(np.sum(coeffs * coeffs))
        if abs(n) >= min_norm:
            return vector7(*(coeffs * np.sqrt(3 / n)))


def random_g2(rng, factors=3):
    """A random element of G2 as a product of sampled conj_maps."""
    g = G2Element.identity(scalars.FLOAT)
    for _ in range(factors):
        g = g @ conj_map(random_norm3(rng))
    return g


OMEGA = complex(-0.5, np.sqrt(3) / 2)
CLASS_SPECTRUM = (1, OMEGA, OMEGA, OMEGA, OMEGA.conjugate(), OMEGA.conjugate(), OMEGA.conjugate())


def spectrum_deviation(g):
    """Distance between the eigenvalues of ``g`` and ``{1, w x3, conj(w) x3}`` as multisets.

    Eigenvalues are paired greedily with the nearest unused target.
    """
    eig = list(np.linalg.eigvals(np.asarray(g.m, dtype=complex)))
    worst = 0.0
    for target in CLASS_SPECTRUM:
        k = min(range(len(eig)), key=lambda i: abs(eig[i] - target))
        worst = max(worst, abs(eig.pop(k) - target))
    return worst


def class_multiplicities(g, tol=None):
    """Eigenvalue multiplicities ``(n_1, n_w, n_wbar)`` forced by ``g^3 = 1``.

    For an order-3 element they solve ``n_1 + n_w + n_wbar = 7`` and
    ``n_1 + n_w w + n_wbar conj(w) = Tr g``; returns None if ``g^3 != 1``.
    """
    if not (g ** 3).isclose(G2Element.identity(g.ring), tol):
        return None
    t = complex(g.trace())
    n_w = t.imag / OMEGA.imag   # n_w - n_wbar
    # real part: n_1 - (n_w + n_wbar)/2 = Re t
    n1 = (7 + 2 * t.real) / 3
    rest = 7 - n1
    return (round(n1), round((rest + n_w) / 2), round((rest - n_w) / 2))
