"""Complex octonions with the Fano-plane multiplication table.

Basis ``1, e1, ..., e7``.  The oriented lines ``124, 235, 346, 457, 561,
672, 713`` are quaternionic triples (``ei ej = ek`` cyclically), and the
table is invariant under the index maps ``n -> n+1`` and ``n -> 2n`` mod 7.
"""
from fractions import Fraction

import numpy as np

from . import scalars
from .errors import MixedRingError, NormNotThree

FANO_LINES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))

# Row i, column j: +k / -k means e_i e_j = +e_k / -e_k.  The diagonal is
# e_i e_i = -1.
FROZEN_TABLE = (
    (0, 4, 7, -2, 6, -5, -3),
    (-4, 0, 5, 1, -3, 7, -6),
    (-7, -5, 0, 6, 2, -4, 1),
    (2, -1, -6, 0, 7, 3, -5),
    (-6, 3, -2, -7, 0, 1, 4),
    (5, -7, 4, -3, -1, 0, 2),
    (3, 6, -1, 5, -4, -2, 0),
)


def shift_index(n, k=1):
    """The relabelling ``e_n -> e_{n+k}`` (indices mod 7, written 1..7)."""
    return (n - 1 + k) % 7 + 1


def double_index(n):
    return (2 * n - 1) % 7 + 1


def generate_lines(seed=(1, 2, 4)):
    """The seven oriented lines, as the orbit of ``seed`` under ``n -> n+1``."""
    return tuple(tuple(shift_index(i, k) for i in seed) for k in range(7))


def generate_table(lines=None):
    """Build the signed 8x8 table from quaternionic triples.

    Returns ``(index, sign)`` with ``e_i e_j = sign[i][j] * e_{index[i][j]}``
    for ``0 <= i, j <= 7`` (index 0 is the unit).
    """
    lines = generate_lines() if lines is None else lines
    index = [[0] * 8 for _ in range(8)]
    sign = [[0] * 8 for _ in range(8)]
    for i in range(8):
        index[0][i] = index[i][0] = i
        sign[0][i] = sign[i][0] = 1
    for i in range(1, 8):
        index[i][i], sign[i][i] = 0, -1
    for a, b, c in lines:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            index[x][y], sign[x][y] = z, 1
            index[y][x], sign[y][x] = z, -1
    for i in range(1, 8):
        for j in range(1, 8):
            if sign[i][j] == 0:
                raise ValueError(f"lines do not cover the pair ({i}, {j})")
    return tuple(map(tuple, index)), tuple(map(tuple, sign))


def _from_frozen():
    index = [[0] * 8 for _ in range(8)]
    sign = [[1] * 8 for _ in range(8)]
    for i in range(8):
        index[0][i] = index[i][0] = i
    for i in range(1, 8):
        for j in range(1, 8):
            entry = FROZEN_TABLE[i - 1][j - 1]
            if entry == 0:
                index[i][j], sign[i][j] = 0, -1
            else:
                index[i][j], sign[i][j] = abs(entry), 1 if entry > 0 else -1
    return tuple(map(tuple, index)), tuple(map(tuple, sign))


MUL_INDEX, MUL_SIGN = _from_frozen()

# Nonzero structure constants as (i, j, k, sign) with e_i e_j = sign e_k.
_TERMS = tuple((i, j, MUL_INDEX[i][j], MUL_SIGN[i][j]) for i in range(8) for j in range(8))

STRUCTURE = np.zeros((8, 8, 8), dtype=np.int64)
for _i, _j, _k, _s in _TERMS:
    STRUCTURE[_i, _j, _k] = _s


class Octonion:
    """An element ``c0 + c1 e1 + ... + c7 e7``; immutable, hashable when exact."""

    __slots__ = ("c", "ring")

    def __init__(self, *coeffs):
        if len(coeffs) == 1 and not isinstance(coeffs[0], (int, float, complex, Fraction)):
            coeffs = tuple(coeffs[0])
        if len(coeffs) != 8:
            raise ValueError(f"an octonion has 8 coefficients, got {len(coeffs)}")
        ring, c = scalars.promote(coeffs)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("Octonion is immutable")

    @classmethod
    def basis(cls, i, ring=scalars.EXACT):
        one = Fraction(1) if ring == scalars.EXACT else 1.0 + 0j
        zero = one * 0
        return cls(*(one if k == i else zero for k in range(8)))

    @classmethod
    def one(cls, ring=scalars.EXACT):
        return cls.basis(0, ring)

    @classmethod
    def from_array(cls, arr):
        return cls(*(complex(x) for x in arr))

    def _check(self, other):
        if self.ring != other.ring:
            raise MixedRingError("octonions over different scalar rings")

    def __add__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        self._check(other)
        return Octonion(*(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        self._check(other)
        return Octonion(*(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return Octonion(*(-a for a in self.c))

    def scale(self, s):
        s = scalars.coerce(s, self.ring)
        return Octonion(*(s * a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        if isinstance(other, (int, float, complex, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, s):
        if self.ring == scalars.EXACT:
            return self.scale(Fraction(1) / Fraction(s))
        return self.scale(1 / complex(s))

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        if self.ring == other.ring == scalars.EXACT:
            return self.c == other.c
        return self.isclose(other)

    def __hash__(self):
        if self.ring != scalars.EXACT:
            raise TypeError("floating octonions are unhashable; quantize first")
        return hash(self.c)

    def isclose(self, other, tol=None):
        return all(scalars.close(a, b, tol) for a, b in zip(self.c, other.c))

    def __getitem__(self, i):
        return self.c[i]

    def __iter__(self):
        return iter(self.c)

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            unit = "" if i == 0 else f"e{i}"
            terms.append(f"({scalars.fmt(a)}){unit}" if unit else scalars.fmt(a))
        return "Octonion(" + (" + ".join(terms) or "0") + ")"

    @property
    def real(self):
        return self.c[0]

    @property
    def imag(self):
        """The V-part, as an Octonion with zero real coefficient."""
        return Octonion(self.c[0] * 0, *self.c[1:])

    def is_imaginary(self, tol=None):
        return scalars.is_zero(self.c[0], tol)

    def conj(self):
        return oct_conj(self)

    def trace(self):
        return self.c[0]

    def norm(self):
        return oct_norm(self)

    def inverse(self):
        n = oct_norm(self)
        if scalars.is_zero(n):
            raise ZeroDivisionError("isotropic octonion has no inverse")
        return oct_conj(self) / n

    def array(self):
        return np.array([complex(a) for a in self.c], dtype=complex)


def vector7(*coeffs):
    """An element of V given by its seven imaginary coefficients."""
    if len(coeffs) == 1 and not isinstance(coeffs[0], (int, float, complex, Fraction)):
        coeffs = tuple(coeffs[0])
    if len(coeffs) != 7:
        raise ValueError(f"a vector in V has 7 coefficients, got {len(coeffs)}")
    ring, c = scalars.promote(coeffs)
    zero = Fraction(0) if ring == scalars.EXACT else 0j
    return Octonion(zero, *c)


def unit_sum(indices, ring=scalars.EXACT):
    """``sum(e_i for i in indices)`` as an element of V."""
    coeffs = [0] * 7
    for i in indices:
        coeffs[i - 1] += 1
    if ring == scalars.FLOAT:
        coeffs = [complex(x) for x in coeffs]
    return vector7(*coeffs)


def oct_mul(a, b):
    a._check(b)
    ca, cb = a.c, b.c
    out = [ca[0] * 0] * 8
    for i, j, k, s in _TERMS:
        x = ca[i]
        if x == 0:
            continue
        y = cb[j]
        if y == 0:
            continue
        if s > 0:
            out[k] += x * y
        else:
            out[k] -= x * y
    return Octonion(*out)


def oct_conj(q):
    c = q.c
    return Octonion(c[0], *(-x for x in c[1:]))


def oct_form(q1, q2):
    """``Tr(q1 conj(q2))``; the basis 1, e1..e7 is orthonormal for it."""
    q1._check(q2)
    return sum((x * y for x, y in zip(q1.c, q2.c)), q1.c[0] * 0)


def oct_norm(q):
    return oct_form(q, q)


def oct_trace(q):
    return q.c[0]


def assoc(a, b, c):
    """The associator ``(ab)c - a(bc)``."""
    return oct_mul(oct_mul(a, b), c) - oct_mul(a, oct_mul(b, c))


def half_unit(v, tol=None):
    """``a(v) = (1+v)/2`` for ``v`` in V of norm 3, so that ``a(v)^3 = -1``."""
    if not v.is_imaginary(tol):
        raise ValueError("half_unit expects an imaginary octonion")
    n = oct_norm(v)
    if not scalars.close(n, 3, tol):
        raise NormNotThree(n)
    one = Octonion.one(v.ring)
    return (one + v) / 2


def left_matrix(a):
    """8x8 matrix of ``q -> a q`` (columns indexed by the basis of q)."""
    m = [[a.c[0] * 0] * 8 for _ in range(8)]
    for i, j, k, s in _TERMS:
        if a.c[i] != 0:
            m[k][j] += s * a.c[i]
    return m


def right_matrix(a):
    """8x8 matrix of ``q -> q a``."""
    m = [[a.c[0] * 0] * 8 for _ in range(8)]
    for i, j, k, s in _TERMS:
        if a.c[j] != 0:
            m[k][i] += s * a.c[j]
    return m


def to_json(q):
    return [scalars.to_json(x) for x in q.c]


def from_json(obj):
    vals = [scalars.from_json(x) for x in obj]
    if len(vals) == 7:
        return vector7(*vals)
    return Octonion(*vals)
