"""Scalar rings: exact rationals (``Fraction``) and double complex numbers.

Every value in the package lives in exactly one of the two regimes.  Python
ints are promoted to ``Fraction``; Python floats are promoted to ``complex``.
"""
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import config
from .errors import MixedRingError

EXACT = "exact"
FLOAT = "float"


def ring_of(x):
    if isinstance(x, (Rational, np.integer)):
        return EXACT
    if isinstance(x, (float, complex, np.floating, np.complexfloating)):
        return FLOAT
    raise TypeError(f"not a scalar: {x!r}")


def coerce(x, ring):
    if ring == EXACT:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Rational):
            return Fraction(x)
        if isinstance(x, np.integer):
            return Fraction(int(x))
        raise MixedRingError(f"floating value {x!r} in exact context")
    return complex(x)


def common_ring(values):
    """Ring shared by ``values``; raises MixedRingError when they disagree."""
    rings = {ring_of(v) for v in values}
    if len(rings) > 1:
        raise MixedRingError("exact and floating scalars mixed")
    return rings.pop() if rings else EXACT


def normalize(values):
    """Coerce a sequence to its common ring, returning (ring, tuple)."""
    values = list(values)
    ring = common_ring(values)
    return ring, tuple(coerce(v, ring) for v in values)


def promote(values):
    """Like :func:`normalize` but floats win over rationals instead of raising."""
    values = list(values)
    rings = {ring_of(v) for v in values}
    ring = FLOAT if FLOAT in rings else EXACT
    return ring, tuple(coerce(v, ring) for v in values)


def is_zero(x, tol=None):
    if isinstance(x, Fraction) or ring_of(x) == EXACT:
        return x == 0
    return abs(x) < config.resolve(tol)


def close(x, y, tol=None):
    if ring_of(x) == EXACT and ring_of(y) == EXACT:
        return x == y
    return abs(complex(x) - complex(y)) < config.resolve(tol)


def simplify(x, tol=1e-12):
    """Drop a negligible imaginary part, for display."""
    if isinstance(x, complex) and abs(x.imag) <= tol * max(1.0, abs(x.real)):
        return x.real
    return x


def parse_scalar(text):
    """Parse ``"p/q"`` or an integer as exact; decimals and ``j`` literals as float."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, (float, complex)):
        return complex(text)
    s = str(text).strip()
    if not s:
        raise ValueError("empty scalar")
    try:
        return Fraction(s) if not any(ch in s for ch in ".eEjJ") else complex(s.replace("i", "j"))
    except (ValueError, ZeroDivisionError):
        try:
            return complex(s.replace("i", "j"))
        except ValueError:
            raise ValueError(f"cannot parse scalar {text!r}") from None


def parse_list(text, n=None):
    """Parse a comma-separated list of scalars, e.g. ``"1,1,1,-2"``."""
    parts = [p for p in str(text).split(",") if p.strip()]
    if n is not None and len(parts) != n:
        raise ValueError(f"expected {n} comma-separated values, got {len(parts)}")
    return [parse_scalar(p) for p in parts]


def to_json(x):
    if isinstance(x, Fraction) or ring_of(x) == EXACT:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    x = complex(x)
    return [x.real, x.imag]


def from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, float):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    raise ValueError(f"bad scalar encoding {obj!r}")


def fmt(x, digits=12):
    """Short human-readable rendering used by the CLI tables."""
    if isinstance(x, Fraction):
        return str(x)
    x = simplify(complex(x))
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    return f"{x.real:.{digits}g}{x.imag:+.{digits}g}j"


def as_complex_array(values):
    return np.array([complex(v) for v in values], dtype=complex)
