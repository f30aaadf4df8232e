"""Fano-plane generators and the exact closure of the group they generate."""
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import _kernels
from .errors import BadIndex, ClosureTruncated
from .fricke import p_invariants
from .g2 import G2Element, conj_map
from .octonion import FANO_LINES, shift_index, unit_sum

# The lines through e7; lines through e_k are their images under n -> n+k.
_E7_LINES = ((1, 3, 7), (2, 6, 7), (4, 5, 7))


def _point(k):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= 7:
        raise BadIndex(f"Fano points are 1..7, got {k!r}")
    return int(k)


def fano_lines():
    """The seven lines as sorted index triples."""
    return [tuple(sorted(line)) for line in FANO_LINES]


def is_line(triple):
    return tuple(sorted(triple)) in set(fano_lines())


def lines_through(k):
    """The three lines through ``e_k``, ordered as the shifted lines through ``e7``.

    The order matters for p4 = <v1, v2 v3>: with this order every point gives
    the same invariants.
    """
    k = _point(k)
    return [tuple(sorted(shift_index(i, k) for i in line)) for line in _E7_LINES]


def line_to_generator(line):
    if not is_line(line):
        raise BadIndex(f"{line!r} is not a Fano line")
    v = unit_sum(line)
    return v, conj_map(v)


def point_generators(k):
    return [line_to_generator(line) for line in lines_through(k)]


def point_invariants(k):
    vs = [v for v, _ in point_generators(k)]
    return p_invariants(*vs)


# -- closure ------------------------------------------------------------------

def _scaled(gens):
    """Common denominator and integer numerators for exact 7x7 matrices."""
    mats = [g.m if isinstance(g, G2Element) else np.asarray(g, dtype=object) for g in gens]
    denom = lcm(*(Fraction(x).denominator for m in mats for x in m.ravel()))
    ints = np.array([[[int(Fraction(x) * denom) for x in row] for row in m] for m in mats],
                    dtype=np.int64)
    return ints, denom


@dataclass
class ClosureResult:
    order: int
    denom: int
    elements: np.ndarray = field(repr=False)
    element_orders: dict = field(default_factory=dict)
    backend: str = ""
    seconds: float = 0.0

    def element(self, i):
        return G2Element(np.array([[Fraction(int(x), self.denom) for x in row]
                                   for row in self.elements[i]], dtype=object))

    def automorphism_failures(self):
        """Number of elements that are not exact automorphisms."""
        res = _kernels.automorphism_residuals(self.elements, self.denom)
        return int(np.count_nonzero(res))

    def orthogonality_failures(self):
        gram = np.einsum("nij,nkj->nik", self.elements, self.elements)
        target = self.denom * self.denom * np.eye(self.elements.shape[1], dtype=np.int64)
        return int(np.count_nonzero((gram != target).any(axis=(1, 2))))

    def to_json(self):
        return {"order": self.order,
                "element_orders": {str(k): v for k, v in sorted(self.element_orders.items())}}


def group_closure(gens, max_order=10**5):
    """Exact breadth-first closure of the group generated by exact matrices."""
    if not gens:
        raise ValueError("need at least one generator")
    if max_order <= 0:
        raise ValueError("max_order must be positive")
    ints, denom = _scaled(gens)
    t0 = time.perf_counter()
    elements, truncated = _kernels.closure(ints, denom, max_order)
    if truncated:
        raise ClosureTruncated(len(elements))
    orders = _kernels.element_orders(elements, denom)
    hist = Counter(int(o) for o in orders)
    return ClosureResult(len(elements), denom, elements, dict(hist), _kernels.BACKEND,
                         time.perf_counter() - t0)


def point_closure(k, max_order=10**5):
    return group_closure([g for _, g in point_generators(k)], max_order)
