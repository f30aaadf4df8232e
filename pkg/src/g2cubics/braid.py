"""Hurwitz action of the three-string braid group at every coordinate level.

Generators are encoded as integers: ``1``/``2`` for beta1/beta2 and
``-1``/``-2`` for their inverses.  Levels:

``matrix``  triples ``(g1, g2, g3)`` of G2 elements,
``oct``     triples ``(v1, v2, v3)`` of norm-3 vectors in V,
``p``       the four invariants ``(p1, p2, p3, p4)``,
``xyz``     points on a symmetric Fricke cubic with parameter ``b``.
"""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config, scalars
from .errors import DictionaryNotFound, OrbitTruncated
from .fricke import (PInvariants, SurfacePoint, c_from_surface, p_invariants, phi, phi_inv)
from .g2 import alpha_beta_of, fixed_vector
from .octonion import Octonion, oct_conj, oct_mul

GENERATORS = (1, -1, 2, -2)
_TOKENS = {1: "b1", -1: "b1^-1", 2: "b2", -2: "b2^-1"}


def _gen(token):
    if token in GENERATORS:
        return token
    lookup = {v: k for k, v in _TOKENS.items()}
    lookup.update({"b1-": -1, "b2-": -2, "B1": -1, "B2": -2})
    try:
        return lookup[str(token).strip()]
    except KeyError:
        raise ValueError(f"unknown braid generator {token!r}") from None


class BraidWord(tuple):
    """A word in the braid generators, read left to right (first letter acts first)."""

    def __new__(cls, letters=()):
        return super().__new__(cls, (_gen(t) for t in letters))

    @classmethod
    def parse(cls, text):
        return cls(t for t in str(text).replace(",", " ").split())

    def reduced(self):
        out = []
        for g in self:
            if out and out[-1] == -g:
                out.pop()
            else:
                out.append(g)
        return BraidWord(out)

    def inverse(self):
        return BraidWord(-g for g in reversed(self))

    def __str__(self):
        return " ".join(_TOKENS[g] for g in self) or "id"


# -- actions ------------------------------------------------------------------

def braid_triple(gen, triple):
    g1, g2, g3 = triple
    gen = _gen(gen)
    if gen == 1:
        return (g2, g2.inverse() @ g1 @ g2, g3)
    if gen == -1:
        return (g1 @ g2 @ g1.inverse(), g1, g3)
    if gen == 2:
        return (g1, g3, g3.inverse() @ g2 @ g3)
    return (g1, g2 @ g3 @ g2.inverse(), g2)


def _w(v):
    return (Octonion.one(v.ring) + v) / 2


def _twist(w, v):
    """``conj(w) v w``; well defined since w and v generate an associative subalgebra."""
    out = oct_mul(oct_mul(oct_conj(w), v), w)
    return Octonion(out.c[0] * 0, *out.c[1:])


def braid_oct(gen, triple, tol=None):
    v1, v2, v3 = triple
    gen = _gen(gen)
    if gen == 1:
        return (v2, _twist(_w(v2), v1), v3)
    if gen == -1:
        return (_twist(oct_conj(_w(v1)), v2), v1, v3)
    if gen == 2:
        return (v1, v3, _twist(_w(v3), v2))
    return (v1, _twist(oct_conj(_w(v2)), v3), v2)


def _half(x):
    return x / 2 if not isinstance(x, int) else Fraction(x, 2)


def braid_p(gen, p):
    p1, p2, p3, p4 = p
    gen = _gen(gen)
    if gen == 1:
        return PInvariants(_half(p4 + p1 * p3 - p2), p1, p3, _half(p4 + 3 * p2 - p1 * p3))
    if gen == 2:
        return PInvariants(p1, _half(p4 + p1 * p2 - p3), p2, _half(p4 + 3 * p3 - p1 * p2))
    if gen == -1:
        return PInvariants(p2, _half(p4 - p1 + p2 * p3), p3, _half(3 * p1 + p4 - p2 * p3))
    return PInvariants(p1, p3, _half(p4 - p2 + p1 * p3), _half(3 * p2 + p4 - p1 * p3))


def braid_xyz(gen, pt, b):
    x, y, z = pt
    gen = _gen(gen)
    if gen == 1:
        return SurfacePoint(x, -b - z - x * y, y)
    if gen == -1:
        return SurfacePoint(x, z, -b - y - x * z)
    if gen == 2:
        return SurfacePoint(z, y, -b - x - y * z)
    return SurfacePoint(-b - z - x * y, y, x)


def swap_yz(pt):
    """The coordinate swap ``(x, y, z) -> (x, z, y)``."""
    x, y, z = pt
    return SurfacePoint(x, z, y)


def act(level, gen, state, b=None):
    if level == "matrix":
        return braid_triple(gen, state)
    if level == "oct":
        return braid_oct(gen, state)
    if level == "p":
        return braid_p(gen, state)
    if level == "xyz":
        return braid_xyz(gen, state, b)
    raise ValueError(f"unknown level {level!r}")


def act_word(level, word, state, b=None):
    for g in BraidWord(word):
        state = act(level, g, state, b)
    return state


# -- orbits -------------------------------------------------------------------

def _quantize(x, grid=1e-9):
    if scalars.ring_of(x) == scalars.EXACT:
        return Fraction(x)
    x = complex(x)
    return (round(x.real / grid), round(x.imag / grid))


def canonical(level, state, grid=1e-9):
    """Hashable key: exact tuples, or floats quantized to ``grid``."""
    if level == "matrix":
        state = p_invariants(*(fixed_vector(g) for g in state))
    elif level == "oct":
        state = p_invariants(*state)
    return tuple(_quantize(x, grid) for x in state)


def _point_values(level, state):
    if level == "matrix":
        return tuple(p_invariants(*(fixed_vector(g) for g in state)))
    if level == "oct":
        return tuple(p_invariants(*state))
    return tuple(state)


def _sort_key(values):
    out = []
    for v in values:
        if isinstance(v, Fraction):
            out.append((float(v), 0.0))
        else:
            v = complex(v)
            out.append((round(v.real, 9), round(v.imag, 9)))
    return tuple(out)


@dataclass
class OrbitResult:
    level: str
    start: tuple
    points: list
    b: object = None
    states: list = field(default_factory=list, repr=False)
    edges: list = field(default_factory=list, repr=False)

    @property
    def size(self):
        return len(self.points)

    def point_set(self):
        return {tuple(_quantize(x) for x in p) for p in self.points}

    def to_json(self):
        enc = scalars.to_json
        return {
            "level": self.level,
            "start": [enc(x) for x in self.start],
            "b": None if self.b is None else enc(self.b),
            "size": self.size,
            "points": [[enc(x) for x in p] for p in self.points],
        }


def braid_orbit(start, level, max_size=10_000, b=None, log_edges=False, tol=None):
    """Breadth-first closure of ``start`` under both generators and their inverses.

    ``matrix`` and ``oct`` states are identified by their p-invariants, which
    are a complete invariant of the diagonal conjugation action.
    """
    if max_size <= 0:
        raise ValueError("max_size must be positive")
    if level == "xyz":
        if b is None:
            raise ValueError("the xyz level needs the surface parameter b")
        start = SurfacePoint.of(start) if not isinstance(start, SurfacePoint) else start
        b = scalars.promote([b, *start])[1][0]
    elif level == "p" and not isinstance(start, PInvariants):
        start = PInvariants.of(start)
    key0 = canonical(level, start)
    index = {key0: 0}
    states = [start]
    edges = []
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            src = index[canonical(level, state)]
            for gen in GENERATORS:
                new = act(level, gen, state, b)
                key = canonical(level, new)
                if key not in index:
                    if len(states) >= max_size:
                        partial = _finish(level, start, states, b, edges)
                        raise OrbitTruncated(len(states), partial)
                    index[key] = len(states)
                    states.append(new)
                    nxt.append(new)
                if log_edges:
                    edges.append((src, gen, index[key]))
        frontier = nxt
    result = _finish(level, start, states, b, edges)
    if any(scalars.ring_of(x) == scalars.FLOAT for p in result.points for x in p):
        _check_distinct(result, tol)
    return result


def _finish(level, start, states, b, edges):
    pts = [_point_values(level, s) for s in states]
    order = sorted(range(len(pts)), key=lambda i: _sort_key(pts[i]))
    start_vals = _point_values(level, start)
    return OrbitResult(level, tuple(start_vals), [pts[i] for i in order], b,
                       [states[i] for i in order], edges)


def _check_distinct(result, tol=None):
    """Merge float states that fell into different quantization cells."""
    tol = config.resolve(tol)
    keep_pts, keep_states = [], []
    for p, s in zip(result.points, result.states):
        if any(max(abs(complex(a) - complex(c)) for a, c in zip(p, q)) < tol for q in keep_pts):
            continue
        keep_pts.append(p)
        keep_states.append(s)
    result.points, result.states = keep_pts, keep_states


def conserved_quantities(level, state, b=None):
    """Quantities every braid move preserves, for the orbit report."""
    if level == "p":
        p = PInvariants(*state)
        return {"p4+s1": p.p4 + p.s1}
    if level == "xyz":
        return {"b": b, "c": c_from_surface(state, b)}
    if level == "oct":
        from .g2 import conj_map
        g1, g2, g3 = (conj_map(v) for v in state)
        ab = alpha_beta_of(g1 @ g2 @ g3)
        return {"alpha": ab.alpha, "beta": ab.beta}
    g1, g2, g3 = state
    ab = alpha_beta_of(g1 @ g2 @ g3)
    return {"alpha": ab.alpha, "beta": ab.beta}


# -- the p-level / xyz-level dictionary --------------------------------------

# xyz-level alphabet for the word search: plain generators and their
# conjugates by the swap y <-> z.
_ALPHABET = (1, -1, 2, -2, "s1", "s-1", "s2", "s-2")


def _xyz_letter(letter, pt, b):
    if isinstance(letter, int):
        return braid_xyz(letter, pt, b)
    gen = int(letter[1:])
    return swap_yz(braid_xyz(gen, swap_yz(pt), b))


def xyz_word(word, pt, b):
    """Apply letters left to right."""
    for letter in word:
        pt = _xyz_letter(letter, pt, b)
    return pt


def conjugated_p_move(gen, pt, b):
    """``phi o beta^p o phi^-1`` evaluated at ``(pt, b)``."""
    new_pt, new_b = phi(braid_p(gen, phi_inv(pt, b)))
    if new_b != b:
        raise AssertionError("p-level move changed b")
    return new_pt


def random_rational_states(rng, count, height=12):
    """Random exact states ``(SurfacePoint, b)``."""
    def q():
        return Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height + 1)))
    return [(SurfacePoint(q(), q(), q()), q()) for _ in range(count)]


CANDIDATES = {
    # p-level generator: xyz-level word (letters applied left to right)
    2: (1,),
    1: ("s-2",),
}


def _holds(target_gen, word, samples):
    return all(conjugated_p_move(target_gen, pt, b) == xyz_word(word, pt, b) for pt, b in samples)


def search_word(target, samples, max_length=6, alphabet=_ALPHABET):
    """Shortest xyz-level word agreeing with ``target(pt, b)`` on every sample."""
    for length in range(max_length + 1):
        for word in itertools.product(alphabet, repeat=length):
            if _reduced(word) and all(target(pt, b) == xyz_word(word, pt, b) for pt, b in samples):
                return word
    return None


def _reduced(word):
    inverse = {1: -1, -1: 1, 2: -2, -2: 2, "s1": "s-1", "s-1": "s1", "s2": "s-2", "s-2": "s2"}
    return all(inverse[a] != b for a, b in zip(word, word[1:]))


@dataclass
class DictionaryReport:
    dictionary: dict
    candidates: dict
    searched: bool
    samples: int
    klein_orbits_match: bool
    missing: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.missing and self.klein_orbits_match


def word_to_str(word):
    names = {1: "b1", -1: "b1^-1", 2: "b2", -2: "b2^-1"}
    out = []
    for letter in word:
        if isinstance(letter, int):
            out.append(names[letter])
        else:
            out.append("s." + names[int(letter[1:])] + ".s")
    return " ".join(out) or "id"


def equivariance_dictionary(samples=100, seed=0, max_length=6, candidates=None,
                            raise_missing=False):
    """Verify how the p-level generators read in xyz coordinates under ``phi``.

    Candidate identities are checked exactly on random rational states; any
    that fail trigger a bounded word search.  Independently of the
    dictionary, the p-level orbit of the Klein point is compared with the
    xyz-level orbit of its image.
    """
    rng = np.random.default_rng(seed)
    states = random_rational_states(rng, samples)
    candidates = CANDIDATES if candidates is None else candidates
    found, checked, missing = {}, {}, []
    searched = False
    for gen in (1, 2):
        word = candidates.get(gen)
        ok = word is not None and _holds(gen, word, states)
        checked[gen] = ok
        if ok:
            found[gen] = tuple(word)
            continue
        searched = True
        hit = search_word(lambda pt, b, g=gen: conjugated_p_move(g, pt, b), states[:8], max_length)
        if hit is not None and _holds(gen, hit, states):
            found[gen] = hit
        else:
            missing.append(gen)
    if missing and raise_missing:
        raise DictionaryNotFound(f"no xyz word of length <= {max_length} for {missing}")
    return DictionaryReport(found, checked, searched, samples, klein_orbits_match(), missing)


KLEIN_P = (1, 1, 1, -2)


def klein_orbits_match():
    p_orbit = braid_orbit(KLEIN_P, "p")
    pt, b = phi(PInvariants.of(KLEIN_P))
    xyz_orbit = braid_orbit(pt, "xyz", b=b)
    image = {tuple(phi(PInvariants(*q))[0]) for q in p_orbit.points}
    return image == {tuple(q) for q in xyz_orbit.points} and len(image) == p_orbit.size
