"""Reference kernels in plain Python/numpy.

Matrices are integer arrays ``M`` standing for ``M / denom``; every product
is divided back by ``denom`` exactly (a nonzero remainder is an error).
"""
import numpy as np

from ..octonion import MUL_INDEX, MUL_SIGN, STRUCTURE

NAME = "pure"


def _mul(a, b, denom, n):
    out = []
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for t in range(n):
                x = row[t]
                if x:
                    acc += x * b[t * n + j]
            q, r = divmod(acc, denom)
            if r:
                raise ValueError("product left the lattice of the given denominator")
            out.append(q)
    return tuple(out)


def closure(gens, denom, max_order):
    """BFS closure of the group generated by ``gens``.

    Returns ``(elements, truncated)``; ``elements`` is an int64 array of shape
    ``(N, n, n)`` starting with the identity.
    """
    gens = np.asarray(gens, dtype=np.int64)
    n = gens.shape[1]
    flat = [tuple(int(x) for x in g.ravel()) for g in gens]
    ident = tuple(denom if i == j else 0 for i in range(n) for j in range(n))
    seen = {ident}
    order = [ident]
    frontier = [ident]
    truncated = False
    while frontier and not truncated:
        nxt = []
        for x in frontier:
            for g in flat:
                y = _mul(x, g, denom, n)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(order) > max_order:
                        truncated = True
                        break
            if truncated:
                break
        frontier = nxt
    return np.array(order, dtype=np.int64).reshape(-1, n, n), truncated


def automorphism_residuals(mats, denom):
    """Max abs of ``(M e_i)(M e_j) - denom * M(e_i e_j)`` per matrix, 1 <= i,j <= 7.

    ``M`` is extended to the octonions by ``1 -> denom * 1``.
    """
    mats = np.asarray(mats)
    dtype = np.int64 if mats.dtype.kind in "iu" else object
    num = mats.shape[0]
    ext = np.zeros((num, 8, 8), dtype=dtype)
    ext[:, 0, 0] = denom
    ext[:, 1:, 1:] = mats
    struct = STRUCTURE.astype(dtype)
    # lhs[n, i, j, k] = sum_ab ext[n, a, i] ext[n, b, j] struct[a, b, k]
    tmp = np.einsum("nai,abk->nibk", ext, struct)
    lhs = np.einsum("nibk,nbj->nijk", tmp, ext)
    idx = np.array(MUL_INDEX)
    sgn = np.array(MUL_SIGN, dtype=dtype)
    # rhs[n, i, j, :] = denom * sign[i, j] * ext[n, :, idx[i, j]]
    cols = ext[:, :, idx]                      # (n, k, i, j)
    rhs = denom * sgn[None, None, :, :] * cols
    rhs = np.transpose(rhs, (0, 2, 3, 1))
    diff = (lhs - rhs)[:, 1:, 1:, :]
    return np.abs(diff).reshape(num, -1).max(axis=1)


def element_orders(mats, denom, max_power=256):
    """Multiplicative order of each matrix, or -1 if above ``max_power``."""
    mats = np.asarray(mats, dtype=np.int64)
    num, n, _ = mats.shape
    ident = denom * np.eye(n, dtype=np.int64)
    orders = np.full(num, -1, dtype=np.int64)
    power = mats.copy()
    for k in range(1, max_power + 1):
        hit = (orders < 0) & np.all(power == ident, axis=(1, 2))
        orders[hit] = k
        if np.all(orders >= 0):
            break
        prod = np.matmul(power, mats)
        if np.any(prod % denom):
            raise ValueError("product left the lattice of the given denominator")
        power = prod // denom
    return orders
