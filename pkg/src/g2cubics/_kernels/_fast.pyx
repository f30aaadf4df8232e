# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pure``."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport llabs as c_abs

from g2cubics.octonion import MUL_INDEX, MUL_SIGN

cnp.import_array()

NAME = "cython"

cdef int _IDX[8][8]
cdef int _SGN[8][8]
for _i in range(8):
    for _j in range(8):
        _IDX[_i][_j] = MUL_INDEX[_i][_j]
        _SGN[_i][_j] = MUL_SIGN[_i][_j]


cdef int _matmul(cnp.int64_t* a, cnp.int64_t* b, cnp.int64_t* out,
                 int n, cnp.int64_t denom) noexcept nogil:
    cdef int i, j, t
    cdef cnp.int64_t acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for t in range(n):
                acc += a[i * n + t] * b[t * n + j]
            if acc % denom != 0:
                return 1
            out[i * n + j] = acc // denom
    return 0


def closure(gens, cnp.int64_t denom, Py_ssize_t max_order):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] g = np.ascontiguousarray(gens, dtype=np.int64)
    cdef int ngen = g.shape[0]
    cdef int n = g.shape[1]
    cdef int nn = n * n
    cdef Py_ssize_t cap = 1024
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] store = np.zeros((cap, nn), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] buf = np.zeros(nn, dtype=np.int64)
    cdef Py_ssize_t count = 1, head = 0, level_end
    cdef int k, i, bad
    cdef bint truncated = False
    cdef cnp.int64_t* gp = <cnp.int64_t*> g.data
    for i in range(n):
        store[0, i * n + i] = denom
    seen = {store[0].tobytes()}
    while head < count and not truncated:
        level_end = count
        while head < level_end:
            for k in range(ngen):
                bad = _matmul(&store[head, 0], gp + k * nn, <cnp.int64_t*> buf.data, n, denom)
                if bad:
                    raise ValueError("product left the lattice of the given denominator")
                key = buf.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                if count == cap:
                    cap *= 2
                    store = np.resize(store, (cap, nn))
                store[count, :] = buf
                count += 1
                if count > max_order:
                    truncated = True
                    break
            head += 1
            if truncated:
                break
    return store[:count].reshape(count, n, n).copy(), bool(truncated)


def automorphism_residuals(mats, cnp.int64_t denom):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] m = np.ascontiguousarray(mats, dtype=np.int64)
    cdef Py_ssize_t num = m.shape[0], t
    cdef cnp.ndarray[cnp.int64_t, ndim=1] res = np.zeros(num, dtype=np.int64)
    cdef cnp.int64_t ext[8][8]
    cdef cnp.int64_t prod[8]
    cdef cnp.int64_t worst, d, x
    cdef int i, j, a, b, k, s, r
    with nogil:
        for t in range(num):
            for a in range(8):
                for b in range(8):
                    ext[a][b] = 0
            ext[0][0] = denom
            for a in range(7):
                for b in range(7):
                    ext[a + 1][b + 1] = m[t, a, b]
            worst = 0
            for i in range(1, 8):
                for j in range(1, 8):
                    for k in range(8):
                        prod[k] = 0
                    for a in range(8):
                        x = ext[a][i]
                        if x == 0:
                            continue
                        for b in range(8):
                            if ext[b][j] != 0:
                                prod[_IDX[a][b]] += _SGN[a][b] * x * ext[b][j]
                    r = _IDX[i][j]
                    s = _SGN[i][j]
                    for k in range(8):
                        d = c_abs(prod[k] - denom * s * ext[k][r])
                        if d > worst:
                            worst = d
            res[t] = worst
    return res


def element_orders(mats, cnp.int64_t denom, int max_power=256):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] m = np.ascontiguousarray(mats, dtype=np.int64)
    cdef Py_ssize_t num = m.shape[0], t
    cdef int n = m.shape[1]
    cdef int nn = n * n
    cdef cnp.ndarray[cnp.int64_t, ndim=1] orders = np.full(num, -1, dtype=np.int64)
    cdef cnp.int64_t p[64]
    cdef cnp.int64_t q[64]
    cdef int k, i, bad = 0
    cdef bint is_id
    if nn > 64:
        raise ValueError("matrices larger than 8x8 are not supported")
    with nogil:
        for t in range(num):
            for i in range(nn):
                p[i] = m[t, i // n, i % n]
            for k in range(1, max_power + 1):
                is_id = True
                for i in range(nn):
                    if p[i] != (denom if i // n == i % n else 0):
                        is_id = False
                        break
                if is_id:
                    orders[t] = k
                    break
                if _matmul(p, &m[t, 0, 0], q, n, denom):
                    bad = 1
                    break
                for i in range(nn):
                    p[i] = q[i]
            if bad:
                break
    if bad:
        raise ValueError("product left the lattice of the given denominator")
    return orders
