# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Signatures and results match the pure-Python module exactly. Modular
arithmetic assumes p < 2**31 so every product fits in a signed 64-bit word.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

BACKEND = "cython"


def orbits(actions):
    cdef int64_t[:, ::1] acts = np.ascontiguousarray(actions, dtype=np.int64)
    cdef Py_ssize_t g = acts.shape[0], n = acts.shape[1]
    out = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] label = out
    stack_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] stack = stack_arr
    cdef Py_ssize_t top, start, a
    cdef int64_t x, y, current = 0
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = current
        stack[0] = start
        top = 1
        while top:
            top -= 1
            x = stack[top]
            for a in range(g):
                y = acts[a, x]
                if label[y] < 0:
                    label[y] = current
                    stack[top] = y
                    top += 1
        current += 1
    return out


def closure(actions, start):
    cdef int64_t[:, ::1] acts = np.ascontiguousarray(actions, dtype=np.int64)
    cdef int64_t[::1] st = np.ascontiguousarray(start, dtype=np.int64)
    cdef Py_ssize_t g = acts.shape[0], n = acts.shape[1]
    out = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = out
    stack_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] stack = stack_arr
    cdef Py_ssize_t top = 0, i, a
    cdef int64_t x, y
    for i in range(st.shape[0]):
        x = st[i]
        if not seen[x]:
            seen[x] = 1
            stack[top] = x
            top += 1
    while top:
        top -= 1
        x = stack[top]
        for a in range(g):
            y = acts[a, x]
            if not seen[y]:
                seen[y] = 1
                stack[top] = y
                top += 1
    return out.astype(bool)


cdef inline int64_t _inv(int64_t a, int64_t p):
    cdef int64_t r = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


def rref_mod(a, int64_t p):
    out = np.ascontiguousarray(a, dtype=np.int64) % p
    if out.ndim != 2:
        raise ValueError("expected a matrix")
    cdef int64_t[:, ::1] m = out
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _inv(m[r, c], p)
        for j in range(ncols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = m[i, c]
            if f:
                for j in range(ncols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
                    if m[i, j] < 0:
                        m[i, j] += p
        pivots.append(c)
        r += 1
    return out, np.array(pivots, dtype=np.int64)


def nullspace_mod(a, int64_t p):
    a = np.asarray(a, dtype=np.int64)
    cdef Py_ssize_t ncols = a.shape[1]
    r, pivots = rref_mod(a, p)
    cdef int64_t[:, ::1] rv = r
    piv = [int(c) for c in pivots]
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    cdef int64_t[:, ::1] bv = basis
    cdef Py_ssize_t k, i, f, c
    for k in range(len(free)):
        f = free[k]
        bv[k, f] = 1
        for i in range(len(piv)):
            c = piv[i]
            bv[k, c] = (p - rv[i, f]) % p
    return basis


def matmul_mod(a, b, int64_t p):
    cdef int64_t[:, ::1] av = np.ascontiguousarray(a, dtype=np.int64) % p
    cdef int64_t[:, ::1] bv = np.ascontiguousarray(b, dtype=np.int64) % p
    cdef Py_ssize_t n = av.shape[0], m = av.shape[1], q = bv.shape[1]
    out = np.zeros((n, q), dtype=np.int64)
    cdef int64_t[:, ::1] ov = out
    cdef Py_ssize_t i, j, t
    cdef int64_t s
    for i in range(n):
        for j in range(q):
            s = 0
            for t in range(m):
                s = (s + av[i, t] * bv[t, j]) % p
            ov[i, j] = s
    return out


def charpoly_mod(a, int64_t p):
    hm = np.ascontiguousarray(a, dtype=np.int64) % p
    cdef int64_t[:, ::1] h = hm
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t m, i, j, piv, k, d
    cdef int64_t inv, u, tmp, t, coef
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if h[i, m - 1]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            for j in range(n):
                tmp = h[piv, j]
                h[piv, j] = h[m, j]
                h[m, j] = tmp
            for j in range(n):
                tmp = h[j, piv]
                h[j, piv] = h[j, m]
                h[j, m] = tmp
        inv = _inv(h[m, m - 1], p)
        for i in range(m + 1, n):
            u = (h[i, m - 1] * inv) % p
            if not u:
                continue
            for j in range(n):
                h[i, j] = ((h[i, j] - u * h[m, j]) % p + p) % p
            for j in range(n):
                h[j, m] = (h[j, m] + u * h[j, i]) % p
    # polys[k, :k+1] holds the char poly of the leading k x k block, lowest degree first
    polys_arr = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef int64_t[:, ::1] polys = polys_arr
    polys[0, 0] = 1
    cdef int64_t hk
    for k in range(1, n + 1):
        hk = (p - h[k - 1, k - 1]) % p
        for d in range(k + 1):
            t = 0
            if d >= 1:
                t = polys[k - 1, d - 1]
            if d <= k - 1:
                t = (t + hk * polys[k - 1, d]) % p
            polys[k, d] = t
        t = 1
        for i in range(1, k):
            t = (t * h[k - i, k - i - 1]) % p
            coef = (t * h[k - i - 1, k - 1]) % p
            if coef:
                for d in range(k - i):
                    polys[k, d] = ((polys[k, d] - coef * polys[k - i - 1, d]) % p + p) % p
    return polys_arr[n, : n + 1][::-1].copy()


def poly_roots_mod(coeffs, int64_t p):
    cdef int64_t[::1] cs = np.ascontiguousarray(coeffs, dtype=np.int64) % p
    cdef Py_ssize_t nc = cs.shape[0], i
    cdef int64_t x, acc
    roots = []
    for x in range(p):
        acc = 0
        for i in range(nc):
            acc = (acc * x + cs[i]) % p
        if acc == 0:
            roots.append(x)
    return np.array(roots, dtype=np.int64)
