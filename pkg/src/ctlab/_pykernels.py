"""Pure-Python versions of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Arrays go in as int64 numpy arrays and come back as int64 numpy arrays.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def orbits(actions):
    """Label the orbits of the group generated by the rows of ``actions``.

    Each row is a permutation of ``range(n)``. Labels are assigned in order of
    the smallest point of each orbit.
    """
    acts = [list(map(int, row)) for row in np.asarray(actions, dtype=np.int64)]
    n = np.asarray(actions).shape[1]
    label = [-1] * n
    current = 0
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = current
        stack = [start]
        while stack:
            x = stack.pop()
            for act in acts:
                y = act[x]
                if label[y] < 0:
                    label[y] = current
                    stack.append(y)
        current += 1
    return np.array(label, dtype=np.int64)


def closure(actions, start):
    """Mask of the orbit of the points ``start`` under the rows of ``actions``."""
    actions = np.asarray(actions, dtype=np.int64)
    n = actions.shape[1]
    acts = [list(map(int, row)) for row in actions]
    seen = [False] * n
    stack = []
    for s in np.asarray(start, dtype=np.int64):
        s = int(s)
        if not seen[s]:
            seen[s] = True
            stack.append(s)
    while stack:
        x = stack.pop()
        for act in acts:
            y = act[x]
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return np.array(seen, dtype=bool)


def rref_mod(a, p):
    """Reduced row echelon form over F_p with lowest-index pivoting.

    Returns ``(R, pivots)``.
    """
    rows = [[int(v) % p for v in row] for row in np.asarray(a, dtype=np.int64)]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else np.asarray(a).shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    out = np.array(rows, dtype=np.int64).reshape(nrows, ncols)
    return out, np.array(pivots, dtype=np.int64)


def nullspace_mod(a, p):
    """Basis (as rows) of the right nullspace of ``a`` over F_p.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns; vectors are ordered by their free column.
    """
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    r, pivots = rref_mod(a, p)
    piv = [int(c) for c in pivots]
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-int(r[i, f])) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), ncols)


def matmul_mod(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n, m = a.shape
    q = b.shape[1]
    out = np.zeros((n, q), dtype=np.int64)
    for i in range(n):
        for j in range(q):
            s = 0
            for t in range(m):
                s += int(a[i, t]) * int(b[t, j])
            out[i, j] = s % p
    return out


def charpoly_mod(a, p):
    """Characteristic polynomial of a square matrix over F_p.

    Coefficients are returned highest degree first (monic). Uses reduction to
    upper Hessenberg form followed by the standard recurrence.
    """
    h = [[int(v) % p for v in row] for row in np.asarray(a, dtype=np.int64)]
    n = len(h)
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if h[i][m - 1]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(h[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            u = (h[i][m - 1] * inv) % p
            if not u:
                continue
            for j in range(n):
                h[i][j] = (h[i][j] - u * h[m][j]) % p
            for j in range(n):
                h[j][m] = (h[j][m] + u * h[j][i]) % p
    # polys[k] is the char poly of the leading k x k block, lowest degree first
    polys = [[1]]
    for k in range(1, n + 1):
        x_minus = [(-h[k - 1][k - 1]) % p, 1]
        nxt = _poly_mul(polys[k - 1], x_minus, p)
        t = 1
        for i in range(1, k):
            t = (t * h[k - i][k - i - 1]) % p
            coef = (t * h[k - i - 1][k - 1]) % p
            if coef:
                nxt = _poly_sub(nxt, [(coef * c) % p for c in polys[k - i - 1]], p)
        polys.append(nxt)
    return np.array(polys[n][::-1], dtype=np.int64)


def _poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_sub(f, g, p):
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    return [(x - y) % p for x, y in zip(f, g)]


def poly_roots_mod(coeffs, p):
    """Distinct roots in F_p of a polynomial given highest degree first."""
    cs = [int(c) % p for c in np.asarray(coeffs, dtype=np.int64)]
    roots = []
    for x in range(p):
        acc = 0
        for c in cs:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return np.array(roots, dtype=np.int64)
