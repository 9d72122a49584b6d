"""Pure-Python kernels; the compiled module ``_ckernels`` mirrors these signatures.

All matrices hold integer field reps; ``add``/``mul`` are ``q x q`` tables and
``neg``/``inv`` are length-``q`` vectors (see ``FiniteField.tables``).
"""

import numpy as np


def rref(mat, add, mul, neg, inv):
    """Reduced row-echelon form. Returns ``(rows, pivots)`` with zero rows dropped."""
    add = add.tolist()
    mul = mul.tolist()
    neg = neg.tolist()
    inv = inv.tolist()
    m = [list(map(int, row)) for row in np.asarray(mat)]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv[m[r][c]]
        row = [mul[s][x] for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = neg[m[i][c]]
                mf = mul[f]
                m[i] = [add[a][mf[b]] for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    out = np.array(m[:r], dtype=np.int64).reshape(r, ncols)
    return out, tuple(pivots)


def min_weight(gen, add, mul, q):
    """Exhaustive minimum weight of the nonzero span of ``gen`` (rows independent).

    Only combinations whose first nonzero coefficient is 1 are visited.
    """
    add = add.tolist()
    mul = mul.tolist()
    g = [list(map(int, row)) for row in np.asarray(gen)]
    k = len(g)
    if k == 0:
        return 0
    n = len(g[0])
    multiples = [[[mul[c][x] for x in row] for c in range(q)] for row in g]
    best = n
    zero = [0] * n

    def rec(level, acc, started):
        nonlocal best
        if level == k:
            if started:
                w = n - acc.count(0)
                if w < best:
                    best = w
            return
        coeffs = range(q) if started else (0, 1)
        for c in coeffs:
            if c == 0:
                rec(level + 1, acc, started)
            else:
                mrow = multiples[level][c]
                rec(level + 1, [add[a][b] for a, b in zip(acc, mrow)], True)

    rec(0, zero, False)
    return best


def value_perm_search(d1, lab1, d2, lab2, basis, add, mul, first_only):
    """Find bijections pi of distinct column values with ``M d1[:, v] = d2[:, pi[v]]``.

    ``basis[t]`` is the index of the unit vector ``e_t`` among the columns of
    ``d1``; the images of these columns are the columns of ``M``.  Labels must be
    preserved.  Returns a list of tuples (all solutions, or at most one).
    """
    add = add.tolist()
    mul = mul.tolist()
    d1 = np.asarray(d1)
    d2 = np.asarray(d2)
    k, r = d1.shape
    if d2.shape != (k, r):
        return []
    cols1 = [tuple(int(x) for x in d1[:, v]) for v in range(r)]
    cols2 = {tuple(int(x) for x in d2[:, v]): v for v in range(r)}
    lab1 = [int(x) for x in lab1]
    lab2 = [int(x) for x in lab2]
    basis = [int(b) for b in basis]
    is_basis = set(basis)

    def last_nz(col):
        for i in range(k - 1, -1, -1):
            if col[i]:
                return i
        return -1

    check_at = [[] for _ in range(k + 1)]
    for v in range(r):
        if v not in is_basis:
            check_at[last_nz(cols1[v]) + 1].append(v)

    pi = [-1] * r
    used = [False] * r
    mcols = []
    out = []

    def place(v, image_col):
        j = cols2.get(image_col)
        if j is None or used[j] or lab2[j] != lab1[v]:
            return False
        pi[v] = j
        used[j] = True
        return True

    def check(level):
        placed = []
        for v in check_at[level]:
            col = cols1[v]
            img = [0] * k
            for s in range(level):
                c = col[s]
                if c:
                    ms = mcols[s]
                    mc = mul[c]
                    img = [add[a][mc[b]] for a, b in zip(img, ms)]
            if not place(v, tuple(img)):
                for u in placed:
                    used[pi[u]] = False
                    pi[u] = -1
                return None
            placed.append(v)
        return placed

    def undo(placed):
        for u in placed:
            used[pi[u]] = False
            pi[u] = -1

    def rec(t):
        if t == k:
            out.append(tuple(pi))
            return first_only
        b = basis[t]
        for j in range(r):
            if used[j] or lab2[j] != lab1[b]:
                continue
            pi[b] = j
            used[j] = True
            mcols.append(cols2_list[j])
            placed = check(t + 1)
            if placed is not None:
                if rec(t + 1):
                    return True
                undo(placed)
            mcols.pop()
            used[j] = False
            pi[b] = -1
        return False

    cols2_list = [tuple(int(x) for x in d2[:, v]) for v in range(r)]
    placed0 = check(0)
    if placed0 is None:
        return []
    rec(0)
    return out
