# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics identical to ``_purekernels``."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


def rref(mat, add, mul, neg, inv):
    cdef i64[:, ::1] m = np.ascontiguousarray(mat, dtype=np.int64).copy()
    cdef const i64[:, ::1] A = np.ascontiguousarray(add, dtype=np.int64)
    cdef const i64[:, ::1] Mu = np.ascontiguousarray(mul, dtype=np.int64)
    cdef const i64[::1] N = np.ascontiguousarray(neg, dtype=np.int64)
    cdef const i64[::1] I = np.ascontiguousarray(inv, dtype=np.int64)
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 s, f, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        s = I[m[r, c]]
        for j in range(ncols):
            m[r, j] = Mu[s, m[r, j]]
        for i in range(nrows):
            if i != r and m[i, c] != 0:
                f = N[m[i, c]]
                for j in range(ncols):
                    if m[r, j] != 0:
                        m[i, j] = A[m[i, j], Mu[f, m[r, j]]]
        pivots.append(c)
        r += 1
    out = np.asarray(m)[:r].copy()
    return out, tuple(pivots)


cdef i64 _minw_rec(Py_ssize_t level, Py_ssize_t k, Py_ssize_t n, i64 q, bint started,
                   i64[:, ::1] acc, const i64[:, :, ::1] mult, const i64[:, ::1] A, i64 best):
    cdef Py_ssize_t j
    cdef i64 c, w
    cdef i64 cstart, cend
    if level == k:
        if started:
            w = 0
            for j in range(n):
                if acc[level, j] != 0:
                    w += 1
            if w < best:
                best = w
        return best
    cend = q if started else 2
    for c in range(cend):
        if c == 0:
            for j in range(n):
                acc[level + 1, j] = acc[level, j]
            best = _minw_rec(level + 1, k, n, q, started, acc, mult, A, best)
        else:
            for j in range(n):
                acc[level + 1, j] = A[acc[level, j], mult[level, c, j]]
            best = _minw_rec(level + 1, k, n, q, True, acc, mult, A, best)
        if best == 1:
            return best
    return best


def min_weight(gen, add, mul, q):
    g = np.ascontiguousarray(gen, dtype=np.int64)
    cdef Py_ssize_t k = g.shape[0]
    if k == 0:
        return 0
    cdef Py_ssize_t n = g.shape[1]
    mul_arr = np.ascontiguousarray(mul, dtype=np.int64)
    multiples = np.ascontiguousarray(mul_arr[:, g].transpose(1, 0, 2))  # k x q x n
    cdef const i64[:, :, ::1] mult = multiples
    cdef const i64[:, ::1] A = np.ascontiguousarray(add, dtype=np.int64)
    cdef i64[:, ::1] acc = np.zeros((k + 1, n), dtype=np.int64)
    return int(_minw_rec(0, k, n, q, False, acc, mult, A, n))


cdef class _VPSearch:
    cdef Py_ssize_t k, r
    cdef i64[:, ::1] d1, d2
    cdef i64[::1] lab1, lab2, basis, pi, used, chk_start, chk_list
    cdef i64[:, ::1] mcols, img
    cdef const i64[:, ::1] A
    cdef const i64[:, ::1] Mu
    cdef bint first_only
    cdef list out

    def __init__(self, d1, lab1, d2, lab2, basis, add, mul, first_only):
        self.d1 = np.ascontiguousarray(d1, dtype=np.int64)
        self.d2 = np.ascontiguousarray(d2, dtype=np.int64)
        self.k = self.d1.shape[0]
        self.r = self.d1.shape[1]
        self.lab1 = np.ascontiguousarray(lab1, dtype=np.int64)
        self.lab2 = np.ascontiguousarray(lab2, dtype=np.int64)
        self.basis = np.ascontiguousarray(basis, dtype=np.int64)
        self.A = np.ascontiguousarray(add, dtype=np.int64)
        self.Mu = np.ascontiguousarray(mul, dtype=np.int64)
        self.first_only = first_only
        self.pi = np.full(self.r, -1, dtype=np.int64)
        self.used = np.zeros(self.r, dtype=np.int64)
        self.mcols = np.zeros((max(self.k, 1), self.k), dtype=np.int64)
        self.img = np.zeros((max(self.k, 1) + 1, self.k), dtype=np.int64)
        self.out = []
        # group non-basis values by (last nonzero row + 1)
        isb = set(int(b) for b in basis)
        buckets = [[] for _ in range(self.k + 1)]
        d1a = np.asarray(self.d1)
        for v in range(self.r):
            if v in isb:
                continue
            nz = np.nonzero(d1a[:, v])[0]
            buckets[(int(nz[-1]) + 1) if len(nz) else 0].append(v)
        starts = [0]
        flat = []
        for bkt in buckets:
            flat.extend(bkt)
            starts.append(len(flat))
        self.chk_start = np.array(starts, dtype=np.int64)
        self.chk_list = np.array(flat if flat else [0], dtype=np.int64)

    cdef Py_ssize_t _find(self, Py_ssize_t row):
        cdef Py_ssize_t j, i
        cdef bint ok
        for j in range(self.r):
            ok = True
            for i in range(self.k):
                if self.d2[i, j] != self.img[row, i]:
                    ok = False
                    break
            if ok:
                return j
        return -1

    cdef void _undo(self, Py_ssize_t level, Py_ssize_t upto):
        cdef Py_ssize_t a, v
        for a in range(self.chk_start[level], upto):
            v = self.chk_list[a]
            self.used[self.pi[v]] = 0
            self.pi[v] = -1

    cdef bint _check(self, Py_ssize_t level):
        cdef Py_ssize_t a, v, s, i, j
        cdef i64 c
        for a in range(self.chk_start[level], self.chk_start[level + 1]):
            v = self.chk_list[a]
            for i in range(self.k):
                self.img[0, i] = 0
            for s in range(level):
                c = self.d1[s, v]
                if c != 0:
                    for i in range(self.k):
                        self.img[0, i] = self.A[self.img[0, i], self.Mu[c, self.mcols[s, i]]]
            j = self._find(0)
            if j < 0 or self.used[j] or self.lab2[j] != self.lab1[v]:
                self._undo(level, a)
                return False
            self.pi[v] = j
            self.used[j] = 1
        return True

    cdef bint _rec(self, Py_ssize_t t):
        cdef Py_ssize_t j, i, b
        if t == self.k:
            self.out.append(tuple(int(x) for x in self.pi))
            return self.first_only
        b = self.basis[t]
        for j in range(self.r):
            if self.used[j] or self.lab2[j] != self.lab1[b]:
                continue
            self.pi[b] = j
            self.used[j] = 1
            for i in range(self.k):
                self.mcols[t, i] = self.d2[i, j]
            if self._check(t + 1):
                if self._rec(t + 1):
                    return True
                self._undo(t + 1, self.chk_start[t + 2])
            self.used[j] = 0
            self.pi[b] = -1
        return False

    def run(self):
        if not self._check(0):
            return []
        self._rec(0)
        return self.out


def value_perm_search(d1, lab1, d2, lab2, basis, add, mul, first_only):
    d1 = np.asarray(d1)
    d2 = np.asarray(d2)
    if d1.shape != d2.shape:
        return []
    return _VPSearch(d1, lab1, d2, lab2, basis, add, mul, bool(first_only)).run()
