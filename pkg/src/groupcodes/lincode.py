"""Linear codes over F_q stored as reduced row-echelon generator matrices.

Coordinates are 0-based.  A permutation ``s`` acts on a code by moving
coordinate ``i`` of every codeword to position ``s(i)``.

Permutation automorphisms are computed from the distinct column values of a
generator matrix ``G`` (of the code or of its dual, whichever is smaller):
``s`` is an automorphism iff some invertible ``M`` has
``M G[:, i] == G[:, s(i)]`` for all ``i``.  Columns with equal values can be
permuted freely, so the group is the set of lifts of the admissible value
bijections, and its order is known without listing elements.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapExceeded, ParseError
from .gf import FiniteField, parse_field
from .perm import DEFAULT_GROUP_CAP, Permutation, PermGroupSmall, _compose

DEFAULT_DISTANCE_CAP = 2_000_000
DEFAULT_PAUT_MAX_N = 13


def _as_matrix(F: FiniteField, rows, n: int | None = None) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows:
        if n is None:
            raise ValueError("length required for an empty row list")
        return np.zeros((0, n), dtype=np.int64)
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise ValueError(f"ragged rows: lengths {sorted(lengths)}")
    if n is not None and lengths != {n}:
        raise ValueError(f"rows have length {lengths.pop()}, expected {n}")
    return np.array([[F.validate(x) for x in r] for r in rows], dtype=np.int64)


def field_rref(F: FiniteField, mat) -> tuple[np.ndarray, tuple[int, ...]]:
    t = F.tables
    mat = np.asarray(mat, dtype=np.int64)
    if mat.shape[0] == 0:
        return mat.reshape(0, mat.shape[1]), ()
    return kernels.rref(mat, t.add, t.mul, t.neg, t.inv)


def field_rank(F: FiniteField, mat) -> int:
    return len(field_rref(F, mat)[1])


def field_matmul(F: FiniteField, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.m == 1:
        return (A @ B) % F.p
    t = F.tables
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        out = t.add[out, t.mul[A[:, j][:, None], B[j][None, :]]]
    return out


def _normalize_columns(F: FiniteField, mat: np.ndarray) -> list[tuple]:
    """Each column scaled so its first nonzero entry is 1 (zero columns stay zero)."""
    t = F.tables
    out = []
    for col in mat.T:
        nz = np.flatnonzero(col)
        if len(nz):
            col = t.mul[t.inv[col[nz[0]]], col]
        out.append(tuple(int(x) for x in col))
    return out


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: FiniteField
    n: int
    gen: np.ndarray
    pivots: tuple[int, ...]

    def __post_init__(self):
        self.gen.setflags(write=False)

    @classmethod
    def from_rows(cls, field: FiniteField, rows: Iterable[Sequence], n: int | None = None) -> LinearCode:
        mat = _as_matrix(field, rows, n)
        gen, piv = field_rref(field, mat)
        return cls(field, mat.shape[1], np.ascontiguousarray(gen, dtype=np.int64), tuple(piv))

    @classmethod
    def zero(cls, field: FiniteField, n: int) -> LinearCode:
        return cls.from_rows(field, [], n)

    @classmethod
    def full(cls, field: FiniteField, n: int) -> LinearCode:
        return cls.from_rows(field, np.eye(n, dtype=np.int64), n)

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self) -> str:
        return f"LinearCode(GF({self.field.label}), n={self.n}, k={self.k})"

    def rows(self) -> list[list[int]]:
        return self.gen.tolist()

    def key(self) -> tuple:
        return (self.field.q, self.n, self.gen.tobytes(), self.gen.shape)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field == other.field and self.n == other.n and np.array_equal(self.gen, other.gen)

    def __hash__(self):
        return hash(self.key())

    def _check_len(self, x) -> np.ndarray:
        x = np.asarray([self.field.validate(v) for v in x], dtype=np.int64)
        if x.shape != (self.n,):
            raise ValueError(f"vector length {len(x)} does not match code length {self.n}")
        return x

    def reduce(self, x) -> np.ndarray:
        x = self._check_len(x)
        t = self.field.tables
        for row, p in zip(self.gen, self.pivots):
            c = x[p]
            if c:
                x = t.add[x, t.mul[t.neg[c], row]]
        return x

    def contains(self, x) -> bool:
        return not self.reduce(x).any()

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains_all(self, mat) -> bool:
        """All rows of ``mat`` lie in the code (one matrix product with the parity check)."""
        mat = np.asarray(mat, dtype=np.int64)
        if mat.size == 0:
            return True
        if self.k == self.n:
            return True
        H = self.parity_check()
        return not field_matmul(self.field, mat, H.T).any()

    def dual(self) -> LinearCode:
        return LinearCode.from_rows(self.field, self._null_basis(), self.n)

    def _null_basis(self) -> np.ndarray:
        t = self.field.tables
        free = [j for j in range(self.n) if j not in set(self.pivots)]
        out = np.zeros((len(free), self.n), dtype=np.int64)
        for r, j in enumerate(free):
            out[r, j] = 1
            for row, p in zip(self.gen, self.pivots):
                out[r, p] = t.neg[row[j]]
        return out

    def parity_check(self) -> np.ndarray:
        if not hasattr(self, "_H"):
            object.__setattr__(self, "_H", self._null_basis())
        return self._H

    def permute(self, sigma: Permutation) -> LinearCode:
        if sigma.n != self.n:
            raise ValueError(f"permutation degree {sigma.n} does not match length {self.n}")
        inv = np.array(sigma.inverse().images, dtype=np.int64)
        return LinearCode.from_rows(self.field, self.gen[:, inv], self.n)

    def equal(self, other: LinearCode) -> bool:
        return self == other

    def codewords(self):
        """Iterate over all codewords (``q**k`` of them)."""
        t = self.field.tables
        zero = np.zeros(self.n, dtype=np.int64)
        for coeffs in itertools.product(range(self.q), repeat=self.k):
            x = zero
            for c, row in zip(coeffs, self.gen):
                if c:
                    x = t.add[x, t.mul[c, row]]
            yield x

    def min_distance(self, cap: int = DEFAULT_DISTANCE_CAP) -> int:
        """Minimum weight of a nonzero codeword.

        Scans the codewords when ``q**k <= cap``; otherwise finds the smallest
        set of linearly dependent parity-check columns, provided ``2**n <= cap``.
        """
        if self.k == 0:
            raise ValueError("the zero code has no nonzero codeword")
        t = self.field.tables
        if self.q**self.k <= cap:
            return int(kernels.min_weight(self.gen, t.add, t.mul, self.q))
        if 2**self.n > cap:
            raise CapExceeded(f"minimum distance needs q^k = {self.q}^{self.k} or 2^n above cap {cap}")
        if self.k == self.n:
            return 1
        H = self.parity_check()
        for w in range(1, self.n - self.k + 2):
            for cols in itertools.combinations(range(self.n), w):
                if field_rank(self.field, H[:, cols]) < w:
                    return w
        raise AssertionError("Singleton bound violated")  # pragma: no cover

    def is_mds(self) -> bool:
        return self.min_distance() == self.n - self.k + 1

    def paut(self, max_n: int = DEFAULT_PAUT_MAX_N, cap: int = DEFAULT_GROUP_CAP) -> PermGroupSmall:
        return paut(self, max_n=max_n, cap=cap)

    def to_text(self) -> str:
        return format_code(self)


# -- permutation automorphisms and equivalence --------------------------------


def _column_labels(C: LinearCode, G: np.ndarray, H: np.ndarray, registry: dict) -> list[int]:
    """Per-coordinate invariants preserved by every coordinate permutation mapping
    one code onto another: value and parallel-class sizes in ``G`` and ``H``."""
    F = C.field
    feats = []
    for M in (G, H):
        cols = [tuple(int(x) for x in c) for c in M.T]
        norm = _normalize_columns(F, M)
        cnt = {}
        for c in cols:
            cnt[c] = cnt.get(c, 0) + 1
        ncnt = {}
        for c in norm:
            ncnt[c] = ncnt.get(c, 0) + 1
        feats.append([(cnt[c], ncnt[nc], not any(c)) for c, nc in zip(cols, norm)])
    out = []
    for a, b in zip(*feats):
        key = (a, b)
        out.append(registry.setdefault(key, len(registry)))
    return out


@dataclass
class _ValueData:
    values: np.ndarray  # k x r distinct column values
    classes: list[list[int]]  # coordinates holding each value
    labels: list[int]
    basis: list[int]  # value index of the t-th unit vector


def _value_data(C: LinearCode, use_dual: bool, registry: dict) -> _ValueData:
    D = C.dual() if use_dual else C
    G, H = D.gen, D.parity_check()
    col_labels = _column_labels(C, G, H, registry)
    index: dict[tuple, int] = {}
    classes: list[list[int]] = []
    labels: list[int] = []
    for i, col in enumerate(G.T):
        key = tuple(int(x) for x in col)
        if key not in index:
            index[key] = len(classes)
            classes.append([])
            labels.append(col_labels[i])
        classes[index[key]].append(i)
    k = G.shape[0]
    values = np.array(list(index), dtype=np.int64).T.reshape(k, len(classes))
    basis = [index[tuple(int(x) for x in np.eye(k, dtype=np.int64)[t])] for t in range(k)]
    return _ValueData(np.ascontiguousarray(values), classes, labels, basis)


def _lift(v1: _ValueData, v2: _ValueData, pi: Sequence[int], n: int) -> tuple:
    img = [0] * n
    for v, w in enumerate(pi):
        for a, b in zip(v1.classes[v], v2.classes[w]):
            img[a] = b
    return tuple(img)


def _search(C1: LinearCode, C2: LinearCode, first_only: bool):
    use_dual = C1.k > C1.n - C1.k
    registry: dict = {}
    v1 = _value_data(C1, use_dual, registry)
    v2 = _value_data(C2, use_dual, registry)
    if len(v1.classes) != len(v2.classes):
        return v1, v2, []
    sig1 = sorted((lab, len(c)) for lab, c in zip(v1.labels, v1.classes))
    sig2 = sorted((lab, len(c)) for lab, c in zip(v2.labels, v2.classes))
    if sig1 != sig2:
        return v1, v2, []
    # fold class sizes into the labels so lifts always exist
    lab_reg: dict = {}
    lab1 = [lab_reg.setdefault((lab, len(c)), len(lab_reg)) for lab, c in zip(v1.labels, v1.classes)]
    lab2 = [lab_reg.setdefault((lab, len(c)), len(lab_reg)) for lab, c in zip(v2.labels, v2.classes)]
    t = C1.field.tables
    pis = kernels.value_perm_search(
        v1.values,
        np.array(lab1, dtype=np.int64),
        v2.values,
        np.array(lab2, dtype=np.int64),
        np.array(v1.basis, dtype=np.int64),
        t.add,
        t.mul,
        first_only,
    )
    return v1, v2, pis


def _trivial_cases(C: LinearCode) -> bool:
    return C.k == 0 or C.k == C.n


def paut(C: LinearCode, max_n: int = DEFAULT_PAUT_MAX_N, cap: int = DEFAULT_GROUP_CAP) -> PermGroupSmall:
    """The group of coordinate permutations fixing ``C``.

    The result knows its order and has an exact membership test; the element
    list is only materialised on demand (and only up to ``cap`` elements).
    """
    n = C.n
    if n > max_n:
        raise CapExceeded(f"length {n} exceeds automorphism search bound {max_n}")
    if _trivial_cases(C):
        return PermGroupSmall.symmetric(n, cap=cap)
    v, _, pis = _search(C, C, first_only=False)
    order = len(pis) * math.prod(math.factorial(len(c)) for c in v.classes)
    if order == math.factorial(n):
        return PermGroupSmall.symmetric(n, cap=cap)
    gens = []
    for cls in v.classes:
        if len(cls) > 1:
            gens.append(Permutation.from_cycles(n, [(cls[0] + 1, cls[1] + 1)]))
            if len(cls) > 2:
                gens.append(Permutation.from_cycles(n, [tuple(c + 1 for c in cls)]))
    for pi in _generating_subset(pis):
        gens.append(Permutation(_lift(v, v, pi, n)))

    def member(p: Permutation, C=C) -> bool:
        if p.n != n:
            return False
        inv = np.array(p.inverse().images, dtype=np.int64)
        return C.contains_all(C.gen[:, inv])

    return PermGroupSmall(n, gens, order=order, member=member, cap=cap)


def _generating_subset(pis: list[tuple]) -> list[tuple]:
    """Greedy generating set of the group formed by the value bijections."""
    if not pis:
        return []
    r = len(pis[0])
    ident = tuple(range(r))
    gens: list[tuple] = []
    span = {ident}
    for p in sorted(pis):
        if p in span:
            continue
        gens.append(p)
        span = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _compose(x, g)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(span) == len(pis):
            break
    return gens


def permutation_equivalence(C1: LinearCode, C2: LinearCode, max_n: int = DEFAULT_PAUT_MAX_N) -> Permutation | None:
    """A permutation ``s`` with ``C1.permute(s) == C2``, or ``None``."""
    if C1.field != C2.field or C1.n != C2.n or C1.k != C2.k:
        return None
    n = C1.n
    if n > max_n:
        raise CapExceeded(f"length {n} exceeds equivalence search bound {max_n}")
    if _trivial_cases(C1):
        return Permutation.identity(n)
    v1, v2, pis = _search(C1, C2, first_only=True)
    if not pis:
        return None
    return Permutation(_lift(v1, v2, pis[0], n))


# -- text format -----------------------------------------------------------------


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def parse_code(text: str) -> LinearCode:
    """Parse ``"q n k"`` followed by ``k`` rows of integer field reps."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty code file", 1)
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 3:
        raise ParseError(f"header must be 'q n k', got {head!r}", no)
    try:
        F = parse_field(parts[0])
        n, k = int(parts[1]), int(parts[2])
    except ValueError as e:
        raise ParseError(f"bad header: {e}", no) from None
    if n < 1 or not 0 <= k <= n:
        raise ParseError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}", no)
    body = lines[1:]
    if len(body) != k:
        raise ParseError(f"expected {k} rows, found {len(body)}", body[-1][0] if body else no)
    rows = []
    for no, line in body:
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", no) from None
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", no)
        bad = [x for x in row if not 0 <= x < F.q]
        if bad:
            raise ParseError(f"{bad[0]} is not an element of GF({F.label})", no)
        rows.append(row)
    return LinearCode.from_rows(F, rows, n)


def read_code(path) -> LinearCode:
    return parse_code(Path(path).read_text())


def format_code(C: LinearCode, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend("# " + line for line in comment.splitlines())
    out.append(f"{C.field.label} {C.n} {C.k}")
    out.extend(" ".join(str(x) for x in row) for row in C.rows())
    return "\n".join(out) + "\n"


def write_code(C: LinearCode, path, comment: str | None = None) -> None:
    Path(path).write_text(format_code(C, comment))
