"""Cauchy codes on the projective line and their group-code structure.

Points of the projective line over F_q are ``ProjectivePoint(x)`` for finite
``x`` and ``ProjectivePoint(None)`` (``INF``) for the point at infinity, with
homogeneous coordinates ``(x, 1)`` and ``(1, 0)``.  Internally a point is an
integer index: ``x`` for finite points and ``q`` for infinity.

A homography ``[[a, b], [c, d]]`` maps ``[x, y]`` to ``[a x + b y, c x + d y]``.
For a matrix ``T`` and point ``z``, ``theta(T, z)`` is the second coordinate of
``T (coords z)`` when nonzero and the first otherwise, so that
``T (coords z) = theta(T, z) * coords(T z)``.

The code ``C_k(alpha, f)`` has rows ``(f(a_j) * x_j**i * y_j**(k-1-i))_j`` for
``0 <= i < k`` where ``(x_j, y_j)`` are the coordinates of ``a_j``.  Two codes
``C_k(alpha, f)`` and ``C_k(T alpha, f')`` coincide iff
``f' o T`` is a scalar multiple of ``theta_T**(k-1) * f`` on the location set.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .classify import regular_subgroups
from .errors import CapExceeded, ParseError
from .gf import FiniteField, parse_field
from .groups import FiniteGroupTable, GROUPS_OF_ORDER, find_isomorphism, group_from_spec
from .lincode import LinearCode, _generating_subset
from .perm import Permutation, PermGroupSmall

DEFAULT_MAX_Q = 16


# -- points and homographies ------------------------------------------------------


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    x: int | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def coords(self) -> tuple[int, int]:
        return (1, 0) if self.x is None else (self.x, 1)

    def index(self, q: int) -> int:
        return q if self.x is None else self.x

    @classmethod
    def from_index(cls, i: int, q: int) -> ProjectivePoint:
        return cls(None) if i == q else cls(int(i))

    @classmethod
    def parse(cls, text: str, F: FiniteField) -> ProjectivePoint:
        t = text.strip().lower()
        if t in ("inf", "oo", "∞"):
            return cls(None)
        return cls(F.validate(int(t)))

    def __str__(self) -> str:
        return "inf" if self.x is None else str(self.x)

    def sort_key(self) -> tuple:
        return (self.x is None, self.x or 0)


INF = ProjectivePoint(None)


def proj_line(F: FiniteField) -> list[ProjectivePoint]:
    """All ``q + 1`` points: the finite ones in rep order, then infinity."""
    return [ProjectivePoint(x) for x in range(F.q)] + [INF]


def coordinatize(z: ProjectivePoint) -> tuple[int, int]:
    return z.coords


def _normalize(F: FiniteField, a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    lead = next(v for v in (a, b, c, d) if v)
    s = F.inv(lead)
    return (F.mul(s, a), F.mul(s, b), F.mul(s, c), F.mul(s, d))


@dataclass(frozen=True)
class Homography:
    field: FiniteField
    mat: tuple[int, int, int, int]  # a, b, c, d (row-major)

    def __post_init__(self):
        a, b, c, d = (self.field.validate(v) for v in self.mat)
        F = self.field
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise ValueError(f"singular matrix {self.mat}")
        object.__setattr__(self, "mat", _normalize(F, a, b, c, d))

    @classmethod
    def identity(cls, F: FiniteField) -> Homography:
        return cls(F, (1, 0, 0, 1))

    @classmethod
    def translation(cls, F: FiniteField, b: int) -> Homography:
        return cls(F, (1, b, 0, 1))

    @classmethod
    def diagonal(cls, F: FiniteField, a: int) -> Homography:
        return cls(F, (a, 0, 0, 1))

    def __str__(self) -> str:
        a, b, c, d = self.mat
        return f"[[{a},{b}],[{c},{d}]]"

    def __call__(self, z: ProjectivePoint) -> ProjectivePoint:
        return apply_homography(self, z)

    def __mul__(self, other: Homography) -> Homography:
        return Homography(self.field, _matmul(self.field, self.mat, other.mat))

    def inverse(self) -> Homography:
        a, b, c, d = self.mat
        F = self.field
        return Homography(self.field, (d, F.neg(b), F.neg(c), a))

    def scaled(self, lam: int) -> tuple[int, int, int, int]:
        """The matrix ``lam * T`` (a different representative of the same class)."""
        return tuple(self.field.mul(lam, v) for v in self.mat)


def _matmul(F, m1, m2):
    a, b, c, d = m1
    e, f, g, h = m2
    return (
        F.add(F.mul(a, e), F.mul(b, g)),
        F.add(F.mul(a, f), F.mul(b, h)),
        F.add(F.mul(c, e), F.mul(d, g)),
        F.add(F.mul(c, f), F.mul(d, h)),
    )


def _act(F: FiniteField, mat, z: ProjectivePoint) -> tuple[ProjectivePoint, int]:
    a, b, c, d = mat
    x, y = z.coords
    u = F.add(F.mul(a, x), F.mul(b, y))
    v = F.add(F.mul(c, x), F.mul(d, y))
    if v:
        return ProjectivePoint(F.div(u, v)), v
    return INF, u


def apply_homography(T: Homography, z: ProjectivePoint) -> ProjectivePoint:
    return _act(T.field, T.mat, z)[0]


def theta(T: Homography | tuple, z: ProjectivePoint, F: FiniteField | None = None) -> int:
    """Second coordinate of ``T(coords z)`` if nonzero, else the first.

    ``T`` may be a ``Homography`` or a raw matrix tuple (with ``F`` given); the
    value depends on the representative, scaling with it.
    """
    if isinstance(T, Homography):
        F, mat = T.field, T.mat
    else:
        mat = T
    return _act(F, mat, z)[1]


def solve_homography(F: FiniteField, src: Sequence[ProjectivePoint], dst: Sequence[ProjectivePoint]) -> Homography:
    """The unique homography sending three distinct points to three distinct points."""
    if len(src) != 3 or len(dst) != 3 or len(set(src)) != 3 or len(set(dst)) != 3:
        raise ValueError("need three distinct source and target points")

    def frame(pts):
        (x1, y1), (x2, y2), (x3, y3) = (p.coords for p in pts)
        det = F.sub(F.mul(x1, y2), F.mul(x2, y1))
        di = F.inv(det)
        # u3 = s u1 + t u2
        s = F.mul(di, F.sub(F.mul(x3, y2), F.mul(x2, y3)))
        t = F.mul(di, F.sub(F.mul(x1, y3), F.mul(x3, y1)))
        return (F.mul(s, x1), F.mul(t, x2), F.mul(s, y1), F.mul(t, y2))

    A = frame(src)
    B = frame(dst)
    a, b, c, d = A
    det = F.sub(F.mul(a, d), F.mul(b, c))
    di = F.inv(det)
    Ainv = (F.mul(di, d), F.mul(di, F.neg(b)), F.mul(di, F.neg(c)), F.mul(di, a))
    return Homography(F, _matmul(F, B, Ainv))


@dataclass(frozen=True)
class _PGL2:
    """All of PGL_2(F_q), with images and theta values at every point."""

    mats: np.ndarray  # N x 4, sorted normalized representatives
    image: np.ndarray  # N x (q+1) point indices
    theta: np.ndarray  # N x (q+1) field reps


@functools.lru_cache(maxsize=None)
def _pgl2(F: FiniteField) -> _PGL2:
    q = F.q
    t = F.tables
    mats = []
    for a, b, c, d in itertools.product(range(q), repeat=4):
        lead = next((v for v in (a, b, c, d) if v), 0)
        if lead != 1:
            continue
        if F.sub(F.mul(a, d), F.mul(b, c)):
            mats.append((a, b, c, d))
    M = np.array(mats, dtype=np.int64)
    xs = np.array([p.coords[0] for p in proj_line(F)], dtype=np.int64)
    ys = np.array([p.coords[1] for p in proj_line(F)], dtype=np.int64)
    a, b, c, d = (M[:, i][:, None] for i in range(4))
    u = t.add[t.mul[a, xs[None, :]], t.mul[b, ys[None, :]]]
    v = t.add[t.mul[c, xs[None, :]], t.mul[d, ys[None, :]]]
    image = np.where(v != 0, t.mul[u, t.inv[v]], q)
    th = np.where(v != 0, v, u)
    for arr in (M, image, th):
        arr.setflags(write=False)
    return _PGL2(M, image, th)


def _check_q(F: FiniteField, max_q: int):
    if F.q > max_q:
        raise CapExceeded(f"PGL_2 enumeration needs q <= {max_q}, got {F.q}")


def pgl2(F: FiniteField, max_q: int = DEFAULT_MAX_Q) -> list[Homography]:
    _check_q(F, max_q)
    return [Homography(F, tuple(int(v) for v in m)) for m in _pgl2(F).mats]


def _point_indices(F: FiniteField, pts: Iterable[ProjectivePoint]) -> list[int]:
    return [p.index(F.q) for p in pts]


def _stabilizer_rows(F: FiniteField, L: Iterable[ProjectivePoint]) -> np.ndarray:
    G = _pgl2(F)
    idx = np.array(sorted(set(_point_indices(F, L))), dtype=np.int64)
    inL = np.zeros(F.q + 1, dtype=bool)
    inL[idx] = True
    return np.flatnonzero(inL[G.image[:, idx]].all(axis=1))


def setwise_stabilizer(F: FiniteField, L: Iterable[ProjectivePoint], max_q: int = DEFAULT_MAX_Q) -> list[Homography]:
    """All homographies with ``T(L) = L``, sorted by matrix representative."""
    _check_q(F, max_q)
    rows = _stabilizer_rows(F, L)
    return [Homography(F, tuple(int(v) for v in _pgl2(F).mats[r])) for r in rows]


# -- scaling maps and specs ---------------------------------------------------------


@dataclass(frozen=True)
class ScalingMap:
    domain: tuple[ProjectivePoint, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        dom = tuple(self.domain)
        vals = tuple(int(v) for v in self.values)
        if len(dom) != len(vals):
            raise ValueError("domain and values differ in length")
        if len(set(dom)) != len(dom):
            raise ValueError("repeated point in scaling map domain")
        if any(v == 0 for v in vals):
            raise ValueError("scaling map values must be nonzero")
        # canonical order so that equality compares functions
        pairs = sorted(zip(dom, vals), key=lambda p: p[0].sort_key())
        dom = tuple(p[0] for p in pairs)
        vals = tuple(p[1] for p in pairs)
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "values", vals)

    def __call__(self, z: ProjectivePoint) -> int:
        return self.as_dict()[z]

    def as_dict(self) -> dict[ProjectivePoint, int]:
        return dict(zip(self.domain, self.values))

    @classmethod
    def constant(cls, L: Iterable[ProjectivePoint], c: int = 1) -> ScalingMap:
        L = sorted(L, key=ProjectivePoint.sort_key)
        return cls(tuple(L), (c,) * len(L))

    @classmethod
    def from_dict(cls, d: dict) -> ScalingMap:
        pts = sorted(d, key=ProjectivePoint.sort_key)
        return cls(tuple(pts), tuple(d[p] for p in pts))

    def is_constant(self) -> bool:
        return len(set(self.values)) <= 1

    def equivalent(self, other: ScalingMap, F: FiniteField) -> bool:
        """Equal up to one global nonzero scalar (same domain required)."""
        a, b = self.as_dict(), other.as_dict()
        if set(a) != set(b):
            return False
        z0 = self.domain[0]
        lam = F.div(b[z0], a[z0])
        return all(b[z] == F.mul(lam, a[z]) for z in a)


@dataclass(frozen=True)
class CauchySpec:
    field: FiniteField
    k: int
    alpha: tuple[ProjectivePoint, ...]
    f: ScalingMap

    def __post_init__(self):
        alpha = tuple(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        n = len(alpha)
        if len(set(alpha)) != n:
            raise ValueError("location vector has repeated entries")
        if not 1 <= self.k < n:
            raise ValueError(f"need 1 <= k < n, got k={self.k}, n={n}")
        for z in alpha:
            if z.x is not None:
                self.field.validate(z.x)
        if set(self.f.domain) != set(alpha):
            raise ValueError("scaling map must be defined exactly on the location set")
        for v in self.f.values:
            self.field.validate(v)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def location_set(self) -> frozenset[ProjectivePoint]:
        return frozenset(self.alpha)

    def to_text(self) -> str:
        fd = self.f.as_dict()
        return (
            f"{self.field.label} {self.k}\n"
            + " ".join(str(z) for z in self.alpha)
            + "\n"
            + " ".join(str(fd[z]) for z in self.alpha)
            + "\n"
        )


def cauchy_code(spec: CauchySpec) -> LinearCode:
    F = spec.field
    fd = spec.f.as_dict()
    k = spec.k
    rows = []
    for i in range(k):
        row = []
        for z in spec.alpha:
            x, y = z.coords
            row.append(F.mul(fd[z], F.mul(F.power(x, i), F.power(y, k - 1 - i))))
        rows.append(row)
    return LinearCode.from_rows(F, rows, spec.n)


def _check_k_range(spec: CauchySpec):
    if not 2 <= spec.k <= spec.n - 2:
        raise ValueError(f"need 2 <= k <= n-2, got k={spec.k}, n={spec.n}")


# -- Gamma_{k,f} ------------------------------------------------------------------------


def _gamma_rows(F: FiniteField, k: int, f: ScalingMap) -> np.ndarray:
    G = _pgl2(F)
    rows = _stabilizer_rows(F, f.domain)
    q = F.q
    t = F.tables
    fvec = np.zeros(q + 1, dtype=np.int64)
    idx = np.array(_point_indices(F, f.domain), dtype=np.int64)
    fvec[idx] = f.values
    img = G.image[rows][:, idx]
    th = G.theta[rows][:, idx]
    thp = np.ones_like(th)
    for _ in range(k - 1):
        thp = t.mul[thp, th]
    lhs = fvec[img]  # f(T z)
    rhs = t.mul[thp, fvec[idx][None, :]]  # theta^(k-1) f(z)
    lam = t.mul[lhs[:, :1], t.inv[rhs[:, :1]]]
    ok = (t.mul[lam, rhs] == lhs).all(axis=1)
    return rows[ok]


def gamma_kf(F: FiniteField, k: int, f: ScalingMap, max_q: int = DEFAULT_MAX_Q) -> list[Homography]:
    """Homographies ``T`` with ``T(L) = L`` and ``f o T`` a scalar multiple of ``theta_T**(k-1) * f``."""
    _check_q(F, max_q)
    return [Homography(F, tuple(int(v) for v in _pgl2(F).mats[r])) for r in _gamma_rows(F, k, f)]


def homography_perm(T: Homography, alpha: Sequence[ProjectivePoint]) -> Permutation:
    """Coordinate permutation ``i -> j`` where ``alpha[j] = T(alpha[i])``."""
    pos = {z: i for i, z in enumerate(alpha)}
    return Permutation(tuple(pos[T(z)] for z in alpha))


def paut_via_gamma(spec: CauchySpec, max_q: int = DEFAULT_MAX_Q) -> PermGroupSmall:
    """Permutation automorphisms of the code, computed as the image of Gamma_{k,f}."""
    _check_k_range(spec)
    _check_q(spec.field, max_q)
    F = spec.field
    G = _pgl2(F)
    rows = _gamma_rows(F, spec.k, spec.f)
    idx = np.array(_point_indices(F, spec.alpha), dtype=np.int64)
    pos = np.full(F.q + 1, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    raw = sorted({tuple(int(v) for v in pos[G.image[r][idx]]) for r in rows})
    elems = [Permutation(p) for p in raw]
    gens = [Permutation(p) for p in _generating_subset(raw)]
    return PermGroupSmall(spec.n, gens, elements=elems)


def gamma_regular_types(spec: CauchySpec, max_q: int = DEFAULT_MAX_Q) -> list[tuple[PermGroupSmall, str]]:
    """Regular subgroups of the Gamma_{k,f} image, one per isomorphism type."""
    P = paut_via_gamma(spec, max_q)
    return [(H, describe_group(H.to_table())) for H in regular_subgroups(P, spec.n, mode="isotype")]


def describe_group(T: FiniteGroupTable) -> str:
    """Name from the built-in list, or a structural description beyond it."""
    for cand in GROUPS_OF_ORDER.get(T.order, []):
        if find_isomorphism(T, group_from_spec(cand)) is not None:
            return cand
    n = T.order
    if T.is_cyclic():
        return f"C{n}"
    if T.is_abelian():
        exps = {T.element_order(a) for a in range(1, n)}
        if len(exps) == 1:
            p = exps.pop()
            return f"E{p}^{round(math.log(n, p))}"
        return f"abelian-{n}"
    return f"order-{n}"


# -- equality, relocation ----------------------------------------------------------------


def _equivalence_holds(F: FiniteField, k: int, T: Homography, f: ScalingMap, f2: ScalingMap) -> bool:
    """``f2 o T`` is a scalar multiple of ``theta_T**(k-1) * f`` on the domain of ``f``."""
    f2d = f2.as_dict()
    lam = None
    for z, fz in zip(f.domain, f.values):
        Tz = T(z)
        if Tz not in f2d:
            return False
        rhs = F.mul(F.power(theta(T, z), k - 1), fz)
        ratio = F.div(f2d[Tz], rhs)
        if lam is None:
            lam = ratio
        elif ratio != lam:
            return False
    return True


def codes_equal(spec: CauchySpec, spec2: CauchySpec) -> Homography | None:
    """Homography ``T`` with ``alpha2 = T alpha`` meeting the scaling condition, or ``None``.

    Such ``T`` exists iff the two codes are equal (for ``2 <= k <= n-2``).
    """
    _check_same(spec, spec2)
    F = spec.field
    src, dst = spec.alpha[:3], spec2.alpha[:3]
    T = solve_homography(F, src, dst)
    if any(T(a) != b for a, b in zip(spec.alpha, spec2.alpha)):
        return None
    return T if _equivalence_holds(F, spec.k, T, spec.f, spec2.f) else None


def codes_permutation_equivalent(spec: CauchySpec, spec2: CauchySpec, max_q: int = DEFAULT_MAX_Q) -> Homography | None:
    """Homography ``T`` with ``T(L) = L2`` meeting the scaling condition, or ``None``.

    Such ``T`` exists iff the codes are permutation equivalent.
    """
    _check_same(spec, spec2)
    _check_q(spec.field, max_q)
    F = spec.field
    L2 = set(spec2.alpha)
    G = _pgl2(F)
    idx = np.array(_point_indices(F, spec.alpha), dtype=np.int64)
    inL2 = np.zeros(F.q + 1, dtype=bool)
    inL2[_point_indices(F, L2)] = True
    for r in np.flatnonzero(inL2[G.image[:, idx]].all(axis=1)):
        T = Homography(F, tuple(int(v) for v in G.mats[r]))
        if _equivalence_holds(F, spec.k, T, spec.f, spec2.f):
            return T
    return None


def _check_same(spec, spec2):
    if spec.field != spec2.field or spec.k != spec2.k or spec.n != spec2.n:
        raise ValueError("specs differ in field, dimension or length")
    _check_k_range(spec)


def transport_spec(spec: CauchySpec, T: Homography) -> CauchySpec:
    """Spec with locations ``T alpha`` and scaling ``(theta_T**(k-1) f) o T^-1``: same code."""
    F = spec.field
    fd = spec.f.as_dict()
    new = {}
    for z in spec.alpha:
        new[T(z)] = F.mul(F.power(theta(T, z), spec.k - 1), fd[z])
    alpha2 = tuple(T(z) for z in spec.alpha)
    return CauchySpec(F, spec.k, alpha2, ScalingMap.from_dict(new))


def mapping_homography(F: FiniteField, L: Iterable[ProjectivePoint], L2: Iterable[ProjectivePoint]) -> Homography:
    """A homography with ``T(L) = L2`` for sets missing at most three points."""
    P = proj_line(F)
    L, L2 = set(L), set(L2)
    if len(L) != len(L2):
        raise ValueError("location sets differ in size")
    X = sorted(set(P) - L, key=ProjectivePoint.sort_key)
    X2 = sorted(set(P) - L2, key=ProjectivePoint.sort_key)
    if len(X) > 3:
        raise ValueError(f"complement has {len(X)} > 3 points")
    if L == L2:
        return Homography.identity(F)
    fill = sorted(L, key=ProjectivePoint.sort_key)[: 3 - len(X)]
    fill2 = sorted(L2, key=ProjectivePoint.sort_key)[: 3 - len(X2)]
    return solve_homography(F, X + fill, X2 + fill2)


def relocate(spec: CauchySpec, L2: Iterable[ProjectivePoint]) -> tuple[CauchySpec, Homography]:
    """An equal code with location set ``L2`` (complements of size at most 3)."""
    T = mapping_homography(spec.field, spec.alpha, L2)
    return transport_spec(spec, T), T


# -- the families f_m, f_{m,m'} ------------------------------------------------------------


def fstar(F: FiniteField) -> list[ProjectivePoint]:
    return [ProjectivePoint(x) for x in range(1, F.q)]


def fstar_powers(F: FiniteField) -> list[ProjectivePoint]:
    """``(1, xi, xi**2, ..., xi**(q-2))`` for the canonical primitive element."""
    return [ProjectivePoint(F.exp(e)) for e in range(F.q - 1)]


def f_m_map(F: FiniteField, m: int) -> ScalingMap:
    """``z -> z**m`` on the nonzero elements."""
    return ScalingMap.from_dict({z: F.power(z.x, m % (F.q - 1)) for z in fstar(F)})


def f_mm_map(F: FiniteField, m: int, m2: int) -> ScalingMap:
    """``xi**(2t+r) -> xi**(2tm + r m2)`` for ``r`` in ``{0, 1}`` (``q`` odd)."""
    if F.q % 2 == 0:
        raise ValueError("the two-parameter family needs q odd")
    d = {}
    for e in range(F.q - 1):
        t, r = divmod(e, 2)
        d[ProjectivePoint(F.exp(e))] = F.exp((2 * t * m + r * m2) % (F.q - 1))
    return ScalingMap.from_dict(d)


def em_equivalent(q: int, k: int, m: int, m2: int) -> bool:
    """Whether the codes with scaling ``z**m`` and ``z**m2`` on F* are permutation equivalent.

    The stabilizer of F* is generated by ``z -> xi z`` (theta = 1, fixes every
    ``f_m`` up to scalar) and ``z -> 1/z`` (theta(z) = z), which sends ``f_m``
    to ``f_(-m-(k-1))`` once the theta**(k-1) factor is included.
    """
    N = q - 1
    return (m2 - m) % N == 0 or (m2 + m + k - 1) % N == 0


# -- length-specific classifications ---------------------------------------------------------


@dataclass
class CauchyClassification:
    n: int
    q: int
    k: int
    is_left_group_code: bool
    group_types: list[str]
    details: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "k": self.k,
            "is_left_group_code": self.is_left_group_code,
            "group_types": list(self.group_types),
            "details": dict(self.details),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [
            f"length {self.n}, dimension {self.k}, q = {self.q}",
            f"left group code: {'yes' if self.is_left_group_code else 'no'}"
            + (f" ({', '.join(self.group_types)})" if self.group_types else ""),
        ]
        lines.extend(f"  {k}: {v}" for k, v in self.details.items())
        lines.extend(f"note: {s}" for s in self.notes)
        return "\n".join(lines)


def _elementary_name(F: FiniteField) -> str:
    return f"E{F.p}^{F.m}" if F.m > 1 else f"C{F.p}"


def classify_length_q(spec: CauchySpec) -> CauchyClassification:
    """Length ``q``: a left group code iff the scaling map becomes constant on F
    after relocation; the only possible group is elementary abelian of order ``q``."""
    F = spec.field
    if spec.n != F.q:
        raise ValueError(f"length must be q = {F.q}, got {spec.n}")
    if not 2 <= spec.k <= F.q - 2:
        raise ValueError(f"need 2 <= k <= q-2, got k={spec.k}")
    spec2, T = relocate(spec, [ProjectivePoint(x) for x in range(F.q)])
    const = spec2.f.is_constant()
    return CauchyClassification(
        spec.n,
        F.q,
        spec.k,
        const,
        [_elementary_name(F)] if const else [],
        {"relocation": str(T), "relocated_scaling_constant": const},
    )


def _normalized_on_fstar(spec: CauchySpec) -> tuple[dict, Homography]:
    F = spec.field
    spec2, T = relocate(spec, fstar(F))
    g = spec2.f.as_dict()
    s = F.inv(g[ProjectivePoint(1)])
    return {z: F.mul(s, v) for z, v in g.items()}, T


def classify_length_qm1(spec: CauchySpec) -> CauchyClassification:
    """Length ``q-1``: cyclic iff the normalized scaling map on F* is ``z**m``;
    dihedral iff ``q`` is odd and it is ``f_{m,m'}`` with
    ``4m + 2(k-1) = 2m' + k - 1 = 0 (mod q-1)``."""
    F = spec.field
    q = F.q
    if spec.n != q - 1:
        raise ValueError(f"length must be q-1 = {q - 1}, got {spec.n}")
    if not 2 <= spec.k <= q - 3:
        raise ValueError(f"need 2 <= k <= q-3, got k={spec.k}")
    k = spec.k
    g, T = _normalized_on_fstar(spec)
    xi = F.primitive_rep
    m = F.log(g[ProjectivePoint(xi)])
    cyclic = g == f_m_map(F, m).as_dict()
    dihedral = False
    two_m = m2 = None
    if q % 2:
        m2 = F.log(g[ProjectivePoint(xi)])
        two_m = F.log(g[ProjectivePoint(F.power(xi, 2))])
        if two_m % 2 == 0:
            mm = two_m // 2
            if (
                g == f_mm_map(F, mm, m2).as_dict()
                and (4 * mm + 2 * (k - 1)) % (q - 1) == 0
                and (2 * m2 + k - 1) % (q - 1) == 0
            ):
                dihedral = True
    types = []
    if cyclic:
        types.append(f"C{q - 1}")
    if dihedral:
        types.append(describe_group(group_from_spec(f"D{q - 1}")) if q - 1 <= 15 else f"D{q - 1}")
    details = {
        "relocation": str(T),
        "cyclic": cyclic,
        "m": m if cyclic else None,
        "dihedral": dihedral,
        "2m": two_m if dihedral else None,
        "m_prime": m2 if dihedral else None,
    }
    notes = ["scaling map normalized to take the value 1 at 1"]
    return CauchyClassification(spec.n, q, k, cyclic or dihedral, types, details, notes)


def dihedral_family(F: FiniteField, k: int) -> list[CauchySpec]:
    """The length ``q-1`` codes on F* (in power order) with dihedral structure.

    For ``q = 1 (mod 4)``: ``f_{(1-k)/2}``, ``f_{(q-k)/2}`` and the two
    non-cyclic ``f_{m,m'}`` with ``m = (1+q-2k)/4`` and ``m'`` in
    ``{(1-k)/2, (q-k)/2}``.  For ``q = 3 (mod 4)`` only the first two.
    """
    q = F.q
    if q % 2 == 0 or k % 2 == 0 or not 2 <= k <= q - 3:
        raise ValueError("need q odd, k odd and 2 <= k <= q-3")
    a = ((1 - k) // 2) % (q - 1)
    b = ((q - k) // 2) % (q - 1)
    alpha = tuple(fstar_powers(F))
    maps = [f_m_map(F, a), f_m_map(F, b)]
    if q % 4 == 1:
        c = ((1 + q - 2 * k) // 4) % (q - 1)
        maps += [f_mm_map(F, c, a), f_mm_map(F, c, b)]
    return [CauchySpec(F, k, alpha, f) for f in maps]


@dataclass
class LengthQm2Report:
    q: int
    k: int
    divides_six: bool
    max_stabilizer_order: int | None
    witness: CauchySpec | None = None
    witness_type: str | None = None
    constant_scaling_works: bool | None = None
    is_left_group_code_possible: bool = False
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "divides_six": self.divides_six,
            "max_stabilizer_order": self.max_stabilizer_order,
            "witness": self.witness.to_text() if self.witness else None,
            "witness_type": self.witness_type,
            "constant_scaling_works": self.constant_scaling_works,
            "is_left_group_code_possible": self.is_left_group_code_possible,
            "notes": list(self.notes),
        }


def _sl2_lift(T: Homography) -> tuple:
    """A determinant-one representative (exists when the determinant is a square)."""
    F = T.field
    a, b, c, d = T.mat
    det = F.sub(F.mul(a, d), F.mul(b, c))
    for s in range(1, F.q):
        if F.mul(s, s) == det:
            si = F.inv(s)
            return tuple(F.mul(si, v) for v in T.mat)
    return None


def cocycle_scaling(F: FiniteField, k: int, L: Sequence[ProjectivePoint], group: Sequence[Homography]) -> ScalingMap | None:
    """A scaling map on ``L`` fixed (up to scalars) by a regular group of homographies.

    With determinant-one representatives forming a group, ``f(T z0) = theta_T(z0)**(k-1)``
    satisfies ``f o S = theta_S**(k-1) f`` for all ``S`` in the group.
    """
    z0 = min(L, key=ProjectivePoint.sort_key)
    d = {}
    for T in group:
        lift = _sl2_lift(T)
        if lift is None:
            return None
        d[T(z0)] = F.power(theta(lift, z0, F), k - 1)
    if set(d) != set(L):
        return None
    return ScalingMap.from_dict(d)


def length_qm2_check(F: FiniteField, k: int, max_q: int = DEFAULT_MAX_Q) -> LengthQm2Report:
    """Length ``q-2``: Gamma_{k,f} permutes the 3-point complement faithfully, so a
    left group code needs ``q-2`` to divide 6, leaving ``q = 8`` with ``S3``.

    For ``q = 8`` a witness code is constructed and its regular ``S3`` checked
    through Gamma_{k,f}.
    """
    q = F.q
    n = q - 2
    if not 2 <= k <= q - 4:
        raise ValueError(f"need 2 <= k <= q-4, got k={k}")
    _check_q(F, max_q)
    P = proj_line(F)
    max_stab = 0
    witness = None
    witness_type = None
    const_ok = False
    for X in itertools.combinations(P, 3):
        L = [z for z in P if z not in X]
        stab = setwise_stabilizer(F, L, max_q)
        max_stab = max(max_stab, len(stab))
        spec1 = CauchySpec(F, k, tuple(L), ScalingMap.constant(L, 1))
        if gamma_regular_types(spec1, max_q):
            const_ok = True
        if witness is None and len(stab) == n:
            f = cocycle_scaling(F, k, L, stab)
            if f is not None:
                spec = CauchySpec(F, k, tuple(L), f)
                types = gamma_regular_types(spec, max_q)
                if types:
                    witness, witness_type = spec, types[0][1]
    rep = LengthQm2Report(q, k, 6 % n == 0, max_stab, witness, witness_type, const_ok, witness is not None)
    if witness is None:
        rep.notes.append("no location set admits a regular group of homographies with a compatible scaling map")
    if not const_ok:
        rep.notes.append("no constant scaling map gives a left group code at this length")
    return rep


@dataclass
class DivisibilityReport:
    n: int
    q: int
    is_left_group_code: bool
    group_types: list[str]
    divides_q_q_minus_1: bool
    must_be_elementary_abelian: bool
    must_be_cyclic: bool
    subfield_case: str | None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _subfield_of(F: FiniteField, L: set) -> int | None:
    """Order of a subfield ``K`` with ``L == K`` (returns ``|K|``), else ``None``."""
    for d in range(1, F.m + 1):
        if F.m % d:
            continue
        Q = F.p**d
        K = {ProjectivePoint(x) for x in range(F.q) if F.power(x, Q) == x}
        if L == K:
            return Q
    return None


def location_divisibility_check(spec: CauchySpec, max_q: int = DEFAULT_MAX_Q) -> DivisibilityReport:
    """Constant scaling: a left group code needs ``n | q(q-1)``; coprimality with
    ``q-1`` (resp. ``q``) forces elementary abelian (resp. cyclic) groups."""
    if not spec.f.is_constant():
        raise ValueError("scaling map must be constant")
    _check_k_range(spec)
    F, n, q = spec.field, spec.n, spec.q
    types = [name for _, name in gamma_regular_types(spec, max_q)]
    L = set(spec.alpha)
    sub = None
    Kq = _subfield_of(F, L)
    if Kq is not None:
        sub = f"(K,+) with |K| = {Kq}"
    else:
        Kq = _subfield_of(F, L | {ProjectivePoint(0)})
        if Kq is not None and ProjectivePoint(0) not in L:
            sub = f"(K*,.) with |K| = {Kq}"
    return DivisibilityReport(
        n,
        q,
        bool(types),
        types,
        (q * (q - 1)) % n == 0,
        math.gcd(n, q - 1) == 1,
        math.gcd(n, q) == 1,
        sub,
    )


def classify_cauchy(spec: CauchySpec, max_q: int = DEFAULT_MAX_Q) -> CauchyClassification:
    """Generic route: regular subgroups of the Gamma_{k,f} image (``2 <= k <= n-2``)."""
    types = gamma_regular_types(spec, max_q)
    names = [name for _, name in types]
    return CauchyClassification(spec.n, spec.q, spec.k, bool(names), names, {"gamma_order": len(gamma_kf(spec.field, spec.k, spec.f, max_q))})


# -- text format --------------------------------------------------------------------------------


def parse_locations(text: str, F: FiniteField) -> list[ProjectivePoint]:
    """Location keywords ``F``, ``Fstar``, ``powers``, ``P1`` or an explicit point list."""
    t = text.strip()
    key = t.lower()
    if key == "f":
        return [ProjectivePoint(x) for x in range(F.q)]
    if key in ("fstar", "f*"):
        return fstar(F)
    if key == "powers":
        return fstar_powers(F)
    if key == "p1":
        return proj_line(F)
    return [ProjectivePoint.parse(tok, F) for tok in t.replace(",", " ").split()]


def parse_scaling(text: str, F: FiniteField, alpha: Sequence[ProjectivePoint]) -> ScalingMap:
    toks = text.split()
    if not toks:
        raise ValueError("empty scaling line")
    head = toks[0].lower()
    if head == "const":
        if len(toks) != 2:
            raise ValueError("'const' takes one value")
        return ScalingMap.constant(alpha, F.validate(int(toks[1])))
    if head in ("fm", "fmm"):
        if any(z.x in (None, 0) for z in alpha):
            raise ValueError(f"'{head}' needs locations inside F*")
        if head == "fm":
            if len(toks) != 2:
                raise ValueError("'fm' takes one exponent")
            full = f_m_map(F, int(toks[1]))
        else:
            if len(toks) != 3:
                raise ValueError("'fmm' takes two exponents")
            full = f_mm_map(F, int(toks[1]), int(toks[2]))
        d = full.as_dict()
        return ScalingMap.from_dict({z: d[z] for z in alpha})
    vals = [F.validate(int(x)) for x in toks]
    if len(vals) != len(alpha):
        raise ValueError(f"{len(vals)} scaling values for {len(alpha)} locations")
    return ScalingMap(tuple(alpha), tuple(vals))


def build_spec(q: str | int, k: int, loc: str, scale: str) -> CauchySpec:
    F = parse_field(str(q))
    alpha = parse_locations(loc, F)
    return CauchySpec(F, int(k), tuple(alpha), parse_scaling(scale, F, alpha))


def parse_spec(text: str) -> CauchySpec:
    """``"q k"``, then a location line, then a scaling line; ``#`` starts a comment line."""
    lines = [(no, s.strip()) for no, s in enumerate(text.splitlines(), 1) if s.strip() and not s.strip().startswith("#")]
    if len(lines) != 3:
        raise ParseError(f"expected 3 lines (header, locations, scaling), found {len(lines)}", lines[-1][0] if lines else 1)
    (n1, head), (n2, loc), (n3, scale) = lines
    parts = head.split()
    if len(parts) != 2:
        raise ParseError(f"header must be 'q k', got {head!r}", n1)
    try:
        F = parse_field(parts[0])
        k = int(parts[1])
    except ValueError as e:
        raise ParseError(f"bad header: {e}", n1) from None
    try:
        alpha = parse_locations(loc, F)
    except ValueError as e:
        raise ParseError(f"bad location: {e}", n2) from None
    try:
        f = parse_scaling(scale, F, alpha)
    except ValueError as e:
        raise ParseError(f"bad scaling: {e}", n3) from None
    try:
        return CauchySpec(F, k, tuple(alpha), f)
    except ValueError as e:
        raise ParseError(str(e), n2) from None
