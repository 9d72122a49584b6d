"""Group algebras F[G], their ideals, and the transport between F^n and F[G].

An ``IndexBijection`` sends coordinate ``i`` of F^n to the group label
``map[i]``; vectors move to F[G] by ``phi(x)[map[i]] = x[i]``.  Left and right
multiplication by a group element permute group labels, so ideal tests reduce
to checking that the transported coordinate permutations fix the code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded
from .gf import FiniteField
from .groups import FiniteGroupTable
from .lincode import LinearCode, field_rref
from .perm import Permutation, PermGroupSmall

IDEAL_GROUP_BOUND = 64
DEFAULT_SUBSPACE_CAP = 1_000_000
DEFAULT_ORBIT_CAP = 1 << 21


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    group: FiniteGroupTable
    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(self.field.validate(x) for x in self.coeffs)
        if len(c) != self.group.order:
            raise ValueError(f"{len(c)} coefficients for a group of order {self.group.order}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, group: FiniteGroupTable, field: FiniteField, g: int, c: int = 1) -> GroupAlgebraElement:
        coeffs = [0] * group.order
        coeffs[g] = c
        return cls(group, field, coeffs)

    @classmethod
    def zero(cls, group, field) -> GroupAlgebraElement:
        return cls(group, field, (0,) * group.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group is other.group and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*g{g}" for g, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    def _same(self, other: GroupAlgebraElement):
        if self.group is not other.group or self.field != other.field:
            raise ValueError("operands live in different group algebras")

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._same(other)
        F = self.field
        return GroupAlgebraElement(self.group, F, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: int) -> GroupAlgebraElement:
        F = self.field
        return GroupAlgebraElement(self.group, F, [F.mul(c, a) for a in self.coeffs])

    def __mul__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._same(other)
        F, G = self.field, self.group
        out = [0] * G.order
        for g, a in enumerate(self.coeffs):
            if not a:
                continue
            for h, b in enumerate(other.coeffs):
                if b:
                    gh = G.mul(g, h)
                    out[gh] = F.add(out[gh], F.mul(a, b))
        return GroupAlgebraElement(G, F, out)


@dataclass(frozen=True)
class IndexBijection:
    n: int
    map: tuple[int, ...]
    group: FiniteGroupTable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if sorted(m) != list(range(self.n)):
            raise ValueError("not a bijection onto the group labels")
        object.__setattr__(self, "map", m)

    @classmethod
    def identity(cls, n: int, group: FiniteGroupTable | None = None) -> IndexBijection:
        return cls(n, tuple(range(n)), group)

    @property
    def inverse_map(self) -> tuple[int, ...]:
        out = [0] * self.n
        for i, g in enumerate(self.map):
            out[g] = i
        return tuple(out)

    def to_algebra(self, x: Sequence[int], group: FiniteGroupTable, F: FiniteField) -> GroupAlgebraElement:
        c = [0] * self.n
        for i, v in enumerate(x):
            c[self.map[i]] = v
        return GroupAlgebraElement(group, F, c)

    def from_algebra(self, a: GroupAlgebraElement) -> list[int]:
        return [a.coeffs[self.map[i]] for i in range(self.n)]

    def transport(self, label_perm: Sequence[int]) -> Permutation:
        """Coordinate permutation induced by a permutation of group labels."""
        inv = self.inverse_map
        return Permutation(tuple(inv[label_perm[self.map[i]]] for i in range(self.n)))


def regular_subgroup_phi(H: PermGroupSmall, i0: int = 0) -> IndexBijection:
    """Coordinate ``g(i0)`` goes to the label of ``g``, for each ``g`` in ``H``."""
    if not H.is_regular():
        raise ValueError("group is not regular")
    tab = H.to_table()
    m = [0] * H.n
    for label, g in enumerate(tab.element_objects):
        m[g.images[i0]] = label
    return IndexBijection(H.n, tuple(m), tab)


def left_mult_perm(G: FiniteGroupTable, g: int) -> tuple[int, ...]:
    return G.left_regular(g)


def right_mult_perm(G: FiniteGroupTable, g: int) -> tuple[int, ...]:
    return G.right_regular(g)


def _check_sizes(C: LinearCode, G: FiniteGroupTable, phi: IndexBijection):
    if not C.n == G.order == phi.n:
        raise ValueError(f"sizes differ: code length {C.n}, group order {G.order}, bijection size {phi.n}")


def _fixes(C: LinearCode, p: Permutation) -> bool:
    inv = np.array(p.inverse().images, dtype=np.int64)
    return C.contains_all(C.gen[:, inv])


def is_left_ideal(C: LinearCode, G: FiniteGroupTable, phi: IndexBijection) -> bool:
    _check_sizes(C, G, phi)
    return all(_fixes(C, phi.transport(G.left_regular(g))) for g in G.generators)


def is_two_sided_ideal(C: LinearCode, G: FiniteGroupTable, phi: IndexBijection) -> bool:
    _check_sizes(C, G, phi)
    if not is_left_ideal(C, G, phi):
        return False
    return all(_fixes(C, phi.transport(G.right_regular(g))) for g in G.generators)


def _actions(G: FiniteGroupTable, sided: str) -> list[np.ndarray]:
    """Index arrays ``a`` with ``(g . x) = x[a]`` for each generator action."""
    if sided not in ("left", "two"):
        raise ValueError(f"sided must be 'left' or 'two', got {sided!r}")
    perms = [G.left_regular(g) for g in G.generators]
    if sided == "two":
        perms += [G.right_regular(g) for g in G.generators]
    out = []
    for p in perms:
        inv = [0] * len(p)
        for i, x in enumerate(p):
            inv[x] = i
        out.append(np.array(inv, dtype=np.int64))
    return out


def _ideal_closure(F: FiniteField, rows: np.ndarray, actions: list[np.ndarray]) -> np.ndarray:
    cur, piv = field_rref(F, rows)
    while True:
        if len(piv) == rows.shape[1] or len(piv) == 0:
            return cur
        stacked = np.vstack([cur] + [cur[:, a] for a in actions])
        nxt, npiv = field_rref(F, stacked)
        if len(npiv) == len(piv):
            return cur
        cur, piv = nxt, npiv


def ideal_generated(
    G: FiniteGroupTable, F: FiniteField, gens: Iterable[GroupAlgebraElement], sided: str = "left"
) -> list[GroupAlgebraElement]:
    """Canonical basis of the left (or two-sided) ideal generated by ``gens``."""
    if G.order > IDEAL_GROUP_BOUND:
        raise CapExceeded(f"group order {G.order} exceeds bound {IDEAL_GROUP_BOUND}")
    gens = list(gens)
    rows = np.array([g.coeffs for g in gens], dtype=np.int64).reshape(len(gens), G.order)
    basis = _ideal_closure(F, rows, _actions(G, sided))
    return [GroupAlgebraElement(G, F, r) for r in basis.tolist()]


def ideal_code(G: FiniteGroupTable, F: FiniteField, gens, sided: str = "left") -> LinearCode:
    """The ideal generated by ``gens`` as a code in group-label coordinates."""
    basis = ideal_generated(G, F, gens, sided)
    return LinearCode.from_rows(F, [b.coeffs for b in basis], G.order)


def _orbit_reps(G: FiniteGroupTable, F: FiniteField, sided: str, cap: int) -> np.ndarray:
    """Representatives of nonzero vectors of F[G] up to group multiplication and scalars.

    For two-sided ideals the principal ideal of ``x`` is constant on these
    orbits; for left ideals only left multiplication is used.
    """
    n, q = G.order, F.q
    total = q**n
    if total > cap:
        raise CapExceeded(f"{q}^{n} vectors exceed orbit cap {cap}")
    idx = np.arange(total, dtype=np.int64)
    digits = np.empty((total, n), dtype=np.int64)
    rest = idx.copy()
    for j in range(n):
        digits[:, j] = rest % q
        rest //= q
    weights = q ** np.arange(n, dtype=np.int64)
    images = [digits[:, a] @ weights for a in _actions(G, sided)]
    if q > 2:
        xi = F.primitive_rep
        images.append(F.tables.mul[xi][digits] @ weights)
    del digits
    lab = idx.copy()
    while True:
        new = lab.copy()
        for img in images:
            np.minimum(new, new[img], out=new)
            np.minimum.at(new, img, new.copy())
        if np.array_equal(new, lab):
            break
        lab = new
    return np.flatnonzero(lab == idx)[1:]


def _decode(index: int, n: int, q: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(index % q)
        index //= q
    return out


def _sum_closure(F: FiniteField, n: int, ideals: dict) -> dict:
    keys = list(ideals)
    seen = dict(ideals)
    frontier = keys
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(seen):
                A, B = seen[a], seen[b]
                if A.k == n or B.k == n:
                    continue
                S = LinearCode.from_rows(F, np.vstack([A.gen, B.gen]), n)
                key = S.key()
                if key not in seen:
                    seen[key] = S
                    nxt.append(key)
        frontier = nxt
    return seen


def _subspaces(F: FiniteField, n: int, cap: int):
    """All subspaces of F^n as RREF matrices, grouped by pivot profile."""
    q = F.q
    total = 0
    for k in range(n + 1):
        for piv in itertools.combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
            total += q ** len(free)
    if total > cap:
        raise CapExceeded(f"{total} subspaces of F_{q}^{n} exceed cap {cap}")
    for k in range(n + 1):
        for piv in itertools.combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
            for vals in itertools.product(range(q), repeat=len(free)):
                M = np.zeros((k, n), dtype=np.int64)
                for r, c in enumerate(piv):
                    M[r, c] = 1
                for (r, c), v in zip(free, vals):
                    M[r, c] = v
                yield M


def enumerate_ideals(
    G: FiniteGroupTable,
    F: FiniteField,
    sided: str = "left",
    method: str = "principal",
    cap: int | None = None,
) -> list[LinearCode]:
    """All left (``sided="left"``) or two-sided (``"two"``) ideals of F[G].

    ``method="principal"`` forms every principal ideal (one per orbit of
    generators) and closes under sums; ``method="subspaces"`` filters every
    subspace of F^n.  Codes are in group-label coordinates, sorted by
    dimension and then generator matrix.
    """
    n = G.order
    if n > IDEAL_GROUP_BOUND:
        raise CapExceeded(f"group order {n} exceeds bound {IDEAL_GROUP_BOUND}")
    phi = IndexBijection.identity(n, G)
    if method == "subspaces":
        test = is_left_ideal if sided == "left" else is_two_sided_ideal
        _actions(G, sided)
        out = []
        for M in _subspaces(F, n, DEFAULT_SUBSPACE_CAP if cap is None else cap):
            C = LinearCode(F, n, M, tuple(int(np.flatnonzero(r)[0]) for r in M))
            if C.k in (0, n) or test(C, G, phi):
                out.append(C)
    elif method == "principal":
        acts = _actions(G, sided)
        ideals = {}
        zero = LinearCode.zero(F, n)
        ideals[zero.key()] = zero
        for r in _orbit_reps(G, F, sided, DEFAULT_ORBIT_CAP if cap is None else cap):
            x = np.array([_decode(int(r), n, F.q)], dtype=np.int64)
            I = LinearCode.from_rows(F, _ideal_closure(F, x, acts), n)
            ideals.setdefault(I.key(), I)
        out = list(_sum_closure(F, n, ideals).values())
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(out, key=lambda C: (C.k, C.gen.tolist()))


@dataclass
class ABReport:
    group: str
    q: int
    ideals_checked: int
    violations: list[LinearCode]
    ok: bool
    route: str = "search"


def _product_set(G: FiniteGroupTable, A, B) -> set[int]:
    return {G.mul(a, b) for a in A for b in B}


def _is_abelian_subgroup(G: FiniteGroupTable, S) -> bool:
    S = set(S)
    if 0 not in S or any(G.mul(a, b) not in S for a in S for b in S):
        return False
    return all(G.mul(a, b) == G.mul(b, a) for a in S for b in S)


def ab_action(G: FiniteGroupTable, A: Iterable[int], B: Iterable[int]) -> list[Permutation]:
    """Generators of ``A x B`` acting on labels by ``g -> a g b^-1``.

    When ``A`` and ``B`` meet trivially and ``AB = G`` this action is regular,
    and it preserves every two-sided ideal of F[G].
    """
    A, B = sorted(set(A)), sorted(set(B))
    if set(A) & set(B) != {0}:
        raise ValueError("A and B must intersect trivially")
    if len(_product_set(G, A, B)) != G.order:
        raise ValueError("AB does not cover the group")
    gens = [Permutation(G.left_regular(a)) for a in A if a]
    gens += [Permutation(G.right_regular(G.inv(b))) for b in B if b]
    return gens


def abelian_factorization(G: FiniteGroupTable) -> tuple[frozenset[int], frozenset[int]]:
    """Abelian subgroups ``A``, ``B`` with ``AB = G``, meeting trivially when possible."""
    subs = [S for S in G.subgroups() if _is_abelian_subgroup(G, S)]
    subs.sort(key=lambda S: (-len(S), sorted(S)))
    pairs = [(A, B) for A in subs for B in subs if len(A) * len(B) // len(A & B) == G.order]
    pairs.sort(key=lambda p: len(p[0] & p[1]))
    for A, B in pairs:
        if len(_product_set(G, A, B)) == G.order:
            return A, B
    raise ValueError("no abelian subgroups A, B with AB = G")


def check_AB_theorem(
    G: FiniteGroupTable,
    A: Iterable[int],
    B: Iterable[int],
    F: FiniteField,
    method: str = "principal",
    route: str = "search",
) -> ABReport:
    """Check that every two-sided ideal of F[G] is an abelian group code,
    where ``G = AB`` for abelian subgroups ``A`` and ``B``.

    ``route="search"`` runs the generic abelian-group-code decision on each
    ideal (lengths up to the classification bound).  ``route="witness"``
    needs ``A`` and ``B`` to meet trivially and checks that the regular
    abelian group ``A x B`` of ``ab_action`` fixes each ideal, which is a
    certificate with no length bound.
    """
    from .classify import is_abelian_group_code

    if route not in ("search", "witness"):
        raise ValueError(f"unknown route {route!r}")
    A, B = frozenset(A), frozenset(B)
    for S, nm in ((A, "A"), (B, "B")):
        if not _is_abelian_subgroup(G, S):
            raise ValueError(f"{nm} is not an abelian subgroup")
    if len(_product_set(G, A, B)) != G.order:
        raise ValueError("AB does not cover the group")
    if route == "witness":
        gens = ab_action(G, A, B)

        def test(C):
            return all(_fixes(C, g) for g in gens)
    else:
        test = is_abelian_group_code
    ideals = enumerate_ideals(G, F, "two", method=method)
    bad = [C for C in ideals if not test(C)]
    return ABReport(G.name, F.q, len(ideals), bad, not bad, route)


def f_phi(G: FiniteGroupTable, phi: IndexBijection, g: int) -> Permutation:
    """The coordinate permutation ``e_i -> phi^-1(g phi(e_i))``."""
    return phi.transport(G.left_regular(g))


def clave_identity_holds(H: PermGroupSmall, F: FiniteField, vectors: Iterable[Sequence[int]], i0: int = 0) -> bool:
    """Check ``sigma_h(x) == phi^-1(phi(x) * f^-1(h))`` for all ``h`` in ``H``.

    ``phi`` is the bijection attached to ``H`` and base point ``i0``; ``f``
    sends a label ``g`` to ``f_phi(g)``, and ``f^-1(h)`` is the label whose
    image is ``h``.
    """
    from .perm import anti_iso_sigma, apply_to_word

    phi = regular_subgroup_phi(H, i0)
    G = phi.group
    f_inv = {f_phi(G, phi, g): g for g in range(G.order)}
    if len(f_inv) != G.order:
        return False
    vectors = [list(v) for v in vectors]
    for h in H.elements:
        if h not in f_inv:
            return False
        t = GroupAlgebraElement.basis(G, F, f_inv[h])
        s = anti_iso_sigma(H, h, i0)
        for x in vectors:
            lhs = apply_to_word(s, x)
            rhs = phi.from_algebra(phi.to_algebra(x, G, F) * t)
            if lhs != rhs:
                return False
    return True
