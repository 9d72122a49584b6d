"""Decide whether a linear code is a (left, two-sided, abelian, cyclic) group code.

A code of length ``n`` is a left group code iff its permutation automorphism
group contains a regular subgroup, and a two-sided group code iff some such
subgroup has its full centralizer in the automorphism group too.

Two routes are provided.  ``regular_subgroups`` enumerates the regular
subgroups of an explicitly listed permutation group.  ``find_regular_embedding``
instead fixes an abstract group ``T`` of order ``n`` and searches for a
labelling ``psi: T -> coordinates`` under which every left multiplication
(and, for the two-sided test, every right multiplication) is an automorphism;
it never lists the automorphism group, so it also works when that group is
huge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapExceeded
from .gf import FiniteField
from .groupalg import IndexBijection
from .groups import FiniteGroupTable, find_isomorphism, group_from_spec, groups_of_order, iso_type_name
from .lincode import LinearCode, field_rank, paut
from .perm import DEFAULT_GROUP_CAP, Permutation, PermGroupSmall, _compose, _inverse, _is_fpf

DEFAULT_WITNESS_CAP = 5_000
MAX_LENGTH = 13


# -- regular subgroups of an enumerable permutation group -------------------------


def regular_representation(T: FiniteGroupTable) -> PermGroupSmall:
    """Left regular action of ``T`` on its labels."""
    n = T.order
    elems = [Permutation(T.left_regular(g)) for g in range(n)]
    gens = [Permutation(T.left_regular(g)) for g in T.generators]
    return PermGroupSmall(n, gens, elements=elems)


def _semiregular_closure(n: int, gens: list[tuple]) -> frozenset | None:
    """``<gens>`` if it has at most ``n`` elements, all non-identity ones fixed-point-free."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    if not _is_fpf(y) or len(seen) == n:
                        return None
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _group_key(elems) -> tuple:
    return tuple(sorted(elems))


def _as_group(n: int, elems) -> PermGroupSmall:
    elems = sorted(elems)
    # a small generating set, chosen greedily in sorted order for determinism
    gens: list[tuple] = []
    span = frozenset([tuple(range(n))])
    for e in elems:
        if e not in span:
            gens.append(e)
            span = _semiregular_closure(n, gens) or frozenset(_closure(n, gens))
        if len(span) == len(elems):
            break
    return PermGroupSmall(n, [Permutation(g) for g in gens], elements=[Permutation(e) for e in elems])


def _closure(n, gens):
    from .perm import _closure_raw

    return _closure_raw(n, gens, DEFAULT_GROUP_CAP)


def _conjugates_in_S_n(H: PermGroupSmall, cap: int) -> list[frozenset]:
    import itertools

    n = H.n
    if math.factorial(n) > cap:
        raise CapExceeded(f"{n}! conjugating elements exceed cap {cap}")
    raw = H.raw
    found = set()
    for p in itertools.permutations(range(n)):
        pi = _inverse(p)
        found.add(frozenset(_compose(_compose(p, h), pi) for h in raw))
    return sorted(found, key=_group_key)


def regular_subgroups(
    P: PermGroupSmall, n: int | None = None, mode: str = "conjugacy", cap: int = DEFAULT_GROUP_CAP
) -> list[PermGroupSmall]:
    """Regular subgroups of ``P``.

    ``mode`` is ``"all"`` (every subgroup), ``"conjugacy"`` (one per
    conjugacy class under ``P``) or ``"isotype"`` (one per isomorphism type).
    When ``P`` is the full symmetric group the representatives come from the
    built-in list of groups of order ``n``; regular copies of one abstract
    group are all conjugate in the symmetric group.
    """
    if mode not in ("all", "conjugacy", "isotype"):
        raise ValueError(f"unknown mode {mode!r}")
    n = P.n if n is None else n
    if n != P.n:
        raise ValueError(f"regular subgroups of a degree-{P.n} group have order {P.n}, not {n}")
    if n == 1:
        return [PermGroupSmall(1, [], elements=[Permutation((0,))])]
    if P.is_full_symmetric():
        if n > MAX_LENGTH:
            raise CapExceeded(f"degree {n} exceeds bound {MAX_LENGTH}")
        reps = [regular_representation(T) for T in groups_of_order(n)]
        if mode != "all":
            return reps
        out = []
        for H in reps:
            out.extend(_conjugates_in_S_n(H, cap))
        return [_as_group(n, e) for e in sorted(out, key=_group_key)]
    if not P.is_transitive():
        return []
    if P.order > cap:
        raise CapExceeded(f"group of order {P.order} exceeds cap {cap}")
    buckets: list[list[tuple]] = [[] for _ in range(n)]
    for e in P.raw:
        if _is_fpf(e) and n % _order(e) == 0:
            buckets[e[0]].append(e)
    found: list[frozenset] = []

    # Each regular R is reached along one path: at every step the element of R
    # moving 0 to the least point outside the current orbit is adjoined.
    def rec(gens: list[tuple], S: frozenset):
        if len(S) == n:
            found.append(S)
            return
        covered = {s[0] for s in S}
        x = min(i for i in range(n) if i not in covered)
        for g in buckets[x]:
            S2 = _semiregular_closure(n, gens + [g])
            if S2 is not None and n % len(S2) == 0:
                rec(gens + [g], S2)

    rec([], frozenset([tuple(range(n))]))
    found = sorted(set(found), key=_group_key)
    if mode == "conjugacy":
        found = _conjugacy_reps(found, P.raw)
    elif mode == "isotype":
        found = _isotype_reps(n, found)
    return [_as_group(n, e) for e in found]


def _order(e: tuple) -> int:
    return Permutation(e).order()


def _conjugacy_reps(found: list[frozenset], conj: list[tuple]) -> list[frozenset]:
    marked = set()
    reps = []
    for S in found:
        if S in marked:
            continue
        reps.append(S)
        for p in conj:
            pi = _inverse(p)
            marked.add(frozenset(_compose(_compose(p, h), pi) for h in S))
    return reps


def _isotype_reps(n: int, found: list[frozenset]) -> list[frozenset]:
    tables: list[FiniteGroupTable] = []
    reps = []
    for S in found:
        T = _as_group(n, S).to_table()
        if all(find_isomorphism(T, U) is None for U in tables):
            tables.append(T)
            reps.append(S)
    return reps


# -- labelling search -----------------------------------------------------------------


class _Embedder:
    """Searches labellings of an abstract group onto the coordinates of a code."""

    def __init__(self, C: LinearCode, P: PermGroupSmall | None = None, cap: int = DEFAULT_GROUP_CAP):
        self.C = C
        self.n = C.n
        D = C if C.k <= C.n - C.k else C.dual()
        self.trivial = D.k == 0
        self.G = D.gen
        self.F = C.field
        # With PAut listed, each generator action keeps the automorphisms that
        # agree with the partial labelling; this is exact, so no rank test.
        self.elems = None
        if P is not None and not self.trivial and not P.is_full_symmetric() and P.order <= cap:
            self.elems = np.array(P.raw, dtype=np.int64)

    def _consistent(self, src: list[int], img: list[int]) -> bool:
        S = self.G[:, src]
        I = self.G[:, img]
        r = field_rank(self.F, S)
        return r == field_rank(self.F, I) == field_rank(self.F, np.vstack([S, I]))

    def search(self, T: FiniteGroupTable, two_sided: bool = False) -> list[int] | None:
        """``psi`` with ``psi[label] = coordinate`` and ``psi[0] == 0``, or ``None``."""
        n = self.n
        if T.order != n:
            raise ValueError(f"group order {T.order} differs from code length {n}")
        order = _bfs_order(T)
        if self.trivial:
            psi = [0] * n
            for i, lab in enumerate(order):
                psi[lab] = i
            return psi
        actions = [T.left_regular(g) for g in T.generators]
        if two_sided:
            actions += [T.right_regular(g) for g in T.generators]
        pos = [0] * n
        for i, lab in enumerate(order):
            pos[lab] = i
        # pairs (action, source label) whose both ends are known after step d
        due: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for a, perm in enumerate(actions):
            for s in range(n):
                due[max(pos[s], pos[perm[s]])].append((a, s))
        src: list[list[int]] = [[] for _ in actions]
        img: list[list[int]] = [[] for _ in actions]
        psi = [-1] * n
        used = [False] * n
        E = self.elems

        def narrow(cand, pairs):
            out = list(cand)
            for a, s in pairs:
                idx = out[a]
                idx = idx[E[idx, psi[s]] == psi[actions[a][s]]]
                if not len(idx):
                    return None
                out[a] = idx
            return out

        def rec(d: int, cand) -> bool:
            if d == n:
                return True
            lab = order[d]
            cands = [0] if d == 0 else [c for c in range(n) if not used[c]]
            for c in cands:
                psi[lab] = c
                used[c] = True
                if E is not None:
                    nxt = narrow(cand, due[d])
                    if nxt is not None and rec(d + 1, nxt):
                        return True
                else:
                    touched = set()
                    for a, s in due[d]:
                        src[a].append(psi[s])
                        img[a].append(psi[actions[a][s]])
                        touched.add(a)
                    if all(self._consistent(src[a], img[a]) for a in touched) and rec(d + 1, None):
                        return True
                    for a, s in due[d]:
                        src[a].pop()
                        img[a].pop()
                used[c] = False
                psi[lab] = -1
            return False

        start = [np.arange(len(E))] * len(actions) if E is not None else None
        return list(psi) if rec(0, start) else None


def _bfs_order(T: FiniteGroupTable) -> list[int]:
    order = [0]
    seen = {0}
    for x in order:
        for g in T.generators:
            y = T.mul(g, x)
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def _witness_from_psi(T: FiniteGroupTable, psi: Sequence[int]) -> tuple[PermGroupSmall, IndexBijection]:
    n = T.order
    gens = []
    for t in T.generators:
        img = [0] * n
        for s in range(n):
            img[psi[s]] = psi[T.mul(t, s)]
        gens.append(Permutation(tuple(img)))
    elems = []
    for t in range(n):
        img = [0] * n
        for s in range(n):
            img[psi[s]] = psi[T.mul(t, s)]
        elems.append(Permutation(tuple(img)))
    inv = [0] * n
    for lab, c in enumerate(psi):
        inv[c] = lab
    return PermGroupSmall(n, gens, elements=elems), IndexBijection(n, tuple(inv), T)


def find_regular_embedding(C: LinearCode, T: FiniteGroupTable, two_sided: bool = False):
    """Regular copy of ``T`` in PAut(C) (with centralizer too if ``two_sided``).

    Returns ``(H, phi)`` where ``phi`` sends coordinates to labels of ``T`` so
    that ``C`` becomes a left (two-sided) ideal, or ``None``.
    """
    if C.n > MAX_LENGTH:
        raise CapExceeded(f"length {C.n} exceeds bound {MAX_LENGTH}")
    P = paut(C, max_n=MAX_LENGTH)
    if not P.is_transitive():
        return None
    psi = _Embedder(C, P).search(T, two_sided)
    if psi is None:
        return None
    return _witness_from_psi(T, psi)


# -- reports ----------------------------------------------------------------------------


@dataclass
class GCodeResult:
    holds: bool
    witness: PermGroupSmall | None = None
    phi: IndexBijection | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class ClassificationReport:
    n: int
    q: int
    paut_order: int
    is_left_group_code: bool
    left_witnesses: list[tuple[PermGroupSmall, str]]
    is_group_code: bool
    two_sided_witnesses: list[tuple[PermGroupSmall, str]]
    is_abelian_group_code: bool
    is_cyclic_group_code: bool
    left_types: list[str] = field(default_factory=list)
    two_sided_types: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def wit(ws):
            return [{"type": name, "generators": [str(g) for g in H.generators]} for H, name in ws]

        return {
            "n": self.n,
            "q": self.q,
            "paut_order": self.paut_order,
            "is_left_group_code": self.is_left_group_code,
            "is_group_code": self.is_group_code,
            "is_abelian_group_code": self.is_abelian_group_code,
            "is_cyclic_group_code": self.is_cyclic_group_code,
            "left_types": list(self.left_types),
            "two_sided_types": list(self.two_sided_types),
            "left_witnesses": wit(self.left_witnesses),
            "two_sided_witnesses": wit(self.two_sided_witnesses),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        def yn(b):
            return "yes" if b else "no"

        lines = [
            f"length {self.n} over GF({self.q}), |PAut| = {self.paut_order}",
            f"left group code: {yn(self.is_left_group_code)}"
            + (f" ({', '.join(self.left_types)})" if self.left_types else ""),
            f"two-sided group code: {yn(self.is_group_code)}"
            + (f" ({', '.join(self.two_sided_types)})" if self.two_sided_types else ""),
            f"abelian group code: {yn(self.is_abelian_group_code)}",
            f"cyclic group code: {yn(self.is_cyclic_group_code)}",
        ]
        for title, ws in (("left witnesses", self.left_witnesses), ("two-sided witnesses", self.two_sided_witnesses)):
            if ws:
                lines.append(f"{title}:")
                for H, name in ws:
                    lines.append(f"  {name}: <{', '.join(str(g) for g in H.generators) or '()'}>")
        lines.extend(f"note: {s}" for s in self.notes)
        return "\n".join(lines)


def _check_length(C: LinearCode):
    if C.n > MAX_LENGTH:
        raise CapExceeded(f"length {C.n} exceeds bound {MAX_LENGTH}")


def _type_verdicts(C: LinearCode, two_sided: bool = True):
    """Per isomorphism type of order n: (table, left witness, two-sided witness)."""
    P = paut(C, max_n=MAX_LENGTH)
    out = []
    transitive = P.is_transitive()
    emb = _Embedder(C, P)
    for T in groups_of_order(C.n):
        left = two = None
        if transitive:
            psi = emb.search(T, False)
            if psi is not None:
                left = _witness_from_psi(T, psi)
                if two_sided:
                    psi2 = emb.search(T, True)
                    two = _witness_from_psi(T, psi2) if psi2 is not None else None
        out.append((T, left, two))
    return P, out


def classify(C: LinearCode, witness_cap: int = DEFAULT_WITNESS_CAP) -> ClassificationReport:
    """Full report: which groups of order ``n`` make ``C`` a left / two-sided group code.

    Witness lists hold one regular subgroup per conjugacy class of PAut(C) when
    that group has at most ``witness_cap`` elements, otherwise one per
    isomorphism type.
    """
    _check_length(C)
    P, verdicts = _type_verdicts(C)
    left_types = [T.name for T, l, _ in verdicts if l is not None]
    two_types = [T.name for T, _, t in verdicts if t is not None]
    notes = []
    left_w: list[tuple[PermGroupSmall, str]] = []
    two_w: list[tuple[PermGroupSmall, str]] = []
    if P.order <= witness_cap and not P.is_full_symmetric():
        for H in regular_subgroups(P, C.n, mode="conjugacy"):
            name = iso_type_name(H.to_table())
            left_w.append((H, name))
            from .perm import centralizer_of_regular

            if all(g in P for g in centralizer_of_regular(H).generators):
                two_w.append((H, name))
    else:
        if P.is_full_symmetric():
            notes.append("PAut(C) is the full symmetric group; witnesses listed per isomorphism type")
        else:
            notes.append(f"|PAut(C)| = {P.order} exceeds {witness_cap}; witnesses listed per isomorphism type")
        left_w = [(l[0], T.name) for T, l, _ in verdicts if l is not None]
        two_w = [(t[0], T.name) for T, _, t in verdicts if t is not None]
    return ClassificationReport(
        n=C.n,
        q=C.q,
        paut_order=P.order,
        is_left_group_code=bool(left_types),
        left_witnesses=left_w,
        is_group_code=bool(two_types),
        two_sided_witnesses=two_w,
        is_abelian_group_code=any(T.is_abelian() for T, l, _ in verdicts if l is not None),
        is_cyclic_group_code=any(T.is_cyclic() for T, l, _ in verdicts if l is not None),
        left_types=left_types,
        two_sided_types=two_types,
        notes=notes,
    )


def is_left_group_code(C: LinearCode) -> ClassificationReport:
    return classify(C)


def is_group_code(C: LinearCode) -> ClassificationReport:
    return classify(C)


def _as_table(G) -> FiniteGroupTable:
    return group_from_spec(G) if isinstance(G, str) else G


def is_left_G_code(C: LinearCode, G: FiniteGroupTable | str) -> GCodeResult:
    """Left G-code test with a witness regular subgroup and coordinate bijection."""
    _check_length(C)
    G = _as_table(G)
    if G.order != C.n:
        raise ValueError(f"group order {G.order} differs from code length {C.n}")
    res = find_regular_embedding(C, G, False)
    return GCodeResult(True, *res) if res else GCodeResult(False)


def is_G_code(C: LinearCode, G: FiniteGroupTable | str) -> GCodeResult:
    """Two-sided G-code test."""
    _check_length(C)
    G = _as_table(G)
    if G.order != C.n:
        raise ValueError(f"group order {G.order} differs from code length {C.n}")
    res = find_regular_embedding(C, G, True)
    return GCodeResult(True, *res) if res else GCodeResult(False)


def is_abelian_group_code(C: LinearCode) -> bool:
    _check_length(C)
    P = paut(C, max_n=MAX_LENGTH)
    if not P.is_transitive():
        return False
    emb = _Embedder(C, P)
    return any(emb.search(T) is not None for T in groups_of_order(C.n) if T.is_abelian())


def is_cyclic_group_code(C: LinearCode) -> bool:
    _check_length(C)
    P = paut(C, max_n=MAX_LENGTH)
    if not P.is_transitive():
        return False
    return _Embedder(C, P).search(group_from_spec(f"C{C.n}")) is not None


# -- one-dimensional codes ---------------------------------------------------------------


def admissible(G: FiniteGroupTable, s: int) -> bool:
    """``G`` has a normal subgroup of order ``s`` with cyclic quotient."""
    if G.order % s:
        return False
    return any(len(N) == s and G.quotient_is_cyclic(N) for N in G.normal_subgroups())


@dataclass
class OneDimReport:
    is_left_group_code: bool
    h: int | None = None
    s: int | None = None
    u: int | None = None
    xi: int | None = None
    admissible: dict[str, bool] = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "is_left_group_code": self.is_left_group_code,
            "h": self.h,
            "s": self.s,
            "u": self.u,
            "xi": self.xi,
            "admissible": dict(self.admissible),
            "reason": self.reason,
        }

    def to_text(self) -> str:
        if not self.is_left_group_code:
            return f"left group code: no ({self.reason})"
        lines = [
            "left group code: yes",
            f"h = {self.h}, s = {self.s}, u = {self.u}, xi = {self.xi}",
        ]
        lines.extend(f"  {name}: {'admissible' if ok else 'not admissible'}" for name, ok in self.admissible.items())
        return "\n".join(lines)


def classify_one_dim(F: FiniteField, v: Sequence[int], groups: Sequence[str] | None = None) -> OneDimReport:
    """Entry-multiset test for the code spanned by one nonzero vector.

    The span of ``v`` is a left group code iff its entries are ``u * xi**j``
    (``0 <= j < h``, ``xi`` of multiplicative order ``h``), each taken ``s = n/h``
    times.  A group of order ``n`` works iff it is admissible for ``s``.
    """
    v = [F.validate(x) for x in v]
    if not any(v):
        raise ValueError("zero vector")
    n = len(v)
    if 0 in v:
        return OneDimReport(False, reason="some entry is zero")
    u = v[0]
    ui = F.inv(u)
    counts: dict[int, int] = {}
    for x in v:
        r = F.mul(ui, x)
        counts[r] = counts.get(r, 0) + 1
    W = set(counts)
    if any(F.mul(a, b) not in W for a in W for b in W):
        return OneDimReport(False, reason="entry ratios do not form a group")
    h = len(W)
    if len(set(counts.values())) != 1:
        return OneDimReport(False, reason="entries have unequal multiplicities")
    s = n // h
    xi = F.power(F.primitive_rep, (F.q - 1) // h)
    names = list(groups) if groups is not None else [T.name for T in groups_of_order(n)]
    adm = {}
    for name in names:
        T = group_from_spec(name)
        if T.order != n:
            raise ValueError(f"group {name} has order {T.order}, expected {n}")
        adm[name] = admissible(T, s)
    return OneDimReport(True, h, s, u, xi, adm)


def one_dim_cyclic_corollary_check(F: FiniteField, v: Sequence[int]) -> bool:
    """A one-dimensional left group code is always a cyclic group code."""
    rep = classify_one_dim(F, v, groups=[f"C{len(v)}"])
    if not rep.is_left_group_code:
        raise ValueError("vector does not span a left group code")
    return rep.admissible[f"C{len(v)}"]
