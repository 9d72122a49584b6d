"""Abstract finite groups as Cayley tables.

Labels run over ``0 .. n-1`` with ``0`` the identity.  Tables built from a
spec string are labelled breadth-first from the identity, multiplying on the
right by the construction's generators in order; a cyclic group ``"C<n>"``
therefore has label ``i`` equal to ``g**i``.

Spec mini-language::

    C<n>            cyclic of order n
    D<n>            dihedral of order n (n even)
    E<p>^<m>        elementary abelian p-group of order p^m
    S<k>, A<k>      symmetric / alternating group on k letters
    Q<n>            dicyclic group of order n (n divisible by 4; Q8 quaternion)
    A:<d1>x<d2>...  abelian group Z/d1 x Z/d2 x ...
    MC:<n>,<m>,<r>  split metacyclic <a, b | a^n = b^m = 1, b a b^-1 = a^r>
    G X H, G × H    direct product
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import CapExceeded, ParseError

ISO_BOUND = 64


@dataclass(eq=False)
class FiniteGroupTable:
    table: np.ndarray
    name: str = ""
    generators: tuple[int, ...] = ()
    # optional concrete objects behind the labels (e.g. permutations)
    element_objects: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        self.table.setflags(write=False)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ValueError("Cayley table must be square")
        self._rows = self.table.tolist()
        if n and (self._rows[0] != list(range(n)) or [r[0] for r in self._rows] != list(range(n))):
            raise ValueError("label 0 must be the identity")
        self._inv = [row.index(0) for row in self._rows]
        if not self.generators:
            self.generators = tuple(self.small_generating_set())

    @property
    def order(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroupTable({self.name or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, e: int) -> int:
        x = 0
        base = a if e >= 0 else self._inv[a]
        for _ in range(abs(e)):
            x = self._rows[x][base]
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self._rows[x][a]
            k += 1
        return k

    def verify_axioms(self) -> bool:
        n = self.order
        rows = self._rows
        if any(sorted(r) != list(range(n)) for r in rows):
            return False
        if any(sorted(rows[i][j] for i in range(n)) != list(range(n)) for j in range(n)):
            return False
        return all(rows[rows[a][b]][c] == rows[a][rows[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in range(self.order))

    def center(self) -> list[int]:
        return [a for a in range(self.order) if all(self._rows[a][b] == self._rows[b][a] for b in range(self.order))]

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self._rows[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def small_generating_set(self) -> list[int]:
        elems = sorted(range(1, self.order), key=lambda a: (-self.element_order(a), a))
        gens: list[int] = []
        cur = frozenset([0])
        for a in elems:
            if len(cur) == self.order:
                break
            if a not in cur:
                gens.append(a)
                cur = self.generated(gens)
        return gens

    def conjugacy_classes(self) -> list[frozenset[int]]:
        seen = set()
        out = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = frozenset(self._rows[self._rows[g][a]][self._inv[g]] for g in range(self.order))
            seen |= cls
            out.append(cls)
        return out

    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups, found by joining cyclic subgroups until stable."""
        cyclic = {self.generated([a]) for a in range(self.order)}
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            nxt = []
            for H in frontier:
                for Z in cyclic:
                    if Z <= H:
                        continue
                    J = self.generated(sorted(H | Z))
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_normal(self, N: frozenset[int]) -> bool:
        return all(self._rows[self._rows[g][x]][self._inv[g]] in N for g in self.generators for x in N)

    def normal_subgroups(self) -> list[frozenset[int]]:
        return [N for N in self.subgroups() if self.is_normal(N)]

    def quotient_is_cyclic(self, N: frozenset[int]) -> bool:
        h = self.order // len(N)
        for g in range(self.order):
            x, k = g, 1
            while x not in N:
                x = self._rows[x][g]
                k += 1
            if k == h:
                return True
        return False

    def invariants(self) -> tuple:
        orders = sorted(self.element_order(a) for a in range(self.order))
        classes = sorted(len(c) for c in self.conjugacy_classes())
        return (self.order, tuple(orders), len(self.center()), tuple(classes))

    def left_regular(self, g: int) -> tuple[int, ...]:
        """Permutation ``h -> g h`` of labels."""
        return tuple(self._rows[g])

    def right_regular(self, g: int) -> tuple[int, ...]:
        """Permutation ``h -> h g`` of labels."""
        return tuple(row[g] for row in self._rows)


def build_table(identity: Hashable, gens: Sequence[Hashable], mul: Callable, name: str = "", cap: int = 10_000):
    """Cayley table of ``<gens>`` labelled breadth-first from ``identity``."""
    elems = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = mul(x, g)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise CapExceeded(f"group exceeds {cap} elements")
        i += 1
    table = np.array([[index[mul(a, b)] for b in elems] for a in elems], dtype=np.int64)
    gen_labels = tuple(index[g] for g in gens if index[g] != 0)
    return FiniteGroupTable(table, name=name, generators=gen_labels or (), element_objects=tuple(elems))


def table_from_perm_group(H) -> FiniteGroupTable:
    """Cayley table of a ``PermGroupSmall``; labels follow its sorted element list."""
    elems = list(H.elements)
    index = {e.images: i for i, e in enumerate(elems)}
    raw = [e.images for e in elems]
    table = np.array([[index[tuple([a[x] for x in b])] for b in raw] for a in raw], dtype=np.int64)
    gens = tuple(index[g.images] for g in H.generators)
    return FiniteGroupTable(table, name="", generators=gens, element_objects=tuple(elems))


# -- spec mini-language ------------------------------------------------------


def _cyclic(n: int) -> FiniteGroupTable:
    return build_table(0, [1 % n] if n > 1 else [], lambda a, b: (a + b) % n, f"C{n}")


def _abelian(ds: Sequence[int], name: str) -> FiniteGroupTable:
    ds = tuple(ds)
    ident = tuple(0 for _ in ds)
    gens = [tuple(1 if j == i else 0 for j in range(len(ds))) for i, d in enumerate(ds) if d > 1]
    return build_table(ident, gens, lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, ds)), name)


def _metacyclic(n: int, m: int, r: int, name: str) -> FiniteGroupTable:
    if n < 1 or m < 1:
        raise ParseError(f"bad metacyclic parameters {n},{m},{r}")
    if pow(r, m, n) != 1 % n:
        raise ParseError(f"r^m must be 1 mod n for MC:{n},{m},{r}")
    rp = [pow(r, j, n) for j in range(m)]

    def mul(x, y):
        return ((x[0] + rp[x[1]] * y[0]) % n, (x[1] + y[1]) % m)

    gens = [g for g, o in (((1 % n, 0), n), ((0, 1 % m), m)) if o > 1]
    return build_table((0, 0), gens, mul, name)


def _dicyclic(n: int, name: str) -> FiniteGroupTable:
    if n % 4 or n < 4:
        raise ParseError(f"dicyclic order must be a positive multiple of 4, got {n}")
    h = n // 2  # order of a
    half = h // 2

    def mul(x, y):
        i, j = x
        k, l = y
        k2 = k if j == 0 else -k
        if j == 1 and l == 1:
            return ((i + k2 + half) % h, 0)
        return ((i + k2) % h, (j + l) % 2)

    return build_table((0, 0), [(1, 0), (0, 1)], mul, name)


def _symmetric(k: int, alternating: bool, name: str) -> FiniteGroupTable:
    ident = tuple(range(k))

    def cyc(*pts):
        img = list(range(k))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
        return tuple(img)

    if alternating:
        gens = [cyc(0, 1, i) for i in range(2, k)]
    else:
        gens = [cyc(0, 1), cyc(*range(k))] if k >= 2 else []
        gens = [g for g in gens if g != ident]
    return build_table(ident, gens, lambda a, b: tuple(a[x] for x in b), name)


def _direct_product(tabs: Sequence[FiniteGroupTable], name: str) -> FiniteGroupTable:
    rows = [t._rows for t in tabs]
    ident = tuple(0 for _ in tabs)
    gens = []
    for i, t in enumerate(tabs):
        for g in t.generators:
            gens.append(tuple(g if j == i else 0 for j in range(len(tabs))))
    return build_table(ident, gens, lambda a, b: tuple(r[x][y] for r, x, y in zip(rows, a, b)), name)


def _parse_factor(s: str) -> FiniteGroupTable:
    if m := re.fullmatch(r"C(\d+)", s):
        n = int(m.group(1))
        if n < 1:
            raise ParseError(f"bad cyclic order in {s!r}")
        return _cyclic(n)
    if m := re.fullmatch(r"D(\d+)", s):
        n = int(m.group(1))
        if n < 2 or n % 2:
            raise ParseError(f"dihedral order must be even, got {s!r}")
        t = _metacyclic(n // 2, 2, -1 % (n // 2) if n > 2 else 0, s)
        return t
    if m := re.fullmatch(r"E(\d+)\^(\d+)", s):
        p, e = int(m.group(1)), int(m.group(2))
        from .gf import is_prime

        if not is_prime(p) or e < 1:
            raise ParseError(f"bad elementary abelian spec {s!r}")
        return _abelian([p] * e, s)
    if m := re.fullmatch(r"S(\d+)", s):
        return _symmetric(int(m.group(1)), False, s)
    if m := re.fullmatch(r"A(\d+)", s):
        return _symmetric(int(m.group(1)), True, s)
    if m := re.fullmatch(r"Q(\d+)", s):
        return _dicyclic(int(m.group(1)), s)
    if m := re.fullmatch(r"A:(\d+(?:x\d+)*)", s):
        ds = [int(d) for d in m.group(1).split("x")]
        if any(d < 1 for d in ds):
            raise ParseError(f"bad abelian spec {s!r}")
        return _abelian(ds, s)
    if m := re.fullmatch(r"MC:(\d+),(\d+),(-?\d+)", s):
        n, mm, r = (int(x) for x in m.groups())
        return _metacyclic(n, mm, r % n if n else 0, s)
    raise ParseError(f"unrecognised group spec {s!r}")


def group_from_spec(spec: str) -> FiniteGroupTable:
    spec = spec.strip()
    parts = [p.strip() for p in re.split(r"\s*(?:×|X)\s*", spec)]
    if not all(parts):
        raise ParseError(f"malformed group spec {spec!r}")
    tabs = [_parse_factor(p) for p in parts]
    if len(tabs) == 1:
        t = tabs[0]
        t.name = spec
        return t
    return _direct_product(tabs, spec)


# one representative per isomorphism type, orders 1..15
GROUPS_OF_ORDER = {
    1: ["C1"],
    2: ["C2"],
    3: ["C3"],
    4: ["C4", "E2^2"],
    5: ["C5"],
    6: ["C6", "S3"],
    7: ["C7"],
    8: ["C8", "A:4x2", "E2^3", "D8", "Q8"],
    9: ["C9", "E3^2"],
    10: ["C10", "D10"],
    11: ["C11"],
    12: ["C12", "A:6x2", "A4", "D12", "Q12"],
    13: ["C13"],
    14: ["C14", "D14"],
    15: ["C15"],
}


def groups_of_order(n: int) -> list[FiniteGroupTable]:
    if n not in GROUPS_OF_ORDER:
        raise CapExceeded(f"no built-in list of groups of order {n}")
    return [group_from_spec(s) for s in GROUPS_OF_ORDER[n]]


def find_isomorphism(G1: FiniteGroupTable, G2: FiniteGroupTable) -> list[int] | None:
    """Return ``iso`` with ``iso[a]`` the image of label ``a``, or ``None``.

    Backtracks over images of a small generating set of ``G1``, restricted to
    elements of equal order and conjugacy-class size, extending the partial
    map along right multiplication by generators.
    """
    if G1.order != G2.order:
        return None
    if G1.order > ISO_BOUND:
        raise CapExceeded(f"isomorphism test bound {ISO_BOUND} exceeded")
    if G1.invariants() != G2.invariants():
        return None
    n = G1.order
    gens = G1.small_generating_set()
    cls2 = {}
    for c in G2.conjugacy_classes():
        for a in c:
            cls2[a] = len(c)
    cls1 = {}
    for c in G1.conjugacy_classes():
        for a in c:
            cls1[a] = len(c)
    cands = [
        [b for b in range(n) if G2.element_order(b) == G1.element_order(g) and cls2[b] == cls1[g]] for g in gens
    ]
    r1, r2 = G1._rows, G2._rows

    def extend(imgs):
        used = list(gens[: len(imgs)])
        mp = {0: 0}
        hit = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                fx = mp[x]
                for g, ig in zip(used, imgs):
                    y = r1[x][g]
                    fy = r2[fx][ig]
                    if y in mp:
                        if mp[y] != fy:
                            return None
                    else:
                        if fy in hit:
                            return None
                        mp[y] = fy
                        hit.add(fy)
                        nxt.append(y)
            frontier = nxt
        return mp

    def rec(imgs):
        mp = extend(imgs)
        if mp is None:
            return None
        if len(imgs) == len(gens):
            return mp if len(mp) == n else None
        for b in cands[len(imgs)]:
            res = rec(imgs + [b])
            if res is not None:
                return res
        return None

    mp = rec([])
    if mp is None:
        return None
    return [mp[a] for a in range(n)]


def iso_type_name(G: FiniteGroupTable) -> str:
    """Name from the built-in list matching ``G``, else ``"order-<n>"``."""
    for cand in GROUPS_OF_ORDER.get(G.order, []):
        if find_isomorphism(G, group_from_spec(cand)) is not None:
            return cand
    return f"order-{G.order}"
