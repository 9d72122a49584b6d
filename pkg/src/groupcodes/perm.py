"""Permutations of {0, ..., n-1} and small, fully enumerated permutation groups.

Points are 0-based in the Python API.  Text (cycle) notation is 1-based, as in
``"(1,2,3)(4,5,6)"``; the identity prints as ``"()"``.

A permutation ``s`` acts on words by ``e_i -> e_{s(i)}``, so
``apply_to_word(s, x)[s(i)] == x[i]``.  Composition is right-to-left:
``(a * b)(i) == a(b(i))``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import CapExceeded, ParseError

DEFAULT_GROUP_CAP = 100_000


# raw tuple helpers, used by the search code to avoid object overhead
def _compose(a: tuple, b: tuple) -> tuple:
    return tuple([a[x] for x in b])


def _inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _identity(n: int) -> tuple:
    return tuple(range(n))


def _is_fpf(a: tuple) -> bool:
    return all(x != i for i, x in enumerate(a))


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {self.images!r}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 1-based cycles, e.g. ``from_cycles(6, [(1, 2, 3), (4, 5, 6)])``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = [int(c) - 1 for c in cyc]
            for c in cyc:
                if not 0 <= c < n or c in seen:
                    raise ValueError(f"bad cycle {cyc} for degree {n}")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int) -> Permutation:
        text = text.replace(" ", "")
        if text in ("", "()"):
            return cls.identity(n)
        if not re.fullmatch(r"(\(\d+(,\d+)*\))+", text):
            raise ParseError(f"bad cycle notation {text!r}")
        cycles = [tuple(int(x) for x in c.split(",")) for c in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(n, cycles)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return Permutation(_inverse(self.images))

    def __pow__(self, e: int) -> Permutation:
        base = self if e >= 0 else self.inverse()
        out = _identity(self.n)
        for _ in range(abs(e)):
            out = _compose(base.images, out)
        return Permutation(out)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its least point."""
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def is_fixed_point_free(self) -> bool:
        return _is_fpf(self.images)

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(c + 1) for c in cy) + ")" for cy in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``compose(a, b)(i) == a(b(i))``."""
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")
    return Permutation(_compose(a.images, b.images))


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def apply_to_word(sigma: Permutation, x: Sequence) -> list:
    """Move coordinate ``i`` of ``x`` to position ``sigma(i)``."""
    if len(x) != sigma.n:
        raise ValueError(f"word length {len(x)} does not match degree {sigma.n}")
    out = [None] * sigma.n
    for i, v in enumerate(x):
        out[sigma.images[i]] = v
    return out


class PermGroupSmall:
    """A permutation group of degree ``n`` given by generators.

    The element list is produced on demand by breadth-first closure and is
    bounded by ``cap``.  Groups whose order is known in advance (for example
    permutation automorphism groups) may carry an ``order`` and a ``member``
    predicate so that membership and order queries never enumerate.
    """

    def __init__(
        self,
        n: int,
        generators: Iterable[Permutation],
        elements: Iterable[Permutation] | None = None,
        order: int | None = None,
        member: Callable[[Permutation], bool] | None = None,
        cap: int = DEFAULT_GROUP_CAP,
    ):
        self.n = n
        gens = sorted({g for g in generators if not g.is_identity()})
        for g in gens:
            if g.n != n:
                raise ValueError("generator degree mismatch")
        self.generators = tuple(gens)
        self.cap = cap
        self._elements = tuple(sorted(elements)) if elements is not None else None
        self._element_set = None
        if self._elements is not None:
            order = len(self._elements)
        self._order = order
        self._member = member

    @classmethod
    def symmetric(cls, n: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroupSmall:
        gens = []
        if n >= 2:
            gens.append(Permutation.from_cycles(n, [(1, 2)]))
            gens.append(Permutation.from_cycles(n, [tuple(range(1, n + 1))]))
        return cls(n, gens, order=math.factorial(n), member=lambda p: p.n == n, cap=cap)

    @property
    def elements(self) -> tuple[Permutation, ...]:
        if self._elements is None:
            if self._order is not None and self._order > self.cap:
                raise CapExceeded(f"group of order {self._order} exceeds element cap {self.cap}")
            if self._order == math.factorial(self.n) and self.n > 0:
                elems = [Permutation(p) for p in itertools.permutations(range(self.n))]
            else:
                elems = [Permutation(p) for p in _closure_raw(self.n, [g.images for g in self.generators], self.cap)]
            self._elements = tuple(sorted(elems))
            self._order = len(self._elements)
        return self._elements

    @property
    def raw(self) -> list[tuple]:
        return [e.images for e in self.elements]

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements)
        return self._order

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        if p.n != self.n:
            return False
        if self._member is not None:
            return self._member(p)
        if self._element_set is None:
            self._element_set = frozenset(self.elements)
        return p in self._element_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroupSmall):
            return NotImplemented
        if self.n != other.n or self.order != other.order:
            return False
        return all(g in other for g in self.generators)

    def __hash__(self):
        return hash((self.n, self.order))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermGroupSmall(n={self.n}, order={self.order}, <{gens}>)"

    def is_full_symmetric(self) -> bool:
        return self.order == math.factorial(self.n)

    def issubset(self, other: PermGroupSmall) -> bool:
        return all(g in other for g in self.generators)

    def is_abelian(self) -> bool:
        gs = [g.images for g in self.generators]
        return all(_compose(a, b) == _compose(b, a) for a, b in itertools.combinations(gs, 2))

    def center(self) -> PermGroupSmall:
        gs = [g.images for g in self.generators]
        z = [e for e in self.elements if all(_compose(e.images, g) == _compose(g, e.images) for g in gs)]
        return PermGroupSmall(self.n, z, elements=z, cap=self.cap)

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i]:
                continue
            orb = [i]
            seen[i] = True
            for x in orb:
                for g in self.generators:
                    y = g.images[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return self.n <= 1 or len(self.orbits()) == 1

    def is_regular(self) -> bool:
        by_transitivity = self.is_transitive() and self.order == self.n
        if self.order != self.n:
            by_fpf = False
        else:
            by_fpf = all(e.is_identity() or e.is_fixed_point_free() for e in self.elements)
        assert by_transitivity == by_fpf, "regularity characterizations disagree"
        return by_transitivity

    def conjugate(self, tau: Permutation) -> PermGroupSmall:
        """``tau G tau^-1``."""
        ti = tau.inverse()
        gens = [tau * g * ti for g in self.generators]
        elems = None
        if self._elements is not None:
            elems = [tau * g * ti for g in self._elements]
        return PermGroupSmall(self.n, gens, elements=elems, order=self._order, cap=self.cap)

    def to_table(self):
        from .groups import table_from_perm_group

        return table_from_perm_group(self)


def _closure_raw(n: int, gens: list[tuple], cap: int) -> list[tuple]:
    ident = _identity(n)
    seen = {ident}
    out = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
                    if len(out) > cap:
                        raise CapExceeded(f"group closure exceeds cap {cap}")
        frontier = nxt
    return out


def closure(generators: Sequence[Permutation], cap: int = DEFAULT_GROUP_CAP, n: int | None = None) -> PermGroupSmall:
    """Generate the full element list of ``<generators>``; error past ``cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if n is None:
        if not generators:
            raise ValueError("degree required for an empty generator list")
        n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValueError("generators have different degrees")
    raw = _closure_raw(n, [g.images for g in generators], cap)
    elems = [Permutation(e) for e in raw]
    return PermGroupSmall(n, generators, elements=elems, cap=cap)


def is_transitive(G: PermGroupSmall) -> bool:
    return G.is_transitive()


def is_regular(G: PermGroupSmall) -> bool:
    return G.is_regular()


def _require_regular(H: PermGroupSmall):
    if not H.is_regular():
        raise ValueError("group is not regular")


def _psi_inverse(H: PermGroupSmall, i0: int) -> list[tuple]:
    """``out[i]`` is the unique element ``g`` of ``H`` with ``g(i0) == i``."""
    out = [None] * H.n
    for e in H.raw:
        out[e[i0]] = e
    return out


def anti_iso_sigma(H: PermGroupSmall, h: Permutation, i0: int = 0) -> Permutation:
    """``sigma_h(i) = psi^-1(i)(h(i0))`` where ``psi(g) = g(i0)``.

    ``h -> sigma_h`` is an anti-isomorphism of a regular ``H`` onto its
    centralizer in the symmetric group.
    """
    _require_regular(H)
    if h not in H:
        raise ValueError(f"{h} is not in the group")
    pinv = _psi_inverse(H, i0)
    hi0 = h.images[i0]
    return Permutation(tuple(pinv[i][hi0] for i in range(H.n)))


def centralizer_of_regular(H: PermGroupSmall, i0: int = 0) -> PermGroupSmall:
    """``{sigma_h : h in H}``, the full centralizer of ``H`` in S_n."""
    _require_regular(H)
    pinv = _psi_inverse(H, i0)
    elems = [Permutation(tuple(pinv[i][h[i0]] for i in range(H.n))) for h in H.raw]
    gens = [anti_iso_sigma(H, g, i0) for g in H.generators]
    return PermGroupSmall(H.n, gens, elements=elems, cap=H.cap)


def are_isomorphic(G1, G2, bound: int = 64):
    """Explicit isomorphism ``G1 -> G2`` or ``None``.

    Accepts ``PermGroupSmall`` or ``FiniteGroupTable``.  The returned map is a
    dict from elements of ``G1`` to elements of ``G2`` (permutations for
    permutation groups, integer labels for tables).
    """
    from .groups import FiniteGroupTable, find_isomorphism

    tabs = []
    for G in (G1, G2):
        if G.order > bound:
            raise CapExceeded(f"group of order {G.order} exceeds isomorphism bound {bound}")
        tabs.append(G if isinstance(G, FiniteGroupTable) else G.to_table())
    iso = find_isomorphism(tabs[0], tabs[1])
    if iso is None:
        return None

    def relabel(G, tab):
        if isinstance(G, FiniteGroupTable):
            return lambda a: a
        return lambda a: tab.element_objects[a]

    r1, r2 = relabel(G1, tabs[0]), relabel(G2, tabs[1])
    return {r1(a): r2(b) for a, b in enumerate(iso)}
