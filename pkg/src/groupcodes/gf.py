"""Exact arithmetic in finite fields F_{p^m}.

Elements are encoded as integers ``0 <= rep < q``: the base-``p`` digits of
``rep`` are the coefficients (constant term first) of the residue polynomial
modulo the field's defining polynomial.  The defining polynomial is the monic
irreducible of degree ``m`` whose non-leading coefficients, read as a base-``p``
integer, are smallest.  Field objects are cached, so ``make_field(p, m)``
always returns the same instance.
"""

from __future__ import annotations

import functools
import itertools
from math import gcd
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import FieldMismatchError

DEFAULT_MAX_ORDER = 4096
# full q x q numpy tables are only built up to this order
TABLE_MAX_ORDER = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``, or raise ``ValueError``."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in itertools.count(2) if q % d == 0)
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def _digits(rep: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        rep, d = divmod(rep, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    rep = 0
    for d in reversed(ds):
        rep = rep * p + d
    return rep


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic-or-not ``b`` over F_p (lists, low first)."""
    a = list(a)
    db = len(b) - 1
    while db > 0 and b[db] == 0:
        db -= 1
    lead_inv = pow(b[db], p - 2, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * lead_inv % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return a[:db] if db > 0 else []


def _is_irreducible(poly: list[int], p: int) -> bool:
    m = len(poly) - 1
    if m == 1:
        return True
    if poly[0] == 0:
        return False
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if any(_poly_rem(poly, list(low) + [1], p)):
                continue
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``m`` over F_p with least base-p encoding."""
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        poly = _digits(code, p, m) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FiniteField:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def order(self) -> int:
        return self.q

    @property
    def label(self) -> str:
        return str(self.p) if self.m == 1 else f"{self.p}^{self.m}"

    def __repr__(self) -> str:
        return f"GF({self.label})"

    def __len__(self) -> int:
        return self.q

    def __call__(self, rep) -> FieldElement:
        return FieldElement(self, self.validate(rep))

    def __iter__(self):
        return (FieldElement(self, r) for r in range(self.q))

    def validate(self, rep) -> int:
        if isinstance(rep, FieldElement):
            if rep.field is not self:
                raise FieldMismatchError(f"{rep!r} is not in {self!r}")
            return rep.rep
        rep = int(rep)
        if not 0 <= rep < self.q:
            raise ValueError(f"{rep} is not a valid element of {self!r}")
        return rep

    def to_dict(self) -> dict:
        d = {"order": self.label}
        if self.m > 1:
            d["modulus"] = list(self.modulus)
        return d

    # -- raw arithmetic on integer reps -------------------------------------

    def _polymul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return _undigits(_poly_rem(prod, list(self.modulus), p), p)

    @cached_property
    def _exp_log(self) -> tuple[list[int], list[int]]:
        q = self.q
        if q == 2:
            return [1], [0, 0]
        for g in range(1, q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._polymul(x, g) if self.m > 1 else x * g % self.p
            if len(powers) == q - 1:
                log = [0] * q
                for i, x in enumerate(powers):
                    log[x] = i
                return powers, log
        raise AssertionError("no primitive element")  # pragma: no cover

    @cached_property
    def primitive_rep(self) -> int:
        return self._exp_log[0][1] if self.q > 2 else 1

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._neg_list[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        exp, log = self._exp_log
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._exp_log
        return exp[-log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        exp, log = self._exp_log
        return exp[(log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log of ``a`` to the base of :meth:`primitive_element`."""
        if a == 0:
            raise ValueError("log of zero")
        return self._exp_log[1][a]

    def exp(self, e: int) -> int:
        return self._exp_log[0][e % (self.q - 1)]

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        e = self.log(a)
        return (self.q - 1) // gcd(e, self.q - 1)

    @cached_property
    def _add_table(self) -> list[list[int]]:
        p, m, q = self.p, self.m, self.q
        digs = [_digits(r, p, m) for r in range(q)]
        return [[_undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p) for b in range(q)] for a in range(q)]

    @cached_property
    def _neg_list(self) -> list[int]:
        p, m = self.p, self.m
        return [_undigits([-d % p for d in _digits(r, p, m)], p) for r in range(self.q)]

    @cached_property
    def tables(self) -> "FieldTables":
        """Dense numpy operation tables for the compiled/vectorised kernels."""
        q = self.q
        if q > TABLE_MAX_ORDER:
            raise ValueError(f"dense tables need q <= {TABLE_MAX_ORDER}, got {q}")
        r = np.arange(q)
        add = np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        exp, log = self._exp_log
        lg = np.array(log, dtype=np.int64)
        ex = np.array(exp, dtype=np.int64)
        nz = r[1:]
        mul[1:, 1:] = ex[(lg[nz][:, None] + lg[nz][None, :]) % (q - 1)]
        neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = [self.inv(a) for a in range(1, q)]
        for t in (add, mul, neg, inv):
            t.setflags(write=False)
        return FieldTables(q, add, mul, neg, inv)

    # -- element-level helpers ----------------------------------------------

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def nonzero_reps(self) -> range:
        return range(1, self.q)


@dataclass(frozen=True)
class FieldTables:
    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


@functools.lru_cache(maxsize=None)
def _make_field(p: int, m: int) -> FiniteField:
    return FiniteField(p, m, smallest_irreducible(p, m))


def make_field(p: int, m: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FiniteField:
    """Return the field of order ``p**m`` (a shared, cached instance)."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p!r}")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m!r}")
    if p**m > max_order:
        raise ValueError(f"field order {p}^{m} exceeds bound {max_order}")
    return _make_field(p, m)


def field_of_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteField:
    p, m = prime_power(q)
    return make_field(p, m, max_order)


def parse_field(text: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteField:
    """Parse ``"p"``, ``"p^m"`` or a prime power ``"q"``."""
    text = text.strip()
    if "^" in text:
        p, m = text.split("^", 1)
        return make_field(int(p), int(m), max_order)
    return field_of_order(int(text), max_order)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    rep: int

    def __post_init__(self):
        if not 0 <= self.rep < self.field.q:
            raise ValueError(f"rep {self.rep} out of range for {self.field!r}")

    def __repr__(self) -> str:
        return f"{self.rep}@GF({self.field.label})"

    def __int__(self) -> int:
        return self.rep

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.rep != 0

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatchError("operands belong to different fields")
            return other.rep
        if isinstance(other, int):
            # integers act through the prime subfield
            return other % self.field.p
        return NotImplemented

    def _wrap(self, rep: int) -> FieldElement:
        return FieldElement(self.field, rep)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.rep, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.rep, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.rep))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.rep, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.rep, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.rep))

    def __neg__(self):
        return self._wrap(self.field.neg(self.rep))

    def __pow__(self, e: int):
        return self._wrap(self.field.power(self.rep, int(e)))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.rep))

    def multiplicative_order(self) -> int:
        return self.field.mult_order(self.rep)


def arith(op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch ``op`` in {add, sub, mul, div, neg, inv, pow} on field elements."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field is not a.field:
        raise FieldMismatchError("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def primitive_element(field: FiniteField) -> FieldElement:
    """Smallest-rep generator of the multiplicative group."""
    return FieldElement(field, field.primitive_rep)

