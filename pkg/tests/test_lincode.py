import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcodes.errors import CapExceeded, ParseError
from groupcodes.gf import field_of_order
from groupcodes.lincode import LinearCode, format_code, parse_code, paut, permutation_equivalence
from groupcodes.perm import Permutation, apply_to_word

from oracles import brute_paut, codewords, min_distance as oracle_distance

F3, F5, F11 = field_of_order(3), field_of_order(5), field_of_order(11)
U = [2, 5, 4, 2, 4, 5]
V = [4, 8, 10, 7, 1, 3]


def aabb():
    return LinearCode.from_rows(F3, [[1, 1, 0, 0], [0, 0, 1, 1]])


def f11_code():
    return LinearCode.from_rows(F11, [U, V])


def test_construction_examples():
    assert aabb().k == 2
    assert set(map(tuple, aabb().codewords())) == {(a, a, b, b) for a in range(3) for b in range(3)}
    assert f11_code().k == 2
    Z = LinearCode.from_rows(F3, [[0, 0, 0]])
    assert Z.k == 0 and Z == LinearCode.zero(F3, 3)


def test_membership():
    C = f11_code()
    assert C.contains([0] * 6)
    assert C.contains([(5 * a + 4 * b) % 11 for a, b in zip(U, V)])
    assert not C.contains([1, 0, 0, 0, 0, 0])


def test_dual_and_permute():
    F2 = field_of_order(2)
    rep = LinearCode.from_rows(F2, [[1, 1, 1, 1]])
    D = rep.dual()
    assert D.k == 3
    assert all(sum(w) % 2 == 0 for w in D.codewords())
    assert aabb().permute(Permutation.identity(4)) == aabb()
    swapped = aabb().permute(Permutation.parse("(2,3)", 4))
    assert swapped == LinearCode.from_rows(F3, [[1, 0, 1, 0], [0, 1, 0, 1]])
    assert swapped != aabb()


def test_min_distance_examples():
    F2 = field_of_order(2)
    for n in (3, 5, 7):
        assert LinearCode.from_rows(F2, [[1] * n]).min_distance() == n
    # k = 2 Cauchy code over F_5 with f = 1 on all of F_5: generator rows 1 and z
    C = LinearCode.from_rows(F5, [[1] * 5, list(range(5))])
    assert C.min_distance() == 4
    with pytest.raises(ValueError):
        LinearCode.zero(F5, 3).min_distance()


def test_min_distance_parity_check_route():
    # q^k = 1331 exceeds the cap while 2^n = 64 does not: parity-check columns are used
    rng = np.random.default_rng(7)
    for _ in range(5):
        C = LinearCode.from_rows(F11, rng.integers(0, 11, size=(3, 6)))
        assert C.min_distance(cap=100) == C.min_distance() == oracle_distance(F11, C.rows())
    big = LinearCode.from_rows(F11, np.eye(12, dtype=np.int64)[:6] + np.eye(12, k=6, dtype=np.int64)[:6])
    with pytest.raises(CapExceeded):
        big.min_distance(cap=1000)


def test_paut_examples():
    P = paut(LinearCode.full(F3, 4))
    assert P.order == 24 and P.is_full_symmetric()
    P = paut(aabb())
    assert P.order == 8
    assert set(P.raw) == brute_paut(F3, [[1, 1, 0, 0], [0, 0, 1, 1]], 4)
    for g in ("(1,2)", "(3,4)", "(1,3)(2,4)"):
        assert Permutation.parse(g, 4) in P
    P = paut(f11_code())
    assert Permutation.parse("(1,2,3)(4,5,6)", 6) in P
    assert Permutation.parse("(1,4)(2,6)(3,5)", 6) in P
    assert P.order == 6


def test_paut_cap():
    C = LinearCode.from_rows(field_of_order(2), [[1] * 14])
    with pytest.raises(CapExceeded):
        paut(C)


def test_text_format_round_trip_and_errors():
    C = f11_code()
    assert parse_code(format_code(C, "example")) == C
    with pytest.raises(ParseError) as e:
        parse_code("# header\n11 6 2\n2 5 4 2 4 5\n4 8 10 7 1\n")
    assert e.value.line == 4
    with pytest.raises(ParseError) as e:
        parse_code("5 3 1\n1 2 9\n")
    assert e.value.line == 2
    with pytest.raises(ParseError) as e:
        parse_code("6 3 1\n1 1 1\n")
    assert e.value.line == 1
    with pytest.raises(ParseError):
        parse_code("")
    with pytest.raises(ParseError):
        parse_code("3 3 2\n1 1 1\n")


codes = st.tuples(
    st.sampled_from([2, 3, 4, 5]),
    st.integers(2, 6),
    st.integers(1, 3),
    st.integers(0, 2**32 - 1),
)


def random_code(q, n, k, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    return F, LinearCode.from_rows(F, rng.integers(0, q, size=(k, n)), n)


@settings(max_examples=80, deadline=None)
@given(codes)
def test_paut_matches_brute_force(t):
    F, C = random_code(*t)
    assert set(paut(C).raw) == brute_paut(F, C.rows(), C.n)


@settings(max_examples=80, deadline=None)
@given(codes)
def test_linear_algebra_invariants(t):
    F, C = random_code(*t)
    words = codewords(F, C.rows()) if C.k else {tuple([0] * C.n)}
    assert len(words) == F.q**C.k
    assert all(C.contains(w) for w in words)
    D = C.dual()
    assert D.k == C.n - C.k
    assert D.dual() == C
    if C.k:
        assert C.min_distance() == oracle_distance(F, C.rows())
        assert C.min_distance() <= C.n - C.k + 1
    # RREF canonical: any basis gives the same code
    if C.k >= 2:
        rows = C.rows()
        mixed = [rows[1], [F.add(a, b) for a, b in zip(rows[0], rows[1])]] + rows[2:]
        assert LinearCode.from_rows(F, mixed, C.n) == C


@settings(max_examples=60, deadline=None)
@given(codes, st.randoms(use_true_random=False))
def test_permutation_covariance(t, rnd):
    F, C = random_code(*t)
    imgs = list(range(C.n))
    rnd.shuffle(imgs)
    s = Permutation(tuple(imgs))
    D = C.permute(s)
    assert {tuple(apply_to_word(s, w)) for w in C.codewords()} == {tuple(w) for w in D.codewords()}
    tau = permutation_equivalence(C, D)
    assert tau is not None and C.permute(tau) == D
    # PAut is conjugated by s
    assert paut(D).order == paut(C).order
    assert math.factorial(C.n) % paut(C).order == 0
