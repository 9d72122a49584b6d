import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcodes.classify import (
    _Embedder,
    admissible,
    classify,
    classify_one_dim,
    _witness_from_psi,
    is_abelian_group_code,
    is_cyclic_group_code,
    is_G_code,
    is_left_G_code,
    one_dim_cyclic_corollary_check,
    regular_subgroups,
)
from groupcodes.errors import CapExceeded
from groupcodes.gf import field_of_order
from groupcodes.groupalg import is_left_ideal, is_two_sided_ideal, regular_subgroup_phi
from groupcodes.groups import find_isomorphism, group_from_spec, groups_of_order
from groupcodes.lincode import LinearCode, paut
from groupcodes.perm import Permutation, PermGroupSmall, centralizer_of_regular, closure

from oracles import is_group_code_brute, regular_subgroups_of

F2, F3, F5, F7, F11 = (field_of_order(q) for q in (2, 3, 5, 7, 11))
A = Permutation.parse("(1,2,3)(4,5,6)", 6)
B = Permutation.parse("(1,4)(2,6)(3,5)", 6)


def f11_code():
    return LinearCode.from_rows(F11, [[2, 5, 4, 2, 4, 5], [4, 8, 10, 7, 1, 3]])


def aabb():
    return LinearCode.from_rows(F3, [[1, 1, 0, 0], [0, 0, 1, 1]])


def hamming():
    return LinearCode.from_rows(F2, [[1, 1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 1, 0, 0], [0, 0, 1, 1, 0, 1, 0], [0, 0, 0, 1, 1, 0, 1]])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_regular_subgroups_of_symmetric_group_match_brute_force(n):
    S = PermGroupSmall.symmetric(n)
    found = {frozenset(H.raw) for H in regular_subgroups(S, n, mode="all")}
    assert found == regular_subgroups_of(frozenset(S.raw), n)
    types = regular_subgroups(S, n, mode="isotype")
    assert len(types) == len(groups_of_order(n))


def test_s4_example():
    S4 = PermGroupSmall.symmetric(4)
    all_ = regular_subgroups(S4, 4, mode="all")
    # three cyclic groups of order 4 and the normal Klein group
    assert len(all_) == 4
    names = sorted("C4" if H.to_table().is_cyclic() else "E2^2" for H in regular_subgroups(S4, 4, mode="conjugacy"))
    assert names == ["C4", "E2^2"]


def test_degree_two_example():
    P = closure([Permutation.parse("(1,2)", 2)])
    (H,) = regular_subgroups(P, 2)
    assert set(H.raw) == set(P.raw)


def test_f11_paut_regular_subgroups():
    P = paut(f11_code())
    regs = regular_subgroups(P, 6, mode="all")
    assert any(set(H.raw) == set(closure([A, B]).raw) for H in regs)
    assert not any(H.to_table().is_abelian() for H in regs)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6).flatmap(lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3)))
def test_regular_subgroups_of_random_groups(gens):
    n = len(gens[0])
    P = closure([Permutation(tuple(g)) for g in gens], n=n)
    found = {frozenset(H.raw) for H in regular_subgroups(P, n, mode="all")}
    assert found == regular_subgroups_of(frozenset(P.raw), n)


def test_classify_f11_example():
    rep = classify(f11_code())
    assert rep.is_left_group_code and rep.left_types == ["S3"]
    assert not rep.is_group_code
    assert not rep.is_abelian_group_code and not rep.is_cyclic_group_code
    (H, name), = rep.left_witnesses
    assert name == "S3" and set(H.raw) == set(closure([A, B]).raw)
    d = rep.to_dict()
    assert d["is_left_group_code"] is True and "S3" in rep.to_text()


def test_repetition_code_every_group():
    for n in (4, 6):
        C = LinearCode.from_rows(F2, [[1] * n])
        rep = classify(C)
        assert sorted(rep.left_types) == sorted(T.name for T in groups_of_order(n))
        assert rep.paut_order == np.prod(range(1, n + 1))


def test_one_dim_non_group_code():
    assert not classify(LinearCode.from_rows(F5, [[1, 2, 3]])).is_left_group_code


def test_two_sided_examples():
    rep = classify(hamming())
    assert rep.is_group_code and rep.is_cyclic_group_code
    shift = Permutation(tuple((i + 1) % 7 for i in range(7)))
    assert shift in paut(hamming())
    assert is_G_code(hamming(), "C7").holds
    full = LinearCode.full(F2, 4)
    assert all(is_G_code(full, T).holds for T in groups_of_order(4))
    res = is_G_code(aabb(), "C4")
    assert res.holds
    assert all(g in paut(aabb()) for g in centralizer_of_regular(res.witness).generators)


def test_left_g_code_examples():
    res = is_left_G_code(f11_code(), "S3")
    assert res.holds
    assert res.witness.is_regular() and all(g in paut(f11_code()) for g in res.witness.generators)
    assert is_left_ideal(f11_code(), res.phi.group, res.phi)
    assert not is_left_G_code(f11_code(), "C6").holds
    assert is_left_G_code(aabb(), "C4").holds
    with pytest.raises(ValueError):
        is_left_G_code(aabb(), "S3")


def test_abelian_and_cyclic_flags():
    assert is_cyclic_group_code(hamming())
    assert not is_abelian_group_code(f11_code())
    assert is_abelian_group_code(aabb()) and is_cyclic_group_code(aabb())


def test_length_cap():
    with pytest.raises(CapExceeded):
        classify(LinearCode.from_rows(F2, [[1] * 14]))


def random_code(q, n, k, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    return F, LinearCode.from_rows(F, rng.integers(0, q, size=(k, n)), n)


def structured_code(q, n, seed):
    """Random ideal of a random group algebra: guaranteed to be a left group code."""
    rng = np.random.default_rng(seed)
    gs = groups_of_order(n)
    G = gs[int(rng.integers(len(gs)))]
    from groupcodes.groupalg import GroupAlgebraElement, ideal_code

    F = field_of_order(q)
    x = GroupAlgebraElement(G, F, rng.integers(0, q, size=n).tolist())
    C = ideal_code(G, F, [x])
    perm = rng.permutation(n)
    return F, C.permute(Permutation(tuple(int(p) for p in perm))), G


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(2, 6), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_psi_route_agrees_with_subgroup_route(q, n, k, seed):
    F, C = random_code(q, n, k, seed)
    rep = classify(C)
    assert rep.is_left_group_code == is_group_code_brute(F, C.rows(), n)
    P = paut(C)
    regs = regular_subgroups(P, n, mode="all")
    by_subgroups = {T.name for T in groups_of_order(n) for H in regs if find_isomorphism(H.to_table(), T)}
    assert set(rep.left_types) == by_subgroups
    two = {T.name for T in groups_of_order(n) for H in regs
           if find_isomorphism(H.to_table(), T) and all(g in P for g in centralizer_of_regular(H).generators)}
    assert set(rep.two_sided_types) == two


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_ideals_are_recognised(q, n, seed):
    F, C, G = structured_code(q, n, seed)
    res = is_left_G_code(C, G)
    assert res.holds
    assert is_left_ideal(C, res.phi.group, res.phi)
    phi = regular_subgroup_phi(res.witness)
    assert is_left_ideal(C, phi.group, phi)
    two = is_G_code(C, G)
    if two.holds:
        assert is_two_sided_ideal(C, two.phi.group, two.phi)


@pytest.mark.parametrize("v,q,ok,h,s", [
    ([1, 1, 1, 1, 1, 1], 7, True, 1, 6),
    ([1, 4, 1, 4], 5, True, 2, 2),
    ([1, 2, 3], 7, False, None, None),
    ([1, 2, 4], 7, True, 3, 1),
    ([3, 6, 5], 7, True, 3, 1),
    ([1, 0, 1], 3, False, None, None),
])
def test_one_dim_examples(v, q, ok, h, s):
    rep = classify_one_dim(field_of_order(q), v)
    assert rep.is_left_group_code == ok
    if ok:
        assert (rep.h, rep.s) == (h, s)
        # ratios are powers of xi
        F = field_of_order(q)
        assert F.mult_order(rep.xi) == h if h > 1 else rep.xi == 1


def test_one_dim_admissibility():
    rep = classify_one_dim(F7, [1] * 6)
    assert all(rep.admissible.values()) and set(rep.admissible) == {"C6", "S3"}
    rep = classify_one_dim(F5, [1, 4, 1, 4])
    assert rep.admissible == {"C4": True, "E2^2": True}
    # s = 1 and h = 4 needs G cyclic
    rep = classify_one_dim(F5, [1, 2, 4, 3])
    assert rep.admissible == {"C4": True, "E2^2": False}
    assert admissible(group_from_spec("S3"), 3)
    assert not admissible(group_from_spec("S3"), 2)
    with pytest.raises(ValueError):
        classify_one_dim(F5, [0, 0, 0])


def test_one_dim_cyclic_corollary():
    assert one_dim_cyclic_corollary_check(F7, [1] * 6)
    assert one_dim_cyclic_corollary_check(F5, [1, 4, 1, 4])
    assert one_dim_cyclic_corollary_check(F7, [1, 2, 4])
    with pytest.raises(ValueError):
        one_dim_cyclic_corollary_check(F7, [1, 2, 3])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(2, 7), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_embedder_rank_pruning_matches_element_filter(q, n, k, seed):
    F, C = random_code(q, n, k, seed)
    P = paut(C)
    plain, listed = _Embedder(C), _Embedder(C, P)
    for T in groups_of_order(n):
        for two in (False, True):
            a, b = plain.search(T, two), listed.search(T, two)
            assert (a is None) == (b is None)
            if b is not None:
                H = _witness_from_psi(T, b)[0]
                assert all(g in P for g in H.generators) and H.is_regular()
