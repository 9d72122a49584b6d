import itertools

import pytest

from groupcodes.errors import ParseError
from groupcodes.groups import find_isomorphism, group_from_spec, groups_of_order, iso_type_name

# number of groups of order n up to isomorphism, n = 1..15
GROUP_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]


@pytest.mark.parametrize("n", range(1, 16))
def test_groups_of_order_complete_and_distinct(n):
    gs = groups_of_order(n)
    assert len(gs) == GROUP_COUNTS[n - 1]
    for G in gs:
        assert G.order == n and G.verify_axioms()
    for G, H in itertools.combinations(gs, 2):
        assert find_isomorphism(G, H) is None


@pytest.mark.parametrize(
    "spec,order,abelian",
    [("S3", 6, False), ("E2^3", 8, True), ("C7", 7, True), ("D8", 8, False), ("Q8", 8, False),
     ("A4", 12, False), ("A:2x4", 8, True), ("C2XC3", 6, True), ("C2×C2", 4, True), ("MC:5,4,2", 20, False)],
)
def test_spec_language(spec, order, abelian):
    G = group_from_spec(spec)
    assert G.order == order and G.is_abelian() == abelian and G.verify_axioms()


def test_elementary_abelian_exponent():
    G = group_from_spec("E2^3")
    assert all(G.element_order(g) <= 2 for g in range(8))


def test_metacyclic_s3_and_products():
    assert find_isomorphism(group_from_spec("MC:3,2,2"), group_from_spec("S3")) is not None
    assert find_isomorphism(group_from_spec("C2XC3"), group_from_spec("C6")) is not None
    assert find_isomorphism(group_from_spec("C2XC2"), group_from_spec("C4")) is None
    assert iso_type_name(group_from_spec("MC:3,2,2")) == "S3"
    assert iso_type_name(group_from_spec("MC:4,2,3")) == "D8"


@pytest.mark.parametrize("bad", ["X3", "D7", "MC:5,2,2", "E4^2", "C0", ""])
def test_spec_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        group_from_spec(bad)


def test_isomorphism_is_homomorphism():
    G, H = group_from_spec("MC:3,2,2"), group_from_spec("S3")
    iso = find_isomorphism(G, H)
    assert sorted(iso) == list(range(6))
    for a in range(6):
        for b in range(6):
            assert iso[G.mul(a, b)] == H.mul(iso[a], iso[b])


def test_subgroup_structure():
    S3 = group_from_spec("S3")
    assert sorted(len(S) for S in S3.subgroups()) == [1, 2, 2, 2, 3, 6]
    assert sorted(len(N) for N in S3.normal_subgroups()) == [1, 3, 6]
    assert S3.center() == [0]
    assert len(S3.conjugacy_classes()) == 3
    N3 = next(N for N in S3.normal_subgroups() if len(N) == 3)
    assert S3.quotient_is_cyclic(N3)
    Q8 = group_from_spec("Q8")
    assert all(Q8.is_normal(S) for S in Q8.subgroups())
    assert len(Q8.center()) == 2


def test_regular_representations_are_regular():
    for n in (4, 6, 8):
        for G in groups_of_order(n):
            for g in range(n):
                L, R = G.left_regular(g), G.right_regular(g)
                assert sorted(L) == sorted(R) == list(range(n))
                if g != 0:
                    assert all(L[i] != i for i in range(n))
                # left and right multiplications commute
                for h in range(n):
                    Rh = G.right_regular(h)
                    assert tuple(L[x] for x in Rh) == tuple(Rh[x] for x in L)
