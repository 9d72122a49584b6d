"""Acceptance checks, one verdict line per criterion.

Each test prints ``criterion N: PASS|FAIL  <title>`` and the lines are
repeated in the terminal summary.  Expected values come from the oracles in
``oracles.py`` or from closed-form counts noted beside them.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np
import pytest

from groupcodes.cauchy import (
    CauchySpec,
    ScalingMap,
    cauchy_code,
    classify_length_q,
    classify_length_qm1,
    codes_permutation_equivalent,
    dihedral_family,
    em_equivalent,
    f_m_map,
    f_mm_map,
    fstar_powers,
    gamma_regular_types,
    length_qm2_check,
    paut_via_gamma,
    proj_line,
    ProjectivePoint,
)
from groupcodes.classify import classify, classify_one_dim, regular_subgroups
from groupcodes.gf import field_of_order
from groupcodes.groupalg import (
    IndexBijection,
    abelian_factorization,
    check_AB_theorem,
    clave_identity_holds,
    enumerate_ideals,
    is_left_ideal,
    regular_subgroup_phi,
)
from groupcodes.groups import group_from_spec, groups_of_order
from groupcodes.lincode import LinearCode, paut, permutation_equivalence
from groupcodes.perm import Permutation, PermGroupSmall, anti_iso_sigma, closure

from conftest import record
from oracles import brute_centralizer, brute_paut_rows, compose, regular_subgroups_of


@contextmanager
def criterion(number, title):
    state = {"detail": ""}
    ok = False
    try:
        yield state
        ok = True
    finally:
        record(number, ok, title, state["detail"])


def types_of(spec):
    return sorted(name for _, name in gamma_regular_types(spec))


# -- 1 ------------------------------------------------------------------------------------


def test_criterion_1_f11_example():
    with criterion(1, "F11 example: left S3 code, not abelian") as st:
        t0 = time.time()
        F = field_of_order(11)
        C = LinearCode.from_rows(F, [[2, 5, 4, 2, 4, 5], [4, 8, 10, 7, 1, 3]])
        rep = classify(C)
        A = Permutation.parse("(1,2,3)(4,5,6)", 6)
        B = Permutation.parse("(1,4)(2,6)(3,5)", 6)
        target = set(closure([A, B]).raw)
        assert rep.is_left_group_code is True
        assert rep.left_types == ["S3"]
        assert [name for _, name in rep.left_witnesses] == ["S3"]
        assert set(rep.left_witnesses[0][0].raw) == target
        assert rep.is_abelian_group_code is False
        elapsed = time.time() - t0
        assert elapsed < 60
        st["detail"] = f"{elapsed:.2f} s"


# -- 2 ------------------------------------------------------------------------------------


def test_criterion_2_aabb_ideal():
    with criterion(2, "(a,a,b,b) over F3 is a C4 ideal under (1,g^2,g,g^3), not under the natural order"):
        F = field_of_order(3)
        C4 = group_from_spec("C4")  # label i is g^i
        C = LinearCode.from_rows(F, [[1, 1, 0, 0], [0, 0, 1, 1]])
        assert is_left_ideal(C, C4, IndexBijection(4, (0, 2, 1, 3), C4)) is True
        assert is_left_ideal(C, C4, IndexBijection.identity(4, C4)) is False


# -- 3 ------------------------------------------------------------------------------------

# regular subgroups of S_n: sum over groups G of order n of (n-1)!/|Aut G|
REGULAR_COUNTS = {4: 3 + 1, 5: 6, 6: 60 + 20, 7: 120, 8: 1260 + 630 + 30 + 630 + 210}


def test_criterion_3_centralizer_anti_isomorphism():
    with criterion(3, "sigma is an anti-isomorphism onto the centralizer, sigma_h = h exactly on Z(H)") as st:
        checked = 0
        for n in range(4, 9):
            regs = regular_subgroups(PermGroupSmall.symmetric(n), n, mode="all")
            assert len(regs) == REGULAR_COUNTS[n]
            if n <= 6:  # the pair-closure oracle; larger n rely on the closed-form count
                assert {frozenset(H.raw) for H in regs} == regular_subgroups_of(frozenset(PermGroupSmall.symmetric(n).raw), n)
            for H in regs:
                elems = H.raw
                sig = {h: anti_iso_sigma(H, Permutation(h)).images for h in elems}
                assert len(set(sig.values())) == n
                assert set(sig.values()) == brute_centralizer([g.images for g in H.generators], n)
                for g, h in itertools.product(elems, repeat=2):
                    assert sig[compose(g, h)] == compose(sig[h], sig[g])
                center = {z for z in elems if all(compose(z, x) == compose(x, z) for x in elems)}
                assert {h for h in elems if sig[h] == h} == center
                checked += 1
        st["detail"] = f"{checked} regular subgroups, n = 4..8"


# -- 4 ------------------------------------------------------------------------------------


def test_criterion_4_ideal_round_trip():
    with criterion(4, "left ideals <-> codes with a regular PAut subgroup; Clave identity") as st:
        rng = np.random.default_rng(2024)
        n_ideals = n_codes = n_regular = n_clave = 0
        for q in (2, 3):
            F = field_of_order(q)
            for n in range(1, 9):
                for G in groups_of_order(n):
                    ideals = enumerate_ideals(G, F, "left")
                    image = [Permutation(G.left_regular(g)) for g in range(n)]
                    for I in ideals:
                        P = paut(I)
                        assert all(p in P for p in image)
                    n_ideals += len(ideals)
                    # converse: disguised ideals and random codes
                    samples = [ideals[int(i)] for i in rng.integers(0, len(ideals), 4)]
                    samples = [C.permute(Permutation(tuple(int(x) for x in rng.permutation(n)))) for C in samples]
                    samples += [LinearCode.from_rows(F, rng.integers(0, q, size=(int(rng.integers(1, n + 1)), n)), n) for _ in range(2)]
                    for C in samples:
                        P = paut(C)
                        regs = regular_subgroups(P, n, mode="all") if not P.is_full_symmetric() else \
                            regular_subgroups(P, n, mode="isotype")
                        for H in regs:
                            phi = regular_subgroup_phi(H)
                            assert is_left_ideal(C, phi.group, phi)
                            n_regular += 1
                        n_codes += 1
        # Clave identity over every vector of F_q^n
        for q in (2, 3):
            F = field_of_order(q)
            for n in range(1, 9):
                S = PermGroupSmall.symmetric(n)
                mode = "all" if (n <= 5 or (n == 6 and q == 2)) else "isotype"
                vecs = list(itertools.product(range(q), repeat=n))
                for H in regular_subgroups(S, n, mode=mode):
                    for i0 in sorted({0, n - 1}):
                        assert clave_identity_holds(H, F, vecs, i0)
                        n_clave += 1
        st["detail"] = (f"{n_ideals} left ideals, {n_codes} sampled codes with {n_regular} regular "
                        f"subgroups, {n_clave} Clave checks")


# -- 5 ------------------------------------------------------------------------------------


def _one_dim_agrees(F, v):
    a = classify_one_dim(F, v)
    b = classify(LinearCode.from_rows(F, [list(v)]))
    if a.is_left_group_code != b.is_left_group_code:
        return False
    ok_types = {name for name, ok in a.admissible.items() if ok} if a.is_left_group_code else set()
    return ok_types == set(b.left_types)


def test_criterion_5_one_dimensional_codes():
    with criterion(5, "one-dimensional test agrees with the generic classification") as st:
        total = bad = 0
        for q in (2, 3, 5):
            F = field_of_order(q)
            for n in range(1, 6):
                for v in itertools.product(range(q), repeat=n):
                    if any(v):
                        total += 1
                        bad += not _one_dim_agrees(F, v)
            rng = np.random.default_rng(q)
            for _ in range(150):
                v = [int(x) for x in rng.integers(0, q, 6)]
                # bias towards nowhere-zero vectors, the only candidates
                if rng.random() < 0.7:
                    v = [x or 1 for x in v]
                if any(v):
                    total += 1
                    bad += not _one_dim_agrees(F, v)
        st["detail"] = f"{total} vectors, {bad} disagreements"
        assert bad == 0


# -- 6 ------------------------------------------------------------------------------------


def test_criterion_6_length_q():
    with criterion(6, "f = 1 on F gives left group codes, all witnesses elementary abelian of order q") as st:
        cases = 0
        for q in (4, 5, 7, 8):
            F = field_of_order(q)
            L = tuple(ProjectivePoint(x) for x in range(q))
            ename = f"E{F.p}^{F.m}" if F.m > 1 else f"C{q}"
            for k in range(2, q - 1):
                spec = CauchySpec(F, k, L, ScalingMap.constant(L, 1))
                P = paut_via_gamma(spec)
                regs = regular_subgroups(P, q, mode="all")
                assert regs
                for H in regs:
                    T = H.to_table()
                    assert T.is_abelian() and all(T.element_order(g) in (1, F.p) for g in range(q))
                assert classify_length_q(spec).group_types == [ename]
                assert classify(cauchy_code(spec)).left_types == [ename]
                # perturb one value: a different code with no regular subgroup
                bad = CauchySpec(F, k, L, ScalingMap(L, (F.primitive_rep,) + (1,) * (q - 1)))
                assert codes_permutation_equivalent(spec, bad) is None
                assert types_of(bad) == []
                assert not classify_length_q(bad).is_left_group_code
                assert not classify(cauchy_code(bad)).is_left_group_code
                cases += 1
        st["detail"] = f"{cases} (q, k) pairs"


# -- 7 ------------------------------------------------------------------------------------

_C7 = {}


def _random_f(F, alpha, rng):
    return ScalingMap(alpha, tuple(int(v) for v in rng.integers(1, F.q, len(alpha))))


def test_criterion_7_cyclic_and_dihedral():
    F11, F13 = field_of_order(11), field_of_order(13)
    k = 3
    alpha = tuple(fstar_powers(F11))
    specs = [CauchySpec(F11, k, alpha, f_m_map(F11, m)) for m in range(10)]
    specs += [CauchySpec(F11, k, alpha, f_mm_map(F11, m, m2)) for m in range(10) for m2 in range(10)]
    rng = np.random.default_rng(11)
    specs += [CauchySpec(F11, k, alpha, _random_f(F11, alpha, rng)) for _ in range(200)]
    P1 = proj_line(F11)
    for _ in range(200):
        loc = tuple(P1[i] for i in sorted(rng.permutation(12)[:10]))
        specs.append(CauchySpec(F11, k, loc, _random_f(F11, loc, rng)))
    found = 0
    for spec in specs:
        types = types_of(spec)
        if types:
            found += 1
            assert "C10" in types
        if set(spec.alpha) == set(alpha):
            rep = classify_length_qm1(spec)
            assert rep.is_left_group_code == bool(types)
            assert sorted(rep.group_types) == types
    assert found >= 10
    fam = dihedral_family(F13, k)
    assert len(fam) == 4
    fam_types = [types_of(s) for s in fam]
    assert all(fam_types)
    assert sum("C12" not in t for t in fam_types) == 2
    _C7["first"] = f"{found} left group codes of length 10 at q=11, all cyclic; 4 dihedral specs at q=13, 2 not cyclic"


def test_em_equivalence_corrected_relation():
    q, k = 7, 2
    F = field_of_order(q)
    alpha = tuple(fstar_powers(F))
    for m, m2 in itertools.product(range(q - 1), repeat=2):
        a = CauchySpec(F, k, alpha, f_m_map(F, m))
        b = CauchySpec(F, k, alpha, f_m_map(F, m2))
        via_gamma = codes_permutation_equivalent(a, b) is not None
        generic = permutation_equivalence(cauchy_code(a), cauchy_code(b)) is not None
        assert via_gamma == generic == em_equivalent(q, k, m, m2)
        assert via_gamma == ((m2 - m) % (q - 1) == 0 or (m2 + m + k - 1) % (q - 1) == 0)


@pytest.mark.xfail(strict=True, reason=(
    "z -> 1/z carries f_m to f_(-m-(k-1)), not f_(-m): the m' = +-m relation omits the theta**(k-1) "
    "factor; the corrected relation is checked in test_em_equivalence_corrected_relation"))
def test_criterion_7_em_plus_minus_m():
    q, k = 7, 2
    F = field_of_order(q)
    alpha = tuple(fstar_powers(F))
    pairs = list(itertools.product(range(q - 1), repeat=2))
    wrong = []
    for m, m2 in pairs:
        a = CauchySpec(F, k, alpha, f_m_map(F, m))
        b = CauchySpec(F, k, alpha, f_m_map(F, m2))
        equivalent = codes_permutation_equivalent(a, b) is not None
        stated = (m2 - m) % (q - 1) == 0 or (m2 + m) % (q - 1) == 0
        if equivalent != stated:
            wrong.append((m, m2))
    first = _C7.get("first")
    ok = first is not None and not wrong
    detail = (first or "q=11 / q=13 clauses did not pass") + (
        f"; E_m ~ E_m' iff m' = +-m (mod 6) fails on {len(wrong)} of {len(pairs)} pairs at q=7, k=2, "
        f"e.g. {wrong[:3]}" if wrong else "")
    record(7, ok, "length q-1 codes: cyclic at q=11, dihedral family at q=13, E_m equivalence", detail)
    assert first is not None
    assert not wrong


# -- 8 ------------------------------------------------------------------------------------


def test_criterion_8_gamma_image_is_paut():
    with criterion(8, "PAut via homographies equals the generic PAut") as st:
        total = brute = 0
        for q in (3, 4, 5, 7):
            F = field_of_order(q)
            P1 = proj_line(F)
            fstar = [z for z in P1 if z.x not in (None, 0)]
            for n in range(4, min(q + 1, 7) + 1):
                for k in range(2, n - 1):
                    for L in itertools.combinations(P1, n):
                        maps = [ScalingMap.constant(L, 1)]
                        if set(L) <= set(fstar):
                            maps += [ScalingMap.from_dict({z: f_m_map(F, m).as_dict()[z] for z in L}) for m in range(q - 1)]
                        for f in maps:
                            spec = CauchySpec(F, k, tuple(L), f)
                            C = cauchy_code(spec)
                            via = set(paut_via_gamma(spec).raw)
                            assert via == set(paut(C).raw)
                            if q**k <= 125 and n <= 6:
                                assert via == brute_paut_rows(F, C.rows(), n)
                                brute += 1
                            total += 1
        st["detail"] = f"{total} specs, {brute} also against enumeration over S_n"


# -- 9 ------------------------------------------------------------------------------------


def test_criterion_9_mds():
    with criterion(9, "Cauchy codes are MDS; duals have dimension n-k and the same PAut") as st:
        rng = np.random.default_rng(9)
        total = 0
        for q in (2, 3, 4, 5, 7, 8, 9, 11):
            F = field_of_order(q)
            P1 = proj_line(F)
            for n in range(2, min(q + 1, 10) + 1):
                for k in range(1, n):
                    for _ in range(2):
                        L = tuple(P1[i] for i in rng.permutation(q + 1)[:n])
                        spec = CauchySpec(F, k, L, ScalingMap(L, tuple(int(v) for v in rng.integers(1, q, n))))
                        C = cauchy_code(spec)
                        assert C.k == k and C.min_distance() == n - k + 1
                        D = C.dual()
                        assert D.k == n - k
                        assert paut(D) == paut(C) and paut(D).order == paut(C).order
                        total += 1
        st["detail"] = f"{total} codes, q <= 11, n <= 10"


# -- 10 -----------------------------------------------------------------------------------


def test_criterion_10_ab_two_sided_ideals():
    with criterion(10, "two-sided ideals of F[AB] are abelian group codes") as st:
        done = []
        for spec, qs in [("S3", (2, 3)), ("D8", (2, 3)), ("D12", (2, 3)), ("MC:3,2,2", (2, 3))]:
            G = group_from_spec(spec)
            A, B = abelian_factorization(G)
            for q in qs:
                F = field_of_order(q)
                rep = check_AB_theorem(G, A, B, F, route="search")
                assert rep.ok and not rep.violations
                assert check_AB_theorem(G, A, B, F, route="witness").ok
                done.append(f"{spec}/F{q}:{rep.ideals_checked}")
        # order 20 is beyond the generic length bound; the regular A x B certificate covers it
        G = group_from_spec("MC:5,4,2")
        A, B = abelian_factorization(G)
        rep = check_AB_theorem(G, A, B, field_of_order(2), route="witness")
        assert rep.ok and not rep.violations
        done.append(f"MC:5,4,2/F2:{rep.ideals_checked} (certificate)")
        st["detail"] = "ideals checked " + ", ".join(done) + "; MC:5,4,2 over F3 not enumerable (3^20 vectors)"


# -- 11 -----------------------------------------------------------------------------------


def test_criterion_11_length_q_minus_2():
    with criterion(11, "length q-2: only q = 8, with a 6-point left S3 Cauchy code") as st:
        t0 = time.time()
        for q in (7, 8, 9, 11, 13, 16):
            F = field_of_order(q)
            for k in range(2, q - 3):
                rep = length_qm2_check(F, k)
                assert rep.max_stabilizer_order <= 6
                if q != 8:
                    assert not rep.divides_six and not rep.is_left_group_code_possible and rep.witness is None
                else:
                    w = rep.witness
                    assert rep.is_left_group_code_possible and rep.witness_type == "S3"
                    assert w.n == 6 and w.q == 8 and w.k == k
                    assert types_of(w) == ["S3"]
                    assert classify(cauchy_code(w)).left_types == ["S3"]
        # generic classification of random length 5 codes over F7 finds none
        F = field_of_order(7)
        rng = np.random.default_rng(7)
        P1 = proj_line(F)
        for _ in range(100):
            L = tuple(P1[i] for i in rng.permutation(8)[:5])
            spec = CauchySpec(F, 2, L, _random_f(F, L, rng))
            assert not classify(cauchy_code(spec)).is_left_group_code
        st["detail"] = f"q in 7..16 rejected except 8; {time.time() - t0:.1f} s"
