import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtwist.abcoh import Cochain2, em_inverse
from qtwist.finquad import FinAbGroup, QuadForm, quad_form_lie
from qtwist.isotropy import (AlgebraObject, GroupTooLarge, build_S, classify_subgroup,
                             enumerate_subgroups, forced_parity, super_isotropic_subspaces,
                             supercommutative_failures, verify_supercommutative)
from qtwist.rootdata import build_root_datum

from conftest import small_forms


def _gaussian_binomial_2(n, k):
    num = den = 1
    for i in range(k):
        num *= 2 ** (n - i) - 1
        den *= 2 ** (i + 1) - 1
    return num // den


def _brute_subgroups(G):
    """Subsets closed under addition, by brute force over all subsets containing 0."""
    T = G.add_table
    rest = list(range(1, G.order))
    out = set()
    for r in range(len(rest) + 1):
        for S in itertools.combinations(rest, r):
            H = (0,) + S
            Hs = set(H)
            if all(int(T[a, b]) in Hs for a in H for b in H):
                out.add(H)
    return out


@pytest.mark.parametrize("factors,count", [((4,), 3), ((2, 2), 5), ((6,), 4)])
def test_subgroup_counts(factors, count):
    assert len(enumerate_subgroups(FinAbGroup(factors))) == count


@pytest.mark.parametrize("k", range(1, 6))
def test_elementary_abelian_counts(k):
    expected = sum(_gaussian_binomial_2(k, j) for j in range(k + 1))
    assert len(enumerate_subgroups(FinAbGroup((2,) * k))) == expected


@pytest.mark.parametrize("factors", [(2, 4), (3, 3), (2, 6), (12,), (4, 4)])
def test_enumeration_matches_brute_force(factors):
    G = FinAbGroup(factors)
    got = {H.elements for H in enumerate_subgroups(G)}
    assert got == _brute_subgroups(G)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 60))
def test_cyclic_subgroups_are_divisors(n):
    subs = enumerate_subgroups(FinAbGroup((n,)))
    assert sorted(H.order for H in subs) == [d for d in range(1, n + 1) if n % d == 0]
    assert all(H.is_cyclic() for H in subs)


def test_group_cap(monkeypatch):
    monkeypatch.setenv("QTWIST_MAX_GROUP", "8")
    with pytest.raises(GroupTooLarge):
        enumerate_subgroups(FinAbGroup((4, 4)))


def test_z2_minus_one():
    q = QuadForm.from_exponents(FinAbGroup((2,)), [0, 1])
    nontrivial = [si for si in super_isotropic_subspaces(q) if si.subgroup.order > 1]
    assert len(nontrivial) == 1
    assert nontrivial[0].parity_map() == {0: 0, 1: 1}


def test_z2_i_only_trivial():
    q = quad_form_lie(build_root_datum("A1"), 1)
    assert [si.subgroup.order for si in super_isotropic_subspaces(q)] == [1]


def _corpus():
    for t in ("A1", "A2", "A3", "A5", "A7", "B2", "B3", "C3", "C4", "D4", "D5", "D6", "D8", "E6", "E7"):
        for N in range(8):
            yield t, N, quad_form_lie(build_root_datum(t), N)


@pytest.mark.parametrize("t,N,q", list(_corpus()), ids=lambda v: str(v) if not isinstance(v, QuadForm) else "")
def test_cyclic_subgroups_with_sign_values_are_super_isotropic(t, N, q):
    for H in enumerate_subgroups(q.group):
        if H.is_cyclic() and forced_parity(q, H.elements) is not None:
            assert classify_subgroup(q, H) in ("isotropic", "super")


@pytest.mark.parametrize("t", ["D4", "D8"])
@pytest.mark.parametrize("N", [1, 3, 5, 7])
def test_d_even_full_group_is_not_super_isotropic(t, N):
    q = quad_form_lie(build_root_datum(t), N)
    full = enumerate_subgroups(q.group)[-1]
    assert full.order == 4
    assert classify_subgroup(q, full) == "not-additive"


def test_unit_algebra():
    q = quad_form_lie(build_root_datum("A2"), 1)
    x = em_inverse(q)
    si = super_isotropic_subspaces(q)[0]
    S = build_S(si, x)
    assert S.dim == 1 and S.even == (0,) and S.odd == ()
    assert verify_supercommutative(S, x)


def test_z2_superalgebra():
    q = QuadForm.from_exponents(FinAbGroup((2,)), [0, 1])
    x = em_inverse(q)
    si = super_isotropic_subspaces(q)[-1]
    S = build_S(si, x)
    assert S.dim == 2 and S.odd == (1,)
    assert verify_supercommutative(S, x)


def test_c3_superalgebra():
    q = quad_form_lie(build_root_datum("C3"), 1)
    x = em_inverse(q)
    si = super_isotropic_subspaces(q)[-1]
    S = build_S(si, x)
    assert S.dim == 2 and not si.is_isotropic
    assert verify_supercommutative(S, x)


@pytest.mark.parametrize("t,N", [("C3", 1), ("D4", 2), ("D6", 2), ("E7", 2), ("A3", 4), ("B2", 1)])
def test_sign_flip_breaks_the_algebra(t, N):
    q = quad_form_lie(build_root_datum(t), N)
    x = em_inverse(q)
    for si in super_isotropic_subspaces(q):
        if si.subgroup.order == 1:
            continue
        S = build_S(si, x)
        assert verify_supercommutative(S, x)
        K = S.k.k.copy()
        # negating k(a, a) only rescales delta_a; flip an off-diagonal entry instead
        i, j = (1, 2) if len(S.k.support) > 2 else (0, 1)
        K[i, j] = (K[i, j] + S.k.den) % (2 * S.k.den)
        bad = AlgebraObject(si, Cochain2(S.k.group, S.k.support, K, S.k.den))
        assert not verify_supercommutative(bad, x)


def test_isotropic_case_is_commutative():
    q = quad_form_lie(build_root_datum("D4"), 2)
    x = em_inverse(q)
    for si in super_isotropic_subspaces(q):
        assert si.is_isotropic
        S = build_S(si, x)
        assert S.odd == ()
        # c(a, b) = k(a, b)/k(b, a): plain commutativity
        K, den = S.k.k, S.k.den
        f = den // x.den
        pos = {e: i for i, e in enumerate(S.k.support)}
        for a in S.k.support:
            for b in S.k.support:
                assert (int(x.c[a, b]) * f - K[pos[a], pos[b]] + K[pos[b], pos[a]]) % (2 * den) == 0


@settings(max_examples=25, deadline=None)
@given(small_forms(max_order=12))
def test_every_returned_subspace_yields_an_algebra(q):
    x = em_inverse(q)
    for si in super_isotropic_subspaces(q):
        S = build_S(si, x)
        assert supercommutative_failures(S, x) == []
        # Q = (-1)^p on I
        for e, p in si.parity_map().items():
            assert q.num[e] == p * q.den


def test_json_shape():
    q = quad_form_lie(build_root_datum("C3"), 1)
    si = super_isotropic_subspaces(q)[-1]
    assert si.to_json() == {"generators": [[1]], "parity": [1]}
