from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtwist.classifier import (ExtensionSpec, SpecError, generate_tables, graded_character,
                               graded_character_by_coset, level_identity, reference_triples,
                               spin_parity_check, subgroup_label, table_period, tables_markdown,
                               theorem_b_verdict)
from qtwist.rootdata import build_root_datum


def spec(factors, gens=(), lattice=None):
    data = {"factors": [{"type": t, "shift": N} for t, N in factors],
            "isotropic_generators": [list(g) for g in gens]}
    if lattice is not None:
        data["lattice"] = lattice
    return ExtensionSpec.from_json(data)


def verdict(factors, gens=()):
    return theorem_b_verdict(spec(factors, gens))


@pytest.mark.parametrize("factors,gens,admissible,is_super", [
    ([("C3", 1)], [[1]], True, True),
    ([("B3", 1)], [[1]], False, False),
    ([("E6", 6)], [[1]], True, False),
    ([("D6", 2)], [[1, 0], [0, 1]], True, True),
    ([("E7", 2)], [[1]], True, True),
    ([("E8", 1)], [], False, False),
    ([("E8", 2)], [], True, False),
    ([("C3", 0)], [[1]], True, False),
])
def test_verdict_examples(factors, gens, admissible, is_super):
    v = verdict(factors, gens)
    assert v.admissible == admissible
    assert v.is_super == is_super


@pytest.mark.parametrize("t", ["F4", "G2"])
def test_odd_shift_fails_every_condition(t):
    v = verdict([(t, 1)])
    assert not v.admissible and v.conditions == [None]
    assert verdict([(t, 2)]).admissible


def test_d_odd_shift_needs_vector_subgroup():
    assert verdict([("D5", 1)], [[2]]).conditions == ["3"]
    assert verdict([("D5", 1)], [[1]]).conditions == [None]


def test_verdict_json():
    v = verdict([("C3", 1)], [[1]])
    assert v.to_json() == {"admissible": True, "is_super": True, "isotropy": "super",
                           "conditions": ["2"], "even": [[0]], "odd": [[1]], "reasons": []}


def test_spec_errors():
    with pytest.raises(SpecError):
        ExtensionSpec.from_json({"factors": [], "extra": 1})
    with pytest.raises(SpecError):
        ExtensionSpec.from_json([1, 2])
    with pytest.raises(SpecError):
        spec([("C3", 1)], [[1, 0]])


def test_spec_json_round_trip():
    s = spec([("A3", 1), ("B2", 2)], [[2, 1, 1]], lattice={"gram": [[2]]})
    assert ExtensionSpec.from_json(s.to_json()).to_json() == s.to_json()


SMALL = [("A1", 2), ("A3", 1), ("C2", 3), ("B3", 2), ("A2", 3), ("D5", 2)]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(SMALL), min_size=2, max_size=3), st.data())
def test_factor_permutation_invariance(factors, data):
    s = spec(factors)
    G = s.group
    gen = list(G.elements[data.draw(st.integers(0, G.order - 1))])
    v = theorem_b_verdict(spec(factors, [gen]))
    blocks = s.blocks
    perm = data.draw(st.permutations(range(len(factors))))
    pgen = [a for i in perm for a in (gen[j] for j in blocks[i])]
    w = theorem_b_verdict(spec([factors[i] for i in perm], [pgen]))
    assert (v.admissible, v.is_super, v.isotropy) == (w.admissible, w.is_super, w.isotropy)
    assert [v.conditions[i] for i in perm] == w.conditions


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.data())
def test_generator_choice_invariance(f1, f2, data):
    s = spec([f1, f2])
    G = s.group
    x = G.elements[data.draw(st.integers(0, G.order - 1))]
    y = G.elements[data.draw(st.integers(0, G.order - 1))]
    v = theorem_b_verdict(spec([f1, f2], [x, y]))
    # the same subgroup presented by (x, x + y)
    w = theorem_b_verdict(spec([f1, f2], [x, G.add(x, y)]))
    assert sorted(v.elements) == sorted(w.elements)
    assert v.to_json()["admissible"] == w.to_json()["admissible"]
    assert v.isotropy == w.isotropy


@pytest.mark.parametrize("t", ["A1", "A3", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"])
def test_shift_periodicity(t):
    d = build_root_datum(t)
    G, _ = d._coset_table
    period = 2 * d.n_g
    gens_list = [[]] + [[list(x)] for x in G.elements[1:]]
    for N in range(4):
        for gens in gens_list:
            a, b = verdict([(t, N)], gens), verdict([(t, N + period)], gens)
            assert (a.admissible, a.is_super, a.isotropy) == (b.admissible, b.is_super, b.isotropy)


@pytest.mark.parametrize("t", ["A1", "A4", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"])
@pytest.mark.parametrize("N", range(4))
def test_level_identity(t, N):
    r = level_identity(build_root_datum(t), N)
    assert r["holds"]
    if N == 0:
        assert r["dual_level"]


def test_level_identity_text():
    assert level_identity(build_root_datum("B3"), 2)["identity"] == "1/(2(k+5))+1/(2(k'+5))=2"
    assert level_identity(build_root_datum("A1"), 1)["identity"] == "1/(k+2)+1/(k'+2)=1"


def test_spin_parity_c2():
    s = spec([("C2", 1)], [[1]])
    r = spin_parity_check(s)
    assert r["passed"] and r["combinations"] == 2 and r["counterexamples"] == []


def test_spin_parity_rejects_inadmissible():
    with pytest.raises(SpecError):
        spin_parity_check(spec([("B3", 1)], [[1]]))


def test_table_markdown_is_byte_stable():
    rows, md = generate_tables()
    assert md == tables_markdown(rows)
    _, again = generate_tables()
    assert md == again
    assert md.startswith("| type | shift | L | super |\n|---|---|---|---|\n")


def test_table_periods():
    assert table_period(build_root_datum("E6")) == 6
    assert table_period(build_root_datum("D5")) == 8
    assert table_period(build_root_datum("E8")) == 2


def test_subgroup_labels():
    d = build_root_datum("D4")
    G, _ = d._coset_table
    assert subgroup_label(d, [0]) == "Q"
    assert subgroup_label(d, range(G.order)) == "P"
    v = G.generated([d.coset(d.fundamental(0))])
    assert subgroup_label(d, v) == "Lambda_v"
    a5 = build_root_datum("A5")
    H, _ = a5._coset_table
    assert subgroup_label(a5, H.generated([(2,)])) == "2P+Q"


def test_reference_rows_cover_e_types():
    ref = reference_triples(("E7",))
    assert ("E7", 2, "P", True) in ref and ("E7", 4, "P", False) in ref
    assert ("E7", 1, "P", True) not in ref


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("N", range(4))
@pytest.mark.parametrize("m", [1, 2, 3])
def test_sl_cyclic(n, N, m):
    # Q(m lambda_1)^N = exp(pi*i*m^2*N*(n-1)/n)
    e = Fraction(m * m * N * (n - 1), n) % 2
    v = verdict([(f"A{n - 1}", N)], [[m % n]])
    if e == 1:
        assert v.admissible and v.is_super
    elif e == 0:
        assert v.admissible and not v.is_super
    else:
        assert not v.admissible


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1), (2, 3), (3, 1)])
def test_sl_so_pair_value(n, m):
    # Q at (lambda_1, lambda_{2m+1}) is exp(pi*i*(2n-1)/2n * n) * i^{2m+1} = +-1
    s = spec([(f"A{2 * n - 1}", n), (f"B{2 * m + 1}", 1)], [[1, 1]])
    q = s.quad_form
    assert q.exponent((1, 1)) in (0, 1)
    v = theorem_b_verdict(s)
    assert v.admissible


def test_character_a1():
    s = spec([("A1", 2)], [[1]])
    ch = graded_character(s, 2)
    assert ch.coeff(0) == 1 and ch.coeff(1) == 6 and ch.coeff(Fraction(3, 2)) == 4
    by = graded_character_by_coset(s, 4)
    assert by[(0,)][0] == 0 and by[(1,)][0] == 1


def test_character_isotropic_is_integral():
    s = spec([("D4", 2)], [[1, 0]])
    ch = graded_character(s, 3)
    assert all(Fraction(e).denominator == 1 for e in ch.terms)


def test_character_needs_positive_shift():
    with pytest.raises(SpecError):
        graded_character(spec([("A1", 0)], [[1]]), 2)
    with pytest.raises(SpecError):
        graded_character(spec([("A1", -2)], [[1]]), 2)


def test_character_with_lattice():
    s = spec([("A1", 1)], [[1, 1]], lattice={"gram": [[2]]})
    v = theorem_b_verdict(s)
    # i * i = -1 at the diagonal generator
    assert v.admissible and v.is_super
    ch = graded_character(s, 2)
    assert ch.coeff(0) == 1
