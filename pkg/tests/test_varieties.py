import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shlab import library
from shlab.algebra import AlgebraError, evaluate, is_homomorphism
from shlab.classes import check_class
from shlab.equations import DEDUCTION, holds
from shlab.formula import Var, parse, render
from shlab.matrices import MatrixFamily, is_tautology
from shlab.varieties import (LOGICS, VARIETIES, CapExceeded, NotFinitelyGenerated, deduction_property,
                             free_algebra, get_logic, get_variety, katrinak_imp,
                             lukasiewicz_algebra, lukasiewicz_term_equivalence_check,
                             member_of_variety, reduce_generators, registry_dump)
from oracle import naive_free_size
from strategies import formulas

lib = library.get


@pytest.mark.parametrize("K,m", [(["2e"], 1), (["2e"], 0), (["L1dm"], 1), (["L1dp"], 1), (["D2"], 1),
                                 (["2e", "2ebar"], 1), (["L1dm", "L1dp"], 1), (["2e"], 2)])
def test_free_size_matches_naive_closure(K, m):
    algs = library.get_many(K)
    assert free_algebra(algs, m).size == naive_free_size(algs, m)


def test_free_examples():
    F = free_algebra([lib("2e")], 1)
    assert sorted(F.tuples()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert sorted(render(t) for t in F.terms) == sorted(["0", "1", "x", "x'"])
    assert free_algebra([lib("2e")], 0).size == 2
    assert free_algebra([lib("L1dm")], 1).size == 12


def test_free_size_two_generators_L1dm():
    # frozen from the naive closure in tests/oracle.py (about five minutes to recompute)
    assert free_algebra([lib("L1dm")], 2).size == 3888


def test_free_caps():
    with pytest.raises(CapExceeded):
        free_algebra([lib("Ch5dm")], 3)
    with pytest.raises(CapExceeded):
        free_algebra([lib("L1dm")], 2, cap=100)
    with pytest.raises(ValueError):
        free_algebra([], 1)
    with pytest.raises(AlgebraError):
        free_algebra([lib("2e"), lib("L1")], 1)


def test_free_generators_generate_and_terms_agree():
    F = free_algebra([lib("L1dm")], 1)
    A = F.algebra
    assert len(F.generators) == 1
    from shlab.algebra import closure
    assert len(closure(A, F.generators)) == A.order
    for i, t in enumerate(F.terms):
        assert F.element_of(t) == i
    assert F.equal(parse("x''"), parse("x"))
    assert not F.equal(parse("x | x'"), parse("1"))


@pytest.mark.parametrize("K,m", [(["2e"], 2), (["L1dm"], 1), (["D2"], 1), (["L1dp"], 1)])
def test_free_universal_property(K, m):
    F = free_algebra(library.get_many(K), m)
    names = F.generator_names
    FA = F.algebra
    for B in library.expanded_library():
        if B.order > 4:
            continue
        if not member_of_variety(B, library.get_many(K)).member:
            continue
        for vals in itertools.product(range(B.order), repeat=m):
            env = dict(zip(names, vals))
            h = [evaluate(t, B, env) for t in F.terms]
            assert is_homomorphism(FA, B, h), (B.name, vals)


def test_membership_examples():
    r = member_of_variety(lib("2e"), [lib("L1dm")])
    assert r.member and r.certificate.kind == "embedding"
    r = member_of_variety(lib("L1dm"), [lib("2e")])
    assert not r.member
    cert = r.certificate
    assert cert.kind == "separating identity"
    assert holds(lib("2e"), cert.identity).ok
    assert not holds(lib("L1dm"), cert.identity).ok
    assert member_of_variety(lib("D2"), library.D_algebras()).member
    assert member_of_variety(lib("T1"), [lib("2e")]).member


def test_membership_product_and_quotient():
    from shlab.algebra import congruences, product, quotient
    P = product(lib("L1dm"), lib("2ebar"))
    K = [lib("L1dm"), lib("2ebar")]
    assert member_of_variety(P, K).member
    for t in congruences(P):
        assert member_of_variety(quotient(P, t), K).member


def test_reduce_generators():
    kept = reduce_generators([lib("2e"), lib("L1dm"), lib("L2dm")])
    assert {B.name for B in kept} == {"L1dm", "L2dm"}


@pytest.mark.parametrize("name", [v.name for v in VARIETIES.values() if v.cls and v.generators])
def test_dual_definition_consistency(name):
    v = VARIETIES[name]
    gens = v.generator_algebras()
    for A in library.expanded_library():
        try:
            m = member_of_variety(A, gens)
        except CapExceeded:
            continue
        assert m.member == check_class(A, v.cls).ok, A.name


NESTED = [(["L1dm"], ["L1dm", "L2dm"]), (["D1"], ["D1", "D2", "D3"]), (["2e"], ["2e", "2ebar"]),
          (["2ebar"], ["L1dm", "2ebar"])]


@settings(max_examples=120, deadline=None)
@given(formulas(max_leaves=8), st.sampled_from(NESTED))
def test_theorem_sets_antitone(f, pair):
    small, big = (MatrixFamily.of("k", library.get_many(p)) for p in pair)
    if is_tautology(big, f).valid:
        assert is_tautology(small, f).valid


def test_deduction_property_examples():
    assert deduction_property("V(2e,2ebar)").holds
    r = deduction_property("V(L1dm)")
    assert not r.holds and r.failure.valuation == {"x": "1", "y": "a"}
    assert deduction_property("T").holds
    with pytest.raises(NotFinitelyGenerated):
        deduction_property("DHMSH")


def test_deduction_property_classification_of_two_element():
    # every 2-element algebra carries the property; elsewhere it tracks the identity
    for A in library.expanded_library():
        dp = deduction_property([A]).holds
        if A.order == 2:
            assert dp
        assert dp == holds(A, DEDUCTION).ok


def test_essentially_stone_expansions_have_the_property():
    from shlab.algebra import essentially_stone_expand
    for A in library.sh_library():
        if check_class(A, "StSH").ok:
            assert deduction_property([essentially_stone_expand(A)]).holds


def test_lukasiewicz_bridge():
    rep = lukasiewicz_term_equivalence_check()
    assert rep.ok and not rep.mismatches
    assert rep.d1 == ["0", "0", "1"] and rep.d2 == ["0", "1", "1"]
    L = lukasiewicz_algebra()
    assert katrinak_imp(1, 0, L) == 0
    assert all(katrinak_imp(i, i, L) == 2 for i in range(3))
    A = lib("L1dm")
    assert A.labels[A.imp[A.neg[A.index("a")]][A.bottom]] == "0"


def test_registry():
    assert LOGICS["DHMSH"].axioms == tuple(f"A{i}" for i in range(1, 15))
    assert LOGICS["DHMSH"].rules == ("smp", "scp")
    assert LOGICS["LM"].rules == ("mp", "cp") and LOGICS["LM"].variety == "DMH"
    assert get_variety("DQDBSH").generators == ("D1", "D2", "D3")
    assert get_variety("DQDStSH1").status == "open"
    assert get_variety("RDQDStSH1").finitely_generated
    assert get_logic("L(2e)").variety == "V(2e)"
    assert get_variety("V(2e,L1dm)").generators == ("2e", "L1dm")
    with pytest.raises(KeyError):
        get_variety("nope")
    dump = registry_dump()
    assert {"classes", "varieties", "logics"} <= set(dump)
    for v in dump["varieties"]:
        assert v["generators"] or v["class"]


def test_list2_logics_extend_their_base():
    for lg in LOGICS.values():
        if lg.base is not None:
            assert lg.base in LOGICS


def test_deduction_property_outside_dqdsh():
    # L1 with x' := x* has the property but lies outside V(2e, 2ebar);
    # the two-element classification is a statement about DQDSH extensions
    from shlab.algebra import essentially_stone_expand
    A = essentially_stone_expand(lib("L1"))
    assert check_class(A, "DHMSH").ok and not check_class(A, "DQDSH").ok
    assert deduction_property([A]).holds
    assert not member_of_variety(A, [lib("2e"), lib("2ebar")]).member
    for B in library.expanded_library():
        if check_class(B, "DQDSH").ok and deduction_property([B]).holds:
            assert member_of_variety(B, [lib("2e"), lib("2ebar")]).member
