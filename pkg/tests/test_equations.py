import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shlab import library
from shlab.classes import REGISTRY, check_class, class_names, classes_of, get_class, UnknownClass
from shlab.corpus import corpus
from shlab.equations import (DEDUCTION, Identity, Inequality, OutsideAmbient, UnknownIdentity, catalog,
                             chain_identity, failures, get, groups, holds, holds_pointwise_star_eq_neg,
                             identities_from, parse_identity, parse_identity_file, resolve, verify_base)
from shlab.formula import Meet, Var, parse
from shlab.algebra import evaluate_all, valuation_grid
from strategies import formulas

lib = library.get
LIB = list(library.library().values())
NEG_LIB = library.expanded_library()


def test_deduction_identity_fails_in_L1dm():
    r = holds(lib("L1dm"), DEDUCTION)
    assert not r.ok
    assert r.valuation == {"x": "1", "y": "a"}


def test_star_equals_neg_in_2e():
    assert holds(lib("2e"), parse_identity("x' = x*")).ok


def test_C1_in_L10dm():
    A = lib("L10dm")
    fails = list(failures(A, get("C1")))
    at = {(f.valuation["x"], f.valuation["y"]): (f.lhs_value, f.rhs_value) for f in fails}
    assert at[("a", "1")] == ("a", "0")
    # lexicographic order reaches (a, a) first
    assert (fails[0].valuation["x"], fails[0].valuation["y"]) == ("a", "a")
    assert holds(A, get("C1")).valuation == fails[0].valuation


def test_pointwise_star_eq_neg():
    assert holds_pointwise_star_eq_neg(lib("2e"))
    assert not holds_pointwise_star_eq_neg(lib("L1dm"))
    assert holds_pointwise_star_eq_neg(lib("2ebar"))
    assert not holds_pointwise_star_eq_neg(lib("L1"))


def test_chain_identity_construction():
    e = chain_identity("DMHC3", 2)
    assert e.lhs == parse("x1 | x2 | (x1 -> x2)")
    assert e.rhs == parse("1")
    assert holds(lib("Ch3dp"), chain_identity("An", 3)).ok
    assert not holds(lib("Ch5dm"), chain_identity("DMHC3", 3)).ok
    assert resolve("An_4") == [chain_identity("An", 4)]


@pytest.mark.parametrize("kind,n", [("DMHC3", 1), ("An", 2), ("bogus", 3)])
def test_chain_identity_range(kind, n):
    with pytest.raises(ValueError):
        chain_identity(kind, n)


def test_verify_base_C1():
    dms = library.C_dm()
    rep = verify_base([lib("L1dm")], "DMSHC3", [get("C1")], dms)
    assert rep.ok and rep.generator_side_ok
    by = {p.algebra: p for p in rep.probes}
    assert by["L1dm"].satisfies_base and by["L1dm"].member
    for i in range(2, 11):
        p = by[f"L{i}dm"]
        assert p.base_failure is not None and p.member is False


def test_verify_base_involution():
    rep = verify_base(library.C_dm(), "DQDSHC3", [parse_identity("x'' = x")], library.C20())
    assert rep.ok and rep.fully_separated
    for p in rep.probes:
        if p.algebra.endswith("dm"):
            assert p.satisfies_base
        else:
            assert p.base_failure.valuation == {"x": "a"}


def test_verify_base_FTF():
    rep = verify_base([lib("D1")], "DQDBSH", [get("FTF")], library.D_algebras())
    by = {p.algebra: p for p in rep.probes}
    assert by["D1"].satisfies_base
    assert by["D2"].base_failure.lhs_value == "1"
    assert by["D3"].base_failure.lhs_value == "a"
    assert rep.ok


def test_verify_base_generator_outside_ambient():
    with pytest.raises(OutsideAmbient):
        verify_base([lib("L1dp")], "DMSH", [get("C1")], [])


def test_verify_base_reports_generator_failure():
    rep = verify_base([lib("L2dm")], "DMSHC3", [get("C1")], [])
    assert not rep.generator_side_ok and not rep.ok
    assert rep.as_dict()["verdict"] == "fail"


def test_parse_identity_forms():
    e = parse_identity("x <= x | y")
    assert e.lhs == Meet(Var("x"), parse("x | y")) and e.rhs == Var("x")
    assert str(e) == "x <= x | y"
    bare = parse_identity("x | x'")
    assert bare.rhs == parse("1")
    assert parse_identity("x => y = 1").lhs == parse("x => y")


def test_identity_file():
    ids, grp = parse_identity_file("id a: x = x\nid b: x <= 1 # comment\ngroup g: a b\n")
    assert set(ids) == {"a", "b"} and grp == {"g": ["a", "b"]}
    with pytest.raises(ValueError):
        parse_identity_file("id a: x = x\nid a: y = y\n")
    with pytest.raises(ValueError):
        parse_identity_file("nonsense\n")


def test_catalog_names_resolve_uniquely():
    cat, grp = catalog(), groups()
    assert not set(cat) & set(grp)
    for name in [f"C{i}" for i in range(1, 17)] + ["SH2", "SH3", "SH4", "H", "FTF", "FTT", "JID",
                                                      "semilinear", "stone", "level1", "regular",
                                                      "star-regular", "kleene", "strong-kleene",
                                                      "commutative", "medial", "left-distributive"]:
        assert len(resolve(name)) == 1
    with pytest.raises(UnknownIdentity):
        resolve("no-such-identity")
    with pytest.raises(UnknownIdentity):
        get("SH1")


def test_class_and_corpus_references_resolve():
    for c in REGISTRY.values():
        for name in c.identities:
            assert resolve(name)
    for e in corpus().values():
        assert len(e.identities()) == len(e.ids)


def test_identities_from_mixed():
    out = identities_from("C1; x'' = x; SH1")
    assert out[0] == get("C1")
    assert out[1] == parse_identity("x'' = x")
    assert len(out) == 2 + len(groups()["SH1"])


def test_valuations_counted():
    for A in (lib("L1dm"), lib("D2"), lib("Ch5dm")):
        assert holds(A, get("C1")).checked == A.order ** 2
        assert holds(A, parse_identity("x & y & z = z & y & x")).checked == A.order ** 3
        assert holds(A, get("FTF")).checked == 1


@pytest.mark.parametrize("A", NEG_LIB, ids=lambda A: A.name)
def test_deduction_identity_iff_star_is_neg(A):
    assert holds(A, DEDUCTION).ok == holds_pointwise_star_eq_neg(A)


@pytest.mark.parametrize("A", NEG_LIB, ids=lambda A: A.name)
def test_deduction_identity_consequences(A):
    if holds(A, DEDUCTION).ok:
        for e in ("x & x' = 0", "x* = x'", "x* | x** = 1"):
            assert holds(A, parse_identity(e)).ok


@settings(max_examples=80, deadline=None)
@given(formulas(max_leaves=6), formulas(max_leaves=6), st.sampled_from(NEG_LIB))
def test_inequality_is_meet_form(u, v, A):
    e = Inequality(u, v).to_identity()
    names = e.variables()
    grid = valuation_grid(A.order, len(names))
    uu = evaluate_all(u, A, names, grid)
    vv = evaluate_all(v, A, names, grid)
    expected = all(A.meet[int(a)][int(b)] == int(a) for a, b in zip(uu, vv))
    assert holds(A, e).ok == expected


@settings(max_examples=60, deadline=None)
@given(formulas(max_leaves=6), st.sampled_from(NEG_LIB))
def test_holds_is_symmetric(f, A):
    e = Identity(f, parse("x | y"))
    flipped = Identity(parse("x | y"), f)
    assert holds(A, e).ok == holds(A, flipped).ok


# ---------------------------------------------------------------- classes

def test_class_registry():
    assert "DHMSH" in class_names()
    assert get_class("regular").name == "RDQDSH"
    assert get_class("JID").name == "JIDSH"
    with pytest.raises(UnknownClass):
        get_class("nope")
    chain = [c.name for c in get_class("DPCSH").chain()]
    assert chain == ["SH", "DHMSH", "DSDSH", "DQDSH", "DPCSH"]


def test_dscsh_and_dpcsh_are_separate():
    a, b = get_class("DSCSH"), get_class("DPCSH")
    assert a.identities == b.identities == ("excluded-middle",)
    assert a.ambient == "DHMSH" and b.ambient == "DQDSH"


def test_class_failures_are_explained():
    r = check_class(lib("L1"), "DHMSH")
    assert not r.ok and r.failure is None
    assert r.message == "L1 has no negation"
    assert check_class(lib("L1dm"), "DMSH").as_dict()["verdict"] == "pass"


def test_classes_of_2e():
    cs = classes_of(lib("2e"))
    for name in ("SH", "H", "DHMSH", "DMSH", "DPCSH", "DQDBSH", "V2"):
        assert name in cs


@pytest.mark.parametrize("name", class_names())
def test_class_chain_is_monotone(name):
    # membership in a class implies membership in its ambient
    c = get_class(name)
    if c.ambient == "all":
        return
    for A in NEG_LIB:
        if check_class(A, c).ok:
            assert check_class(A, c.ambient).ok
