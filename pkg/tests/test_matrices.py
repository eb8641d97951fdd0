import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shlab import library
from shlab.formula import parse
from shlab.matrices import (MatrixFamily, NotFinitelyGenerated, consequence, decidable_logics, decide,
                            family, is_tautology, library_family)
from oracle import random_corpus, tautology
from strategies import formulas

lib = library.get


def test_excluded_middle_in_dp_family():
    assert decide("DPCSHC3", "x | x'").valid


def test_excluded_middle_fails_in_dm_family():
    v = decide("DMSHC3", "x | x'")
    assert not v.valid
    assert (v.matrix, v.valuation, v.value) == ("L1dm", {"x": "a"}, "a")
    assert v.as_dict() == {"verdict": "countermodel", "matrix_name": "L1dm",
                           "valuation": {"x": "a"}, "value": "a"}


def test_double_negation_classical():
    fam = MatrixFamily.of("2e", [lib("2e")])
    assert is_tautology(fam, "((x -> 0) -> 0) => x").valid


def test_consequence_examples():
    assert consequence(library_family(), ["x => y"], "y' => x'").valid
    assert consequence(library_family(), ["x"], "x & x").valid
    fam = MatrixFamily.of("2e", [lib("2e")])
    v = consequence(fam, [], "x")
    assert not v.valid and v.valuation == {"x": "0"}


def test_consequence_premise_filter():
    # y' => x' is not a tautology of the library, only a consequence
    assert not is_tautology(library_family(), "(x => y) => (y' => x')").valid


def test_decide_examples():
    assert decide("V(D2)", "(x | y) <=> ((x -> y) -> y)").valid
    assert decide("L(2ebar)", "(0 -> 1) => 0").valid
    assert decide("DQDSHC3", "(x & x'*') => (y | y*)").valid
    assert not decide("L(2e)", "(0 -> 1) => 0").valid


def test_decide_refuses_infinite_logic():
    with pytest.raises(NotFinitelyGenerated) as exc:
        decide("DHMSH", "x")
    assert "not finitely generated" in str(exc.value)
    with pytest.raises(NotFinitelyGenerated) as exc:
        decide("DQDStSH1", "x")
    assert "open" in str(exc.value)


def test_registry_logics_decidable():
    names = decidable_logics()
    for n in ["V(2e)", "V(2ebar)", "V(2e,2ebar)", "DQDSHC3", "DMSHC3", "DPCSHC3", "DQDBSH", "V(D1)",
              "V(D2)", "V(D3)", "RDQDStSH1", "V(L3dm)", "V(L7dp)", "DMHC4", "DPCHC5"]:
        assert n in names
    for n in names:
        fam = family(n)
        assert fam.matrices


def test_empty_family_rejected():
    with pytest.raises(ValueError):
        MatrixFamily("empty", ())


def test_designated_is_top():
    for M in library_family().matrices:
        assert M.designated == {M.algebra.top}


def test_countermodel_is_deterministic():
    a = decide("DQDSHC3", "x | (x -> y)")
    b = decide("DQDSHC3", "x | (x -> y)")
    assert a.as_dict() == b.as_dict()


THREE = library.C20()
CORPUS = random_corpus(1000, seed=7)


@pytest.mark.parametrize("A", THREE, ids=lambda A: A.name)
def test_three_valued_agrees_with_oracle(A):
    fam = MatrixFamily.of(A.name, [A])
    for f in CORPUS:
        assert is_tautology(fam, f).valid == tautology(f, [A]), f


def test_family_verdicts_agree_with_oracle():
    for name in ("DMSHC3", "DPCSHC3", "DQDSHC3"):
        algs = family(name).algebras
        for f in CORPUS[:300]:
            assert decide(name, f).valid == tautology(f, algs)


NESTED = [([lib("L1dm")], library.C_dm()), (library.C_dm(), library.C20()),
          ([lib("D1")], library.D_algebras()), ([lib("2e")], [lib("2e"), lib("2ebar")])]


@settings(max_examples=150, deadline=None)
@given(formulas(max_leaves=8), st.sampled_from(NESTED))
def test_adding_matrices_shrinks_tautologies(f, pair):
    small, big = pair
    if is_tautology(MatrixFamily.of("big", big), f).valid:
        assert is_tautology(MatrixFamily.of("small", small), f).valid


@settings(max_examples=100, deadline=None)
@given(formulas(max_leaves=6), formulas(max_leaves=6))
def test_consequence_of_tautology(f, g):
    fam = MatrixFamily.of("C20", library.C20())
    if is_tautology(fam, g).valid:
        assert consequence(fam, [f], g).valid
    assert consequence(fam, [f, g], f).valid
