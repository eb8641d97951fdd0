"""The twelve acceptance criteria, one test each.

Every test prints a PASS/FAIL line; the same lines are repeated in the
terminal summary (see conftest.py) so they appear in plain ``pytest`` runs.
"""
import itertools

import pytest

from shlab import library
from shlab.algebra import enumerate_sh, isomorphic
from shlab.classes import check_class, is_semiheyting
from shlab.corpus import corpus, curated, verify_entry
from shlab.equations import (DEDUCTION, chain_identity, failures, get, holds,
                             holds_pointwise_star_eq_neg, parse_identity)
from shlab.proofs import check_proof, fixture_scripts, mutation_scripts
from shlab.matrices import is_tautology, library_family
from shlab.varieties import free_algebra, lukasiewicz_term_equivalence_check, member_of_variety
from oracle import naive_free_size, value

RESULTS: dict[int, tuple[bool, str, list[str]]] = {}

lib = library.get


def record(n: int, title: str, problems: list[str]):
    ok = not problems
    RESULTS[n] = (ok, title, problems)
    print(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}: {title}")
    for p in problems:
        print(f"    {p}")
    assert ok, "; ".join(problems)


def _check(problems, cond, msg):
    if not cond:
        problems.append(msg)


def test_01_library_integrity():
    p = []
    for i in range(1, 11):
        _check(p, is_semiheyting(lib(f"L{i}")).ok, f"L{i} not semi-Heyting")
        _check(p, check_class(lib(f"L{i}dm"), "DMSH").ok, f"L{i}dm not DMSH")
        _check(p, check_class(lib(f"L{i}dp"), "DPCSH").ok, f"L{i}dp not DPCSH")
    for name in ("2e", "2ebar", "D1", "D2", "D3"):
        _check(p, check_class(lib(name), "DHMSH").ok, f"{name} not DHMSH")
    for name in ("D1", "D2", "D3"):
        _check(p, check_class(lib(name), "DQDBSH").ok, f"{name} not DQDBSH")
    record(1, "library integrity", p)


def test_02_enumeration():
    p = []
    three = enumerate_sh(3)
    _check(p, len(three) == 10, f"order 3 gave {len(three)}")
    for A, B in itertools.combinations(three, 2):
        _check(p, isomorphic(A, B) is None, f"{A.name} ~ {B.name}")
    Ls = [lib(f"L{i}") for i in range(1, 11)]
    hits = sorted(j for A in three for j, L in enumerate(Ls) if isomorphic(A, L))
    _check(p, hits == list(range(10)), f"library matches {hits}")
    _check(p, len(enumerate_sh(2)) == 2, "order 2 count")
    record(2, "enumeration of 3-element semi-Heyting algebras", p)


def test_03_deduction_characterization():
    p = []
    core = library.core_library()
    _check(p, len(core) == 25, f"{len(core)} core algebras")
    for A in core:
        d = holds(A, DEDUCTION).ok
        _check(p, d == holds_pointwise_star_eq_neg(A), f"{A.name}: identity {d}, pointwise differs")
        if d:
            for e in ("x & x' = 0", "x* = x'", "x* | x** = 1"):
                _check(p, holds(A, parse_identity(e)).ok, f"{A.name} fails {e}")
    r = holds(lib("L1dm"), DEDUCTION)
    _check(p, not r.ok and r.valuation == {"x": "1", "y": "a"}, f"L1dm witness {r.valuation}")
    record(3, "deduction identity iff x* = x'", p)


def _separation(prefix: str, suffix: str, p: list):
    for i in range(1, 11):
        e = corpus()[f"{prefix}.L{i}"]
        base = e.identities()
        for j in range(1, 11):
            A = lib(f"L{j}{suffix}")
            fails = [r for r in (holds(A, b) for b in base) if not r.ok]
            if i == j:
                _check(p, not fails, f"{prefix}.L{i} fails in its generator")
            else:
                _check(p, bool(fails) and fails[0].valuation is not None,
                       f"{prefix}.L{i} holds in L{j}{suffix}")


def test_04_base_separation():
    p = []
    _separation("dm", "dm", p)
    _separation("dp", "dp", p)
    record(4, "3-chain bases separate the dm and dp expansions", p)


def test_05_dqdshc3_base():
    p = []
    for A in library.C20():
        for name in ("dqdc3-double-star", "dqdc3-regular"):
            _check(p, holds(A, get(name)).ok, f"{A.name} fails {name}")
    fails = {tuple(f.valuation.values()): (f.lhs_value, f.rhs_value)
             for f in failures(lib("D1"), get("dqdc3-double-star"))}
    _check(p, fails.get(("a",)) == ("a", "b"), f"D1 witnesses {fails}")
    record(5, "DQDSHC3 base", p)


def test_06_d_matrix_bases():
    p = []
    expect = {"0 -> 1 = 0": "D1", "0 -> 1 = 1": "D2", "(0 -> 1)' = 0 -> 1": "D3"}
    for text, only in expect.items():
        sat = [n for n in ("D1", "D2", "D3") if holds(lib(n), parse_identity(text)).ok]
        _check(p, sat == [only], f"{text} holds in {sat}")
    record(6, "bases for V(D1), V(D2), V(D3)", p)


def test_07_lukasiewicz_bridge():
    rep = lukasiewicz_term_equivalence_check()
    p = []
    _check(p, rep.d1_ok and rep.d2_ok, f"d1={rep.d1} d2={rep.d2}")
    _check(p, rep.imp_ok, f"mismatches {rep.mismatches}")
    A = lib("L1")
    want = [[A.labels[A.imp[A.index(x)][A.index(y)]] for y in "0a1"] for x in "0a1"]
    _check(p, rep.imp_table == want, "implication table")
    record(7, "Lukasiewicz term equivalence", p)


def test_08_free_and_membership():
    p = []
    K = [lib("2e")]
    F = free_algebra(K, 1)
    _check(p, F.size == 4 == naive_free_size(K, 1), f"free size {F.size}")
    r = member_of_variety(lib("2e"), [lib("L1dm")])
    _check(p, r.member and r.certificate.kind == "embedding", f"2e in V(L1dm): {r.certificate}")
    r = member_of_variety(lib("L1dm"), [lib("2e")])
    _check(p, not r.member and r.certificate.kind == "separating identity", "L1dm in V(2e)")
    if not r.member:
        _check(p, holds(lib("2e"), r.certificate.identity).ok
               and not holds(lib("L1dm"), r.certificate.identity).ok, "identity does not separate")
    _check(p, member_of_variety(lib("D2"), library.D_algebras()).member, "D2 membership")
    record(8, "free algebra and membership", p)


def test_09_proof_kernel():
    p = []
    fx = fixture_scripts()
    for name in ("hyp-syllogism-rule", "contraposition-rule", "join-demorgan-half", "join-monotone",
                 "meet-demorgan-converse", "deduction-case-axiom", "deduction-case-smp",
                 "deduction-case-scp"):
        v = check_proof(fx[name])
        _check(p, v.accepted, f"{name}: {v}")
    for name, (s, at) in mutation_scripts().items():
        v = check_proof(s)
        _check(p, not v.accepted and v.first_failure == at, f"{name}: {v} (want line {at})")
    fam = library_family()
    for name, s in fx.items():
        if s.logic == "DHMSH" and all(d.cited for d in s.premises):
            for ln in s.lines:
                _check(p, is_tautology(fam, ln.formula).valid, f"{name} line {ln.number} unsound")
    record(9, "proof kernel fixtures, mutations and soundness", p)


def _oracle_holds(A, ident):
    names = ident.variables()
    for vals in itertools.product(range(A.order), repeat=len(names)):
        env = dict(zip(names, vals))
        if value(ident.lhs, A, env) != value(ident.rhs, A, env):
            return False
    return True


def test_10_chain_hierarchy():
    p = []
    dm = {2: "2e", 3: "L1dm", 4: "Ch4dm", 5: "Ch5dm"}
    dp = {2: "2e", 3: "L1dp", 4: "Ch4dp", 5: "Ch5dp"}
    for k in range(2, 6):
        for n in range(2, 6):
            e = chain_identity("DMHC3", n)
            got = holds(lib(dm[k]), e).ok
            _check(p, got == (k <= n) == _oracle_holds(lib(dm[k]), e), f"(DMHC3)_{n} on {k}-chain: {got}")
            if n >= 3:
                e = chain_identity("An", n)
                got = holds(lib(dp[k]), e).ok
                _check(p, got == (k <= n) == _oracle_holds(lib(dp[k]), e), f"(A{n}) on {k}-chain: {got}")
    record(10, "chain identity hierarchy", p)


def test_11_base_corpus():
    p = []
    cur = curated()
    _check(p, len(cur) >= 10, f"{len(cur)} curated bases")
    keys = {e.key for e in cur}
    _check(p, {"rdq.D2", "rdq.D1.medial", "rdm.kleene"} <= keys, "named curated bases")
    for e in cur:
        rep = verify_entry(e.key)
        _check(p, rep.ok and rep.fully_separated, f"{e.key} not fully separated")
    for key in corpus():
        rep = verify_entry(key, check_membership=False)
        _check(p, rep.generator_side_ok, f"{key}: generator-side failure")
    record(11, "curated bases separate; full sweep has no generator-side failures", p)


# Semi-linearity defines the Heyting algebras inside RDQDStSH1, so the 3-element
# chains L2..L10 and their expansions cannot satisfy it.  The criterion's
# "every library chain" clause is therefore unattainable as written; the
# check runs literally and reports FAIL.  The accurate statement is
# test_semilinear_chains_are_the_heyting_chains below.
@pytest.mark.xfail(strict=True, reason="semi-linearity fails in the non-Heyting library chains")
def test_12_jid_and_semilinearity():
    p = []
    for name in ("D2", "Ch3dp"):
        _check(p, holds(lib(name), get("JID")).ok, f"{name} fails JID")
    for A in library.chains():
        _check(p, holds(A, get("semilinear")).ok, f"{A.name} not semi-linear")
    at = {tuple(f.valuation.values()) for f in failures(lib("D1"), get("semilinear"))}
    _check(p, ("a", "b") in at, "D1 does not fail at x=a, y=b")
    record(12, "JID and semi-linearity", p)


def test_semilinear_chains_are_the_heyting_chains():
    for A in library.chains():
        assert holds(A, get("semilinear")).ok == check_class(A, "H").ok, A.name
    for name in ("D2", "Ch3dp"):
        assert holds(lib(name), get("JID")).ok
    at = {tuple(f.valuation.values()) for f in failures(lib("D1"), get("semilinear"))}
    assert ("a", "b") in at
