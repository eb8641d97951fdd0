"""Named algebras shipped with the package.

The data file holds the ten 3-element semi-Heyting chains L1..L10, the two
2-element algebras and the three 4-element algebras D1, D2, D3.  The dm/dp
expansions of the L's and the finite chains are derived here.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .algebra import (AlgebraError, FiniteAlgebra, dm_chain, dp_chain, expand_dm, expand_dp,
                      heyting_chain, parse_algebras)

CHAIN_MAX = 5

ALIASES = {
    "Ch2dm": "2e", "Ch2dp": "2e", "Ch3dm": "L1dm", "Ch3dp": "L1dp",
    "Ch2": "2", "Ch3": "L1",
}


@lru_cache(maxsize=None)
def _base() -> dict[str, FiniteAlgebra]:
    text = resources.files("shlab").joinpath("data/library.alg").read_text()
    return {A.name: A for A in parse_algebras(text)}


@lru_cache(maxsize=None)
def library() -> dict[str, FiniteAlgebra]:
    """Every named algebra, in a fixed order."""
    base = _base()
    out: dict[str, FiniteAlgebra] = {}
    for i in range(1, 11):
        out[f"L{i}"] = base[f"L{i}"]
    out["2"] = base["2e"].reduct("2")
    out["2bar"] = base["2ebar"].reduct("2bar")
    out["B4"] = base["D2"].reduct("B4")
    for k in range(4, CHAIN_MAX + 1):
        out[f"Ch{k}"] = heyting_chain(k)
    out.update(_core())
    for k in range(4, CHAIN_MAX + 1):
        out[f"Ch{k}dm"] = dm_chain(k)
        out[f"Ch{k}dp"] = dp_chain(k)
    out["T1"] = FiniteAlgebra("T1", ("0",), 0, 0, [[0]], [[0]], [[0]], [0])
    return out


@lru_cache(maxsize=None)
def _core() -> dict[str, FiniteAlgebra]:
    base = _base()
    out = {}
    for i in range(1, 11):
        out[f"L{i}dm"] = expand_dm(base[f"L{i}"])
    for i in range(1, 11):
        out[f"L{i}dp"] = expand_dp(base[f"L{i}"])
    for name in ("2e", "2ebar", "D1", "D2", "D3"):
        out[name] = base[name]
    return out


def core_library() -> list[FiniteAlgebra]:
    """The 25 dually hemimorphic algebras: C20, 2e, 2ebar, D1, D2, D3."""
    return list(_core().values())


def expanded_library() -> list[FiniteAlgebra]:
    """All library algebras that carry a negation."""
    return [A for A in library().values() if A.has_neg]


def sh_library() -> list[FiniteAlgebra]:
    """All library algebras without negation."""
    return [A for A in library().values() if not A.has_neg]


def get(name: str) -> FiniteAlgebra:
    lib = library()
    key = ALIASES.get(name, name)
    if key in lib:
        A = lib[key]
        return A if key == name else A.renamed(name)
    if name.startswith("Ch") and name[2:].rstrip("dmp").isdigit():
        k = int(name[2:].rstrip("dmp"))
        if name.endswith("dm"):
            return dm_chain(k, name)
        if name.endswith("dp"):
            return dp_chain(k, name)
        return heyting_chain(k, name)
    raise AlgebraError(f"unknown algebra {name!r}")


def get_many(names) -> list[FiniteAlgebra]:
    if isinstance(names, str):
        names = [n for n in names.split(",") if n.strip()]
    return [get(n.strip()) for n in names]


def C_dm() -> list[FiniteAlgebra]:
    return [get(f"L{i}dm") for i in range(1, 11)]


def C_dp() -> list[FiniteAlgebra]:
    return [get(f"L{i}dp") for i in range(1, 11)]


def C20() -> list[FiniteAlgebra]:
    return C_dm() + C_dp()


def D_algebras() -> list[FiniteAlgebra]:
    return [get("D1"), get("D2"), get("D3")]


def chains() -> list[FiniteAlgebra]:
    """Library algebras whose lattice is a chain."""
    out = []
    for A in library().values():
        if all(A.leq(a, b) or A.leq(b, a) for a in range(A.order) for b in range(A.order)):
            out.append(A)
    return out
