"""Logical matrices with designated set {1}: tautologies, consequence, decision."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import FiniteAlgebra, decode_valuation, evaluate_all, valuation_grid
from .formula import Formula, parse, sort_names, var_names
from .varieties import NotFinitelyGenerated, get_logic, get_variety


@dataclass(frozen=True)
class LogicalMatrix:
    algebra: FiniteAlgebra

    @property
    def name(self) -> str:
        return self.algebra.name

    @property
    def designated(self) -> frozenset[int]:
        return frozenset({self.algebra.top})


@dataclass(frozen=True)
class MatrixFamily:
    name: str
    matrices: tuple[LogicalMatrix, ...]

    def __post_init__(self):
        if not self.matrices:
            raise ValueError("a matrix family needs at least one matrix")

    @classmethod
    def of(cls, name: str, algebras: Iterable[FiniteAlgebra]) -> "MatrixFamily":
        return cls(name, tuple(LogicalMatrix(A) for A in algebras))

    @property
    def algebras(self) -> list[FiniteAlgebra]:
        return [M.algebra for M in self.matrices]


@dataclass
class Verdict:
    valid: bool
    matrix: str | None = None
    valuation: dict | None = None
    value: str | None = None
    checked: int = 0

    def __bool__(self):
        return self.valid

    def as_dict(self) -> dict:
        if self.valid:
            return {"verdict": "valid", "matrix_name": None, "valuation": None, "value": None}
        return {"verdict": "countermodel", "matrix_name": self.matrix,
                "valuation": self.valuation, "value": self.value}

    def __str__(self):
        if self.valid:
            return "valid"
        v = ", ".join(f"{k}={x}" for k, x in self.valuation.items())
        return f"countermodel in {self.matrix}" + (f" at {v}" if v else "") + f": value {self.value}"


def _as_formula(f) -> Formula:
    return parse(f) if isinstance(f, str) else f


def is_tautology(fam: MatrixFamily, f) -> Verdict:
    """Valid iff f takes the value 1 under every valuation in every matrix."""
    f = _as_formula(f)
    names = var_names(f)
    checked = 0
    for M in fam.matrices:
        A = M.algebra
        vals = evaluate_all(f, A, names)
        checked += vals.size
        bad = np.flatnonzero(vals != A.top)
        if bad.size:
            k = int(bad[0])
            return Verdict(False, A.name, decode_valuation(A, names, k), A.labels[int(vals[k])], checked)
    return Verdict(True, checked=checked)


def consequence(fam: MatrixFamily, gamma: Sequence, f) -> Verdict:
    """Gamma |= f: every valuation designating all of Gamma designates f."""
    gamma = [_as_formula(g) for g in gamma]
    f = _as_formula(f)
    names = sort_names({n for g in gamma + [f] for n in var_names(g)})
    checked = 0
    for M in fam.matrices:
        A = M.algebra
        grid = valuation_grid(A.order, len(names))
        ok = np.ones(grid.shape[1], dtype=bool)
        for g in gamma:
            ok &= evaluate_all(g, A, names, grid) == A.top
        vals = evaluate_all(f, A, names, grid)
        checked += vals.size
        bad = np.flatnonzero(ok & (vals != A.top))
        if bad.size:
            k = int(bad[0])
            return Verdict(False, A.name, decode_valuation(A, names, k), A.labels[int(vals[k])], checked)
    return Verdict(True, checked=checked)


def family(logic_name: str) -> MatrixFamily:
    """Generator matrices of a registered finitely generated logic.

    Raises NotFinitelyGenerated for logics with no finite generating family.
    """
    if logic_name in ("library", "DHMSH-library"):
        return library_family()
    lg = get_logic(logic_name)
    v = get_variety(lg.variety)
    return MatrixFamily.of(logic_name, v.generator_algebras())


def library_family() -> MatrixFamily:
    """Every library algebra with a negation; a finite sample of DHMSH."""
    from .library import expanded_library
    return MatrixFamily.of("DHMSH-library", expanded_library())


def decide(logic_name: str, f) -> Verdict:
    return is_tautology(family(logic_name), f)


def decidable_logics() -> list[str]:
    from .varieties import LOGICS
    out = []
    for name, lg in LOGICS.items():
        try:
            if get_variety(lg.variety).finitely_generated:
                out.append(name)
        except KeyError:
            pass
    return out


__all__ = ["LogicalMatrix", "MatrixFamily", "Verdict", "is_tautology", "consequence", "family",
           "library_family", "decide", "decidable_logics", "NotFinitelyGenerated"]
