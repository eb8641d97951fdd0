"""Finitely generated varieties: free algebras, membership, registries.

The free algebra F_V(K)(m) is computed as the subalgebra of the product of
the powers A^(A^m), A in K, generated by the m projection tuples.  Every
element carries a witness term, so two terms are equal in the free algebra
exactly when they agree under every valuation into every generator.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import (AlgebraError, FiniteAlgebra, decode_valuation, embeddings, evaluate,
                      evaluate_all, generating_set, isomorphic, valuation_grid)
from .formula import BOT, TOP, Formula, Imp, Join, Meet, Neg, Var, render, var_names
from .equations import DEDUCTION, HoldsResult, Identity, holds

DEFAULT_MAX_COORDS = 64
DEFAULT_MAX_ELEMENTS = 200_000
_CHUNK_CELLS = 1 << 22


class CapExceeded(RuntimeError):
    def __init__(self, message: str, partial_size: int | None = None):
        super().__init__(message)
        self.partial_size = partial_size


def max_elements(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("SHLAB_MAX_CLOSURE")
    return int(env) if env else DEFAULT_MAX_ELEMENTS


def generator_names(m: int) -> list[str]:
    base = ["x", "y", "z", "u", "w"]
    return base[:m] if m <= len(base) else [f"x{i + 1}" for i in range(m)]


# ---------------------------------------------------------------- closure engine

@dataclass
class _Block:
    algebra: FiniteAlgebra
    cols: np.ndarray          # (m, c) valuations, one column per coordinate

    @property
    def width(self) -> int:
        return self.cols.shape[1]


@dataclass
class _Conflict:
    first: int
    second: int
    second_term: Formula
    second_extra: tuple


def _apply_binary(blocks, table_name, X, Y):
    """op over every pair (row of X, row of Y); result shape (p, q, C)."""
    parts, off = [], 0
    for b in blocks:
        T = getattr(b.algebra, table_name)
        sl = slice(off, off + b.width)
        parts.append(T[X[:, None, sl], Y[None, :, sl]])
        off += b.width
    return np.concatenate(parts, axis=2) if parts else np.zeros((len(X), len(Y), 0), dtype=np.int64)


def _apply_neg(blocks, X):
    parts, off = [], 0
    for b in blocks:
        parts.append(b.algebra.np_neg[X[:, off:off + b.width]])
        off += b.width
    return np.concatenate(parts, axis=1) if parts else np.zeros((len(X), 0), dtype=np.int64)


def _constant(blocks, which):
    vals = [np.full(b.width, getattr(b.algebra, which), dtype=np.int64) for b in blocks]
    return np.concatenate(vals) if vals else np.zeros(0, dtype=np.int64)


class _KeyPacker:
    """Packs the key columns of rows into sortable 1-D keys."""

    def __init__(self, widths_orders, kw):
        bits = max(1, max((int(o - 1).bit_length() for o in widths_orders), default=1))
        self.per_word = max(1, 64 // bits)
        self.words = max(1, -(-kw // self.per_word))
        self.kw = kw
        self.shifts = (np.arange(self.per_word, dtype=np.uint64) * np.uint64(bits))

    def pack(self, R: np.ndarray) -> np.ndarray:
        n = len(R)
        K = np.zeros((n, self.words * self.per_word), dtype=np.uint64)
        K[:, :self.kw] = R[:, :self.kw]
        W = (K.reshape(n, self.words, self.per_word) << self.shifts).sum(axis=2, dtype=np.uint64)
        if self.words == 1:
            return W[:, 0]
        return np.ascontiguousarray(W).view(np.dtype((np.void, 8 * self.words))).ravel()


def _close(key_blocks: list[_Block], extra_blocks: list[_Block], m: int, limit: int):
    """Semi-naive closure of the generator tuples.

    Rows are deduplicated on the key blocks; the extra blocks ride along and a
    disagreement on them for equal keys is reported as a conflict.
    Returns (rows, terms, conflict).
    """
    blocks = key_blocks + extra_blocks
    kw = sum(b.width for b in key_blocks)
    total = sum(b.width for b in blocks)
    use_neg = all(b.algebra.has_neg for b in blocks)
    names = generator_names(m)
    packer = _KeyPacker([b.algebra.order for b in blocks], kw)
    seeds = [(BOT, _constant(blocks, "bottom")), (TOP, _constant(blocks, "top"))]
    for i in range(m):
        seeds.append((Var(names[i]), np.concatenate([b.cols[i] for b in blocks])
                      if blocks else np.zeros(0, dtype=np.int64)))
    rows = np.zeros((max(16, len(seeds)), total), dtype=np.int64)
    terms: list[Formula] = []
    known_keys = packer.pack(np.zeros((0, total), dtype=np.int64))
    known_idx = np.zeros(0, dtype=np.int64)
    pending: dict = {}      # key -> index, for elements found in the current round

    def add_new(row, term, key):
        nonlocal rows
        n = len(terms)
        if n >= limit:
            raise CapExceeded(f"closure exceeded {limit} elements", n)
        if n == len(rows):
            rows = np.concatenate([rows, np.zeros_like(rows)])
        rows[n] = row
        terms.append(term)
        pending[key] = n

    def offer(cand: np.ndarray, make_term) -> _Conflict | None:
        """Add the rows of cand not yet present; make_term(t) builds the term of row t."""
        nonlocal known_keys
        keys = packer.pack(cand)
        if len(known_keys):
            pos = np.searchsorted(known_keys, keys)
            pos_c = np.minimum(pos, len(known_keys) - 1)
            hit = known_keys[pos_c] == keys
        else:
            pos_c = np.zeros(len(keys), dtype=np.int64)
            hit = np.zeros(len(keys), dtype=bool)
        if total > kw and hit.any():
            j = known_idx[pos_c[hit]]
            bad = np.any(rows[j, kw:] != cand[hit, kw:], axis=1)
            if bad.any():
                t = int(np.flatnonzero(hit)[np.argmax(bad)])
                return _Conflict(int(j[np.argmax(bad)]), -1, make_term(t), tuple(cand[t, kw:]))
        rest = np.flatnonzero(~hit)
        if len(rest) == 0:
            return None
        _, first = np.unique(keys[rest], return_index=True)
        for t in rest[np.sort(first)]:
            k = keys[t].item() if packer.words == 1 else keys[t].tobytes()
            j = pending.get(k)
            if j is None:
                add_new(cand[t], make_term(int(t)), k)
            elif total > kw and not np.array_equal(rows[j, kw:], cand[t, kw:]):
                return _Conflict(j, -1, make_term(int(t)), tuple(cand[t, kw:]))
        # duplicates of pending elements inside rest with differing extras
        if total > kw:
            for t in rest:
                k = keys[t].item() if packer.words == 1 else keys[t].tobytes()
                j = pending[k]
                if not np.array_equal(rows[j, kw:], cand[t, kw:]):
                    return _Conflict(j, -1, make_term(int(t)), tuple(cand[t, kw:]))
        return None

    def settle():
        nonlocal known_keys, known_idx
        if not pending:
            return
        idx = np.fromiter(pending.values(), dtype=np.int64, count=len(pending))
        keys = packer.pack(rows[idx])
        allk = np.concatenate([known_keys, keys])
        alli = np.concatenate([known_idx, idx])
        order = np.argsort(allk, kind="stable")
        known_keys, known_idx = allk[order], alli[order]
        pending.clear()

    seed_rows = np.stack([r for _, r in seeds]) if seeds else np.zeros((0, total), dtype=np.int64)
    c = offer(seed_rows, lambda t: seeds[t][0])
    if c:
        return rows[:len(terms)], terms, c
    settle()
    lo = 0
    while lo < len(terms):
        hi = len(terms)
        if use_neg:
            c = offer(_apply_neg(blocks, rows[lo:hi]), lambda t, lo=lo: Neg(terms[lo + t]))
            if c:
                return rows[:len(terms)], terms, c
        jobs = [("np_meet", Meet, lo, hi, 0, hi), ("np_join", Join, lo, hi, 0, hi),
                ("np_imp", Imp, lo, hi, 0, hi), ("np_imp", Imp, 0, lo, lo, hi)]
        for table, ctor, a0, a1, b0, b1 in jobs:
            if a1 <= a0 or b1 <= b0:
                continue
            Y = rows[b0:b1].copy()
            q = b1 - b0
            step = max(1, _CHUNK_CELLS // max(1, q * max(1, total)))
            for s in range(a0, a1, step):
                e = min(a1, s + step)
                out = _apply_binary(blocks, table, rows[s:e], Y).reshape(-1, total)
                c = offer(out, lambda t, s=s, q=q, b0=b0, ctor=ctor:
                          ctor(terms[s + t // q], terms[b0 + t % q]))
                if c:
                    return rows[:len(terms)], terms, c
        settle()
        lo = hi
    return rows[:len(terms)], terms, None


def _full_blocks(K: Sequence[FiniteAlgebra], m: int) -> list[_Block]:
    return [_Block(B, valuation_grid(B.order, m)) for B in K]


def coordinate_count(K: Sequence[FiniteAlgebra], m: int) -> int:
    return sum(B.order ** m for B in K)


# ---------------------------------------------------------------- free algebras

@dataclass
class FreeAlgebraResult:
    K: tuple[FiniteAlgebra, ...]
    arity: int
    rows: np.ndarray
    terms: list[Formula]

    @property
    def size(self) -> int:
        return len(self.terms)

    @property
    def generator_names(self) -> list[str]:
        return generator_names(self.arity)

    @property
    def generators(self) -> list[int]:
        """Element indices of the free generators."""
        return [self.element_of(Var(nm)) for nm in self.generator_names]

    def tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in r) for r in self.rows]

    @cached_property
    def _index(self) -> dict[bytes, int]:
        return {r.tobytes(): i for i, r in enumerate(self.rows)}

    def value_row(self, f: Formula) -> np.ndarray:
        names = self.generator_names
        extra = [n for n in var_names(f) if n not in names]
        if extra:
            raise KeyError(f"variables {extra} are not free generators")
        parts = [evaluate_all(f, B, names, valuation_grid(B.order, self.arity)) for B in self.K]
        return np.concatenate(parts).astype(np.int64) if parts else np.zeros(0, dtype=np.int64)

    def element_of(self, f: Formula) -> int:
        return self._index[self.value_row(f).tobytes()]

    def equal(self, f: Formula, g: Formula) -> bool:
        """f = g holds in V(K) (both over the free generators)."""
        return np.array_equal(self.value_row(f), self.value_row(g))

    @cached_property
    def algebra(self) -> FiniteAlgebra:
        blocks = _full_blocks(self.K, self.arity)
        R = self.rows
        idx = self._index
        n = len(R)

        def table(name):
            out = _apply_binary(blocks, name, R, R)
            return [[idx[out[i, j].tobytes()] for j in range(n)] for i in range(n)]

        neg = None
        if all(B.has_neg for B in self.K):
            neg = [idx[r.tobytes()] for r in _apply_neg(blocks, R)]
        labels = tuple(f"e{i}" for i in range(n))
        return FiniteAlgebra(f"F({','.join(B.name for B in self.K)};{self.arity})", labels,
                             idx[_constant(blocks, "bottom").tobytes()],
                             idx[_constant(blocks, "top").tobytes()],
                             table("np_meet"), table("np_join"), table("np_imp"), neg,
                             check=False)

    def as_dict(self) -> dict:
        return {"generators": [B.name for B in self.K], "arity": self.arity, "size": self.size,
                "elements": [{"index": i, "term": render(t), "tuple": list(map(int, r))}
                             for i, (t, r) in enumerate(zip(self.terms, self.rows))]}


def free_algebra(K: Sequence[FiniteAlgebra], m: int, cap: int | None = None, *,
                 max_coords: int = DEFAULT_MAX_COORDS) -> FreeAlgebraResult:
    """Free algebra on m generators in V(K), each element with a witness term."""
    K = tuple(K)
    if not K:
        raise ValueError("free_algebra needs at least one generator algebra")
    if len({B.has_neg for B in K}) > 1:
        raise AlgebraError("generator algebras must all have, or all lack, a negation")
    coords = coordinate_count(K, m)
    if coords > max_coords:
        raise CapExceeded(f"{coords} coordinates exceed the cap of {max_coords}")
    rows, terms, _ = _close(_full_blocks(K, m), [], m, max_elements(cap))
    return FreeAlgebraResult(K, m, rows, terms)


# ---------------------------------------------------------------- membership

@dataclass
class Certificate:
    kind: str                 # trivial | generator | embedding | homomorphism | separating identity
    generator: str | None = None
    mapping: dict | None = None
    identity: Identity | None = None
    valuation: dict | None = None
    values: tuple | None = None

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.generator:
            out["generator"] = self.generator
        if self.mapping is not None:
            out["mapping"] = self.mapping
        if self.identity is not None:
            out["identity"] = str(self.identity)
            out["valuation"] = self.valuation
            out["values"] = list(self.values)
        return out

    def __str__(self):
        if self.kind == "separating identity":
            v = ", ".join(f"{k}={x}" for k, x in self.valuation.items())
            where = f" at {v}" if v else ""
            return f"separating identity {self.identity} fails{where} ({self.values[0]} vs {self.values[1]})"
        if self.mapping is not None:
            m = ", ".join(f"{k}->{x}" for k, x in self.mapping.items())
            where = f" into {self.generator}" if self.generator else ""
            return f"{self.kind}{where}: {m}"
        return self.kind


@dataclass
class MembershipResult:
    algebra: str
    generators: list[str]
    member: bool
    certificate: Certificate

    def __bool__(self):
        return self.member

    def as_dict(self) -> dict:
        return {"algebra": self.algebra, "generators": self.generators,
                "verdict": "member" if self.member else "not a member",
                "certificate": self.certificate.as_dict()}


def reduce_generators(K: Sequence[FiniteAlgebra]) -> list[FiniteAlgebra]:
    """Drop generators that embed into another kept generator; V(K) is unchanged."""
    K = sorted(K, key=lambda B: -B.order)
    kept: list[FiniteAlgebra] = []
    for B in K:
        if any(next(embeddings(B, C), None) is not None for C in kept):
            continue
        kept.append(B)
    return kept


def member_of_variety(A: FiniteAlgebra, K: Sequence[FiniteAlgebra], cap: int | None = None, *,
                      max_coords: int = DEFAULT_MAX_COORDS) -> MembershipResult:
    """Decide A in V(K) for finite A and a finite list K.

    A is generated by g elements, so A is in V(K) iff A is a homomorphic image
    of the g-generated free algebra, iff any two witness terms equal in the
    free algebra are equal in A under the chosen generators.
    """
    names = [B.name for B in K]
    if A.order == 1:
        return MembershipResult(A.name, names, True, Certificate("trivial"))
    if any(B.has_neg != A.has_neg for B in K):
        raise AlgebraError("algebra and generators must agree on having a negation")
    for B in K:
        iso = isomorphic(A, B)
        if iso is not None:
            return MembershipResult(A.name, names, True, Certificate("generator", B.name, iso))
    for B in K:
        emb = next(embeddings(A, B), None)
        if emb is not None:
            mapping = {A.labels[i]: B.labels[j] for i, j in enumerate(emb)}
            return MembershipResult(A.name, names, True, Certificate("embedding", B.name, mapping))
    Kr = reduce_generators(K)
    gens = generating_set(A)
    g = len(gens)
    coords = coordinate_count(Kr, g)
    if coords > max_coords:
        raise CapExceeded(f"{coords} coordinates exceed the cap of {max_coords}")
    extra = _Block(A, np.array([[x] for x in gens], dtype=np.int64).reshape(g, 1))
    rows, terms, conflict = _close(_full_blocks(Kr, g), [extra], g, max_elements(cap))
    gnames = generator_names(g)
    valuation = {gnames[i]: A.labels[x] for i, x in enumerate(gens)}
    if conflict is None:
        return MembershipResult(A.name, names, True, Certificate("homomorphism", mapping=valuation))
    s, t = terms[conflict.first], conflict.second_term
    ident = Identity(s, t, "separating")
    vals = (A.labels[int(rows[conflict.first, -1])], A.labels[int(conflict.second_extra[0])])
    return MembershipResult(A.name, names, False,
                            Certificate("separating identity", identity=ident,
                                        valuation=valuation, values=vals))


# ---------------------------------------------------------------- registries

@dataclass(frozen=True)
class VarietySpec:
    name: str
    generators: tuple[str, ...] | None = None     # finite generating algebras, if known
    cls: str | None = None                        # identity definition (class registry name)
    note: str = ""
    status: str = "finite"                        # finite | infinite | open

    @property
    def finitely_generated(self) -> bool:
        return self.generators is not None

    def generator_algebras(self) -> list[FiniteAlgebra]:
        from .library import get_many
        if self.generators is None:
            raise NotFinitelyGenerated(self.name, self.status, self.note)
        return get_many(list(self.generators))

    def as_dict(self) -> dict:
        return {"name": self.name, "generators": list(self.generators) if self.generators else None,
                "class": self.cls, "status": self.status, "note": self.note}


class NotFinitelyGenerated(LookupError):
    def __init__(self, name, status="infinite", note=""):
        msg = {"open": f"{name}: decidability is an open problem; no finite generating family is known",
               }.get(status, f"{name} is not finitely generated here; use the proof kernel or a named extension")
        if note:
            msg += f" ({note})"
        super().__init__(msg)
        self.name, self.status = name, status


def _dm(*idx):
    return tuple(f"L{i}dm" for i in idx)


def _dp(*idx):
    return tuple(f"L{i}dp" for i in idx)


_ALL = tuple(range(1, 11))
_D = ("D1", "D2", "D3")


def _build_varieties() -> dict[str, VarietySpec]:
    specs = [
        VarietySpec("V(2e)", ("2e",), note="defined by 0 -> 1 = 1 mod V(2e,2ebar)"),
        VarietySpec("V(2ebar)", ("2ebar",), note="defined by 0 -> 1 = 0 mod V(2e,2ebar)"),
        VarietySpec("V(2e,2ebar)", ("2e", "2ebar"), "V2"),
        VarietySpec("DQDSHC3", _dm(*_ALL) + _dp(*_ALL), "DQDSHC3"),
        VarietySpec("DMSHC3", _dm(*_ALL), "DMSHC3"),
        VarietySpec("DPCSHC3", _dp(*_ALL), "DPCSHC3"),
        VarietySpec("DQDBSH", _D, "DQDBSH"),
        VarietySpec("V(D1)", ("D1",)), VarietySpec("V(D2)", ("D2",)), VarietySpec("V(D3)", ("D3",)),
        VarietySpec("RDQDStSH1", _dm(*_ALL) + _dp(*_ALL) + _D, "RDQDStSH1"),
        VarietySpec("RDQDStH1", ("L1dm", "L1dp", "D2"), "RDQDStH1"),
        VarietySpec("RDMStSH1", _dm(*_ALL) + _D, "RDMStSH1"),
        VarietySpec("RDMSH1", _dm(*_ALL) + _D, "RDMSH1"),
        VarietySpec("RDMStH1", ("L1dm", "D2"), "RDMStH1"),
        VarietySpec("RDMH1", ("L1dm", "D2"), "RDMH1"),
        VarietySpec("RDMcmSH1", ("L10dm", "D1"), "RDMcmSH1"),
        VarietySpec("RDQDcmStSH1", ("L10dm", "L10dp", "D1"), "RDQDcmStSH1"),
        VarietySpec("RDPCStSH1", _dp(*_ALL), "RDPCStSH1"),
        VarietySpec("RDPCStH1", ("L1dp",), "RDPCStH1"),
        VarietySpec("DQDStSH1", None, "DQDStSH1", "decidability open", "open"),
        VarietySpec("JIDL1", None, "JIDL1", "not finitely generated", "infinite"),
        VarietySpec("DStHC", None, "DStHC", "not finitely generated", "infinite"),
        VarietySpec("DMHC", None, "DMHC", "generated by all finite De Morgan Heyting chains", "infinite"),
        VarietySpec("DPCHC", None, "DPCHC", "generated by all finite dp Heyting chains", "infinite"),
        VarietySpec("V(Cdm)", _dm(*_ALL)), VarietySpec("V(Cdp)", _dp(*_ALL)),
        VarietySpec("V(C20)", _dm(*_ALL) + _dp(*_ALL)),
    ]
    for i in _ALL:
        specs.append(VarietySpec(f"V(L{i}dm)", (f"L{i}dm",)))
        specs.append(VarietySpec(f"V(L{i}dp)", (f"L{i}dp",)))
    for n in range(2, 6):
        dm = ("2e", "L1dm") + tuple(f"Ch{k}dm" for k in range(4, n + 1))
        dp = ("2e", "L1dp") + tuple(f"Ch{k}dp" for k in range(4, n + 1))
        specs.append(VarietySpec(f"DMHC{n}", dm[:n - 1], note=f"DMHC with (DMHC3)_{n}"))
        specs.append(VarietySpec(f"DPCHC{n}", dp[:n - 1], note=f"DPCHC with (An)_{n}"))
        specs.append(VarietySpec(f"V(Ch{n}dp)", (f"Ch{n}dp",) if n > 3 else dp[n - 2:n - 1],
                                 note="subvariety of JIDL1"))
        specs.append(VarietySpec(f"V(Ch{n}dp,D2)", ((f"Ch{n}dp",) if n > 3 else dp[n - 2:n - 1]) + ("D2",),
                                 note="subvariety of JIDL1"))
    for name in ("DHMSH", "DHMH", "OCKSH", "DmsSH", "DMSH", "DMH", "DSDSH", "DQDSH", "DPCSH",
                 "DPCH", "BDQDSH", "SBDQDSH", "DQSSH", "DSSH", "BDQSSH", "SBDQSSH", "DSCSH",
                 "DDPCSH", "DAPCSH"):
        specs.append(VarietySpec(name, None, name, "not finitely generated", "infinite"))
    specs.append(VarietySpec("T", ("T1",), note="trivial variety"))
    return {s.name: s for s in specs}


VARIETIES = _build_varieties()



def get_variety(name: str | VarietySpec) -> VarietySpec:
    if isinstance(name, VarietySpec):
        return name
    key = name.replace("_", "")
    if key in VARIETIES:
        return VARIETIES[key]
    if name in VARIETIES:
        return VARIETIES[name]
    if name.startswith("V(") and name.endswith(")"):
        gens = tuple(g.strip() for g in name[2:-1].split(",") if g.strip())
        return VarietySpec(name, gens)
    raise KeyError(f"unknown variety {name!r}")


@dataclass(frozen=True)
class LogicSpec:
    name: str
    variety: str
    rules: tuple[str, ...] = ("smp", "scp")
    base: str | None = None               # logic this one extends
    axioms: tuple[str, ...] = ()          # schema names added over the base
    note: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "variety": self.variety, "rules": list(self.rules),
                "extends": self.base, "axioms": list(self.axioms), "note": self.note}


_LIST2 = [
    ("DHMH", "DHMSH", ("A15",)),
    ("OCKSH", "DHMSH", ("A16", "A17")),
    ("DmsSH", "OCKSH", ("A18",)),
    ("DMSH", "OCKSH", ("A18", "A19")),
    ("DMH", "DMSH", ("A15",)),
    ("DSDSH", "DHMSH", ("A20", "A21", "A22", "A23")),
    ("DQDSH", "DSDSH", ("A18",)),
    ("DPCSH", "DQDSH", ("A24",)),
    ("DPCH", "DPCSH", ("A15",)),
    ("BDQDSH", "DQDSH", ("A25", "A26")),
    ("SBDQDSH", "DQDSH", ("A27", "A28")),
    ("DQDBSH", "DQDSH", ("A29",)),
    ("DQSSH", "DHMSH", ("A18", "A30", "A31", "A32")),
    ("DSSH", "DQSSH", ("A16", "A17")),
    ("BDQSSH", "DHMSH", ("A18", "A25", "A26", "A30", "A31", "A32")),
    ("SBDQSSH", "DHMSH", ("A18", "A27", "A28", "A30", "A31", "A32")),
    ("DSCSH", "DHMSH", ("A24",)),
    ("DDPCSH", "DHMSH", ("A33",)),
    ("DAPCSH", "DDPCSH", ("A18",)),
]


def _build_logics() -> dict[str, LogicSpec]:
    out = {"DHMSH": LogicSpec("DHMSH", "DHMSH", ("smp", "scp"), None,
                              tuple(f"A{i}" for i in range(1, 15)))}
    for name, base, ax in _LIST2:
        out[name] = LogicSpec(name, name, ("smp", "scp"), base, ax)
    out["LM"] = LogicSpec("LM", "DMH", ("mp", "cp"), None, tuple(f"B{i}" for i in range(1, 11)),
                          "Moisil's modal logic; its variety is DMH")
    # identity-defined extensions: axioms are generated from the base identities
    for v in VARIETIES.values():
        if v.name in out or v.cls is None:
            continue
        out[v.name] = LogicSpec(v.name, v.name, ("smp", "scp"), None, (), "axioms from identities")
    for v in VARIETIES.values():
        if v.name not in out and v.finitely_generated:
            out[v.name] = LogicSpec(v.name, v.name, ("smp", "scp"), None, (), "matrix semantics only")
    return out


LOGICS = _build_logics()


def get_logic(name: str) -> LogicSpec:
    if name in LOGICS:
        return LOGICS[name]
    if name.startswith("L(") and name.endswith(")"):
        inner = name[2:-1]
        return LogicSpec(name, f"V({inner})", note="matrix semantics only")
    key = name.replace("_", "")
    if key in LOGICS:
        return LOGICS[key]
    raise KeyError(f"unknown logic {name!r}")


def registry_dump() -> dict:
    from .classes import REGISTRY
    return {
        "classes": [{"name": c.name, "ambient": c.ambient, "identities": list(c.identities)}
                    for c in REGISTRY.values()],
        "varieties": [v.as_dict() for v in VARIETIES.values()],
        "logics": [lg.as_dict() for lg in LOGICS.values()],
    }


# ---------------------------------------------------------------- deduction property

@dataclass
class DeductionReport:
    variety: str
    holds: bool
    failure: HoldsResult | None = None

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        out = {"variety": self.variety, "verdict": "holds" if self.holds else "fails"}
        if self.failure is not None:
            out["witness"] = self.failure.as_dict()
        return out


def deduction_property(v) -> DeductionReport:
    """Deduction property of the logic of v, via the deduction identity on its generators."""
    if isinstance(v, (list, tuple)):
        gens, name = list(v), "V(" + ",".join(B.name for B in v) + ")"
    else:
        spec = get_variety(v)
        gens, name = spec.generator_algebras(), spec.name
    for B in gens:
        r = holds(B, DEDUCTION)
        if not r.ok:
            return DeductionReport(name, False, r)
    return DeductionReport(name, True)


# ---------------------------------------------------------------- Lukasiewicz bridge

@dataclass
class BridgeReport:
    d1: list[str]
    d2: list[str]
    d1_ok: bool
    d2_ok: bool
    imp_table: list[list[str]]
    imp_ok: bool
    mismatches: list[tuple[str, str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.d1_ok and self.d2_ok and self.imp_ok

    def as_dict(self) -> dict:
        return {"verdict": "pass" if self.ok else "fail", "d1": self.d1, "d2": self.d2,
                "imp": self.imp_table, "mismatches": [list(m) for m in self.mismatches]}


def lukasiewicz_algebra():
    """The 3-element Lukasiewicz algebra on 0 < a < 1 as plain tables."""
    meet = [[min(i, j) for j in range(3)] for i in range(3)]
    join = [[max(i, j) for j in range(3)] for i in range(3)]
    neg = [2, 1, 0]
    d1 = [0, 0, 2]
    d2 = [0, 2, 2]
    return {"labels": ("0", "a", "1"), "meet": meet, "join": join, "neg": neg, "d1": d1, "d2": d2}


def katrinak_imp(x: int, y: int, L=None) -> int:
    """(x* | y**) & ((x | x*)'*' | x* | y | y*) with x* := d1(d2(x)')."""
    L = L or lukasiewicz_algebra()
    mt, jn, ng, d1, d2 = L["meet"], L["join"], L["neg"], L["d1"], L["d2"]

    def st(u):
        return d1[ng[d2[u]]]

    left = jn[st(x)][st(st(y))]
    right = jn[jn[jn[ng[st(ng[jn[x][st(x)]])]][st(x)]][y]][st(y)]
    return mt[left][right]


def lukasiewicz_term_equivalence_check() -> BridgeReport:
    from .library import get
    A = get("L1dm")
    order = [A.index(lbl) for lbl in ("0", "a", "1")]
    L = lukasiewicz_algebra()
    x = Var("x")
    d1_f = Imp(Neg(x), BOT)          # x'*
    d2_f = Neg(Imp(x, BOT))          # x*'
    d1 = [A.labels[evaluate(d1_f, A, {"x": e})] for e in order]
    d2 = [A.labels[evaluate(d2_f, A, {"x": e})] for e in order]
    want_d1 = [L["labels"][v] for v in L["d1"]]
    want_d2 = [L["labels"][v] for v in L["d2"]]
    table, mism = [], []
    for i, ei in enumerate(order):
        row = []
        for j, ej in enumerate(order):
            got = L["labels"][katrinak_imp(i, j, L)]
            row.append(got)
            want = A.labels[A.imp[ei][ej]]
            if got != want:
                mism.append((L["labels"][i], L["labels"][j], got, want))
        table.append(row)
    return BridgeReport(d1, d2, d1 == want_d1, d2 == want_d2, table, not mism, mism)
