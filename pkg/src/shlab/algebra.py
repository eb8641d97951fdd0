"""Finite algebras <A; &, |, ->, ', 0, 1> given by operation tables.

Elements are 0-based indices with string labels.  The negation table is
optional so that plain semi-Heyting algebras (no ') can share the type.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .formula import Bot, Formula, Imp, Join, Meet, Neg, Top, Var, fold, var_names

Table = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    pass


def _freeze(rows) -> Table:
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    name: str
    labels: tuple[str, ...]
    bottom: int
    top: int
    meet: Table
    join: Table
    imp: Table
    neg: tuple[int, ...] | None = None
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "meet", _freeze(self.meet))
        object.__setattr__(self, "join", _freeze(self.join))
        object.__setattr__(self, "imp", _freeze(self.imp))
        if self.neg is not None:
            object.__setattr__(self, "neg", tuple(int(x) for x in self.neg))
        n = len(self.labels)
        if n < 1:
            raise AlgebraError("an algebra needs at least one element")
        if len(set(self.labels)) != n:
            raise AlgebraError(f"{self.name}: duplicate element labels")
        for tname in ("meet", "join", "imp"):
            t = getattr(self, tname)
            if len(t) != n or any(len(r) != n for r in t):
                raise AlgebraError(f"{self.name}: {tname} table must be {n}x{n}")
            if any(not 0 <= x < n for r in t for x in r):
                raise AlgebraError(f"{self.name}: {tname} entry out of range")
        if self.neg is not None:
            if len(self.neg) != n or any(not 0 <= x < n for x in self.neg):
                raise AlgebraError(f"{self.name}: bad neg table")
        if not (0 <= self.bottom < n and 0 <= self.top < n):
            raise AlgebraError(f"{self.name}: bottom/top out of range")
        if self.check:
            problem = lattice_problem(self)
            if problem:
                raise AlgebraError(f"{self.name}: not a bounded lattice: {problem}")

    # basic accessors
    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def has_neg(self) -> bool:
        return self.neg is not None

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"{self.name}: no element {label!r}") from None

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def star(self, a: int) -> int:
        return self.imp[a][self.bottom]

    def key(self) -> tuple:
        return (self.labels, self.bottom, self.top, self.meet, self.join, self.imp, self.neg)

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def renamed(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(name, self.labels, self.bottom, self.top, self.meet,
                             self.join, self.imp, self.neg, check=False)

    def with_neg(self, neg: Sequence[int] | None, name: str | None = None) -> "FiniteAlgebra":
        return FiniteAlgebra(name or self.name, self.labels, self.bottom, self.top,
                             self.meet, self.join, self.imp, neg, check=False)

    def reduct(self, name: str | None = None) -> "FiniteAlgebra":
        """Forget the negation."""
        return self.with_neg(None, name)

    # numpy views used by the vectorised evaluator
    @cached_property
    def np_meet(self):
        return np.array(self.meet, dtype=np.int64)

    @cached_property
    def np_join(self):
        return np.array(self.join, dtype=np.int64)

    @cached_property
    def np_imp(self):
        return np.array(self.imp, dtype=np.int64)

    @cached_property
    def np_neg(self):
        if self.neg is None:
            raise AlgebraError(f"{self.name} has no negation")
        return np.array(self.neg, dtype=np.int64)

    def describe(self) -> str:
        return dump_algebra(self)


def lattice_problem(A: FiniteAlgebra) -> str | None:
    n = A.order
    m, j = A.meet, A.join
    for a in range(n):
        if m[a][a] != a or j[a][a] != a:
            return f"idempotence fails at {A.labels[a]}"
        if m[a][A.bottom] != A.bottom or j[a][A.top] != A.top:
            return f"bounds fail at {A.labels[a]}"
        for b in range(n):
            if m[a][b] != m[b][a] or j[a][b] != j[b][a]:
                return f"commutativity fails at {A.labels[a]},{A.labels[b]}"
            if m[a][j[a][b]] != a or j[a][m[a][b]] != a:
                return f"absorption fails at {A.labels[a]},{A.labels[b]}"
            for c in range(n):
                if m[m[a][b]][c] != m[a][m[b][c]] or j[j[a][b]][c] != j[a][j[b][c]]:
                    return f"associativity fails at {A.labels[a]},{A.labels[b]},{A.labels[c]}"
    return None


# ---------------------------------------------------------------- evaluation

Valuation = Mapping[str, int]


def evaluate(f: Formula, A: FiniteAlgebra, v: Valuation) -> int:
    """Value of f in A under v (variable name -> element index or label)."""
    def leaf(g):
        if isinstance(g, Var):
            if g.name not in v:
                raise KeyError(f"unbound variable {g.name}")
            return A.index(v[g.name])
        return A.bottom if isinstance(g, Bot) else A.top

    def neg(x):
        if A.neg is None:
            raise AlgebraError(f"{A.name} has no negation")
        return A.neg[x]

    return fold(f, leaf, neg, lambda x, y: A.meet[x][y],
                lambda x, y: A.join[x][y], lambda x, y: A.imp[x][y])


def valuation_grid(n: int, k: int) -> np.ndarray:
    """All n**k valuations in lexicographic order, as a (k, n**k) array."""
    if k == 0:
        return np.zeros((0, 1), dtype=np.int64)
    idx = np.indices((n,) * k, dtype=np.int64)
    return idx.reshape(k, -1)


def evaluate_all(f: Formula, A: FiniteAlgebra, names: Sequence[str] | None = None,
                 grid: np.ndarray | None = None) -> np.ndarray:
    """Values of f under every valuation of `names` (lexicographic order)."""
    if names is None:
        names = var_names(f)
    if grid is None:
        grid = valuation_grid(A.order, len(names))
    col = {nm: grid[i] for i, nm in enumerate(names)}
    size = grid.shape[1]

    def leaf(g):
        if isinstance(g, Var):
            if g.name not in col:
                raise KeyError(f"unbound variable {g.name}")
            return col[g.name]
        return np.full(size, A.bottom if isinstance(g, Bot) else A.top, dtype=np.int64)

    return fold(f, leaf, lambda x: A.np_neg[x], lambda x, y: A.np_meet[x, y],
                lambda x, y: A.np_join[x, y], lambda x, y: A.np_imp[x, y])


def decode_valuation(A: FiniteAlgebra, names: Sequence[str], flat: int) -> dict[str, str]:
    n, out = A.order, {}
    for nm in reversed(names):
        out[nm] = A.labels[flat % n]
        flat //= n
    return {nm: out[nm] for nm in names}


# ---------------------------------------------------------------- text format

def dump_algebra(A: FiniteAlgebra) -> str:
    L = A.labels
    lines = [f"algebra {A.name}", f"order {A.order}", "elements " + " ".join(L),
             f"bottom {L[A.bottom]}", f"top {L[A.top]}"]
    for tname in ("meet", "join", "imp"):
        lines.append(tname)
        for row in getattr(A, tname):
            lines.append("  " + " ".join(L[x] for x in row))
    if A.neg is not None:
        lines.append("neg")
        lines.append("  " + " ".join(L[x] for x in A.neg))
    return "\n".join(lines) + "\n"


def parse_algebras(text: str) -> list[FiniteAlgebra]:
    """Read one or more algebras in the line format written by dump_algebra."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    out, i = [], 0

    def need(cond, msg):
        if not cond:
            raise AlgebraError(msg)

    while i < len(lines):
        need(lines[i][0] == "algebra" and len(lines[i]) == 2, f"expected 'algebra <name>', got {' '.join(lines[i])}")
        name = lines[i][1]
        i += 1
        info: dict = {}
        tables: dict = {}
        while i < len(lines) and lines[i][0] != "algebra":
            head = lines[i]
            word = head[0]
            if word == "order":
                info["order"] = int(head[1])
                i += 1
            elif word == "elements":
                info["labels"] = head[1:]
                i += 1
            elif word in ("bottom", "top"):
                info[word] = head[1]
                i += 1
            elif word in ("meet", "join", "imp", "neg"):
                need("labels" in info, f"{name}: 'elements' must precede tables")
                n = len(info["labels"])
                rows = 1 if word == "neg" else n
                need(i + rows < len(lines) + 1, f"{name}: truncated {word} table")
                body = lines[i + 1:i + 1 + rows]
                need(len(body) == rows and all(len(r) == n for r in body),
                     f"{name}: {word} table must have {rows} row(s) of {n} entries")
                pos = {lab: k for k, lab in enumerate(info["labels"])}
                try:
                    tables[word] = [[pos[x] for x in r] for r in body]
                except KeyError as e:
                    raise AlgebraError(f"{name}: unknown element {e.args[0]} in {word}") from None
                i += 1 + rows
            else:
                raise AlgebraError(f"{name}: unexpected line {' '.join(head)!r}")
        for key in ("labels", "bottom", "top"):
            need(key in info, f"{name}: missing {key}")
        for key in ("meet", "join", "imp"):
            need(key in tables, f"{name}: missing {key} table")
        labels = info["labels"]
        need(info.get("order", len(labels)) == len(labels), f"{name}: order does not match elements")
        out.append(FiniteAlgebra(
            name, tuple(labels), labels.index(info["bottom"]), labels.index(info["top"]),
            tables["meet"], tables["join"], tables["imp"],
            tables["neg"][0] if "neg" in tables else None))
    return out


# ---------------------------------------------------------------- lattice helpers

def chain_lattice(labels: Sequence[str]) -> tuple[Table, Table]:
    n = len(labels)
    meet = [[min(a, b) for b in range(n)] for a in range(n)]
    join = [[max(a, b) for b in range(n)] for a in range(n)]
    return _freeze(meet), _freeze(join)


def heyting_imp(meet: Table, top: int) -> Table:
    """Relative pseudocomplement on a finite distributive lattice."""
    n = len(meet)
    leq = lambda a, b: meet[a][b] == a
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            cands = [c for c in range(n) if leq(meet[a][c], b)]
            best = [c for c in cands if all(leq(d, c) for d in cands)]
            row.append(best[0])
        out.append(row)
    return _freeze(out)


def heyting_chain(k: int, name: str | None = None) -> FiniteAlgebra:
    """The k-element Heyting chain 0 < c1 < ... < 1 (no negation)."""
    if k < 1:
        raise AlgebraError("chain length must be >= 1")
    if k == 1:
        labels = ("0",)
    else:
        labels = ("0",) + tuple(f"c{i}" for i in range(1, k - 1)) + ("1",)
    meet, join = chain_lattice(labels)
    return FiniteAlgebra(name or f"Ch{k}", labels, 0, k - 1, meet, join, heyting_imp(meet, k - 1))


def dm_chain(k: int, name: str | None = None) -> FiniteAlgebra:
    """Heyting chain with the order-reversing involution."""
    A = heyting_chain(k)
    return A.with_neg([k - 1 - i for i in range(k)], name or f"Ch{k}dm")


def dp_chain(k: int, name: str | None = None) -> FiniteAlgebra:
    """Heyting chain with its dual pseudocomplement (x' = 1 for x < 1)."""
    A = heyting_chain(k)
    neg = dual_pseudocomplement(A)
    assert neg is not None
    return A.with_neg(neg, name or f"Ch{k}dp")


# ---------------------------------------------------------------- expansions

def _three_chain_check(A: FiniteAlgebra):
    if A.order != 3:
        raise AlgebraError(f"{A.name}: dm/dp expansions need a 3-element chain")
    mid = [i for i in range(3) if i not in (A.bottom, A.top)]
    if len(mid) != 1 or not (A.leq(A.bottom, mid[0]) and A.leq(mid[0], A.top)):
        raise AlgebraError(f"{A.name}: not a 3-element chain")
    return mid[0]


def expand_dm(A: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """0' = 1, 1' = 0, a' = a."""
    a = _three_chain_check(A)
    neg = [0] * 3
    neg[A.bottom], neg[A.top], neg[a] = A.top, A.bottom, a
    return A.with_neg(neg, name or f"{A.name}dm")


def expand_dp(A: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """0' = 1, 1' = 0, a' = 1."""
    a = _three_chain_check(A)
    neg = [0] * 3
    neg[A.bottom], neg[A.top], neg[a] = A.top, A.bottom, A.top
    return A.with_neg(neg, name or f"{A.name}dp")


def dual_pseudocomplement(A: FiniteAlgebra) -> list[int] | None:
    """x' = least y with x | y = 1, or None if some x has no least such y."""
    out = []
    for x in range(A.order):
        cands = [y for y in range(A.order) if A.join[x][y] == A.top]
        least = [y for y in cands if all(A.leq(y, z) for z in cands)]
        if not least:
            return None
        out.append(least[0])
    return out


@dataclass
class Absence:
    """Why an expansion does not exist."""
    reason: str
    element: str | None = None

    def __bool__(self):
        return False


def dual_pseudocomplement_expand(A: FiniteAlgebra, name: str | None = None):
    neg = dual_pseudocomplement(A)
    if neg is None:
        for x in range(A.order):
            cands = [y for y in range(A.order) if A.join[x][y] == A.top]
            if not any(all(A.leq(y, z) for z in cands) for y in cands):
                return Absence("no least y with x | y = 1", A.labels[x])
    return A.with_neg(neg, name or f"{A.name}dp")


def essentially_stone_expand(A: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Expand a Stone semi-Heyting algebra by x' := x*."""
    for x in range(A.order):
        s = A.star(x)
        if A.join[s][A.star(s)] != A.top:
            raise AlgebraError(f"{A.name}: Stone identity x* | x** = 1 fails at x={A.labels[x]}")
    return A.with_neg([A.star(x) for x in range(A.order)], name or f"{A.name}e")


# ---------------------------------------------------------------- morphisms

def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, h: Sequence[int]) -> bool:
    if h[A.bottom] != B.bottom or h[A.top] != B.top:
        return False
    if (A.neg is None) != (B.neg is None):
        return False
    for a in range(A.order):
        if A.neg is not None and h[A.neg[a]] != B.neg[h[a]]:
            return False
        for b in range(A.order):
            if (h[A.meet[a][b]] != B.meet[h[a]][h[b]] or h[A.join[a][b]] != B.join[h[a]][h[b]]
                    or h[A.imp[a][b]] != B.imp[h[a]][h[b]]):
                return False
    return True


def isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> dict[str, str] | None:
    """A label bijection A -> B preserving all operations, or None."""
    if A.order != B.order or (A.neg is None) != (B.neg is None):
        return None
    free_a = [x for x in range(A.order) if x not in (A.bottom, A.top)]
    free_b = [x for x in range(B.order) if x not in (B.bottom, B.top)]
    if A.order == 1:
        return {A.labels[0]: B.labels[0]}
    for perm in itertools.permutations(free_b):
        h = [0] * A.order
        h[A.bottom], h[A.top] = B.bottom, B.top
        for x, y in zip(free_a, perm):
            h[x] = y
        if is_homomorphism(A, B, h):
            return {A.labels[x]: B.labels[h[x]] for x in range(A.order)}
    return None


def embeddings(A: FiniteAlgebra, B: FiniteAlgebra) -> Iterable[list[int]]:
    """Injective homomorphisms A -> B."""
    if (A.neg is None) != (B.neg is None) or A.order > B.order:
        return
    if A.order == 1:
        if B.order == 1:
            yield [0]
        return
    rest = [x for x in range(A.order) if x not in (A.bottom, A.top)]
    pool = [y for y in range(B.order) if y not in (B.bottom, B.top)]
    for img in itertools.permutations(pool, len(rest)):
        h = [0] * A.order
        h[A.bottom], h[A.top] = B.bottom, B.top
        for x, y in zip(rest, img):
            h[x] = y
        if is_homomorphism(A, B, h):
            yield h


def relabel(A: FiniteAlgebra, perm: Sequence[int], name: str | None = None,
            labels: Sequence[str] | None = None) -> FiniteAlgebra:
    """Copy of A where old element i becomes new element perm[i]."""
    n = A.order
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    meet = [[perm[A.meet[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    join = [[perm[A.join[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    imp = [[perm[A.imp[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    neg = None if A.neg is None else [perm[A.neg[inv[a]]] for a in range(n)]
    labs = labels if labels is not None else [A.labels[inv[a]] for a in range(n)]
    return FiniteAlgebra(name or A.name, tuple(labs), perm[A.bottom], perm[A.top],
                         meet, join, imp, neg, check=False)


def _table_tuple(A: FiniteAlgebra) -> tuple:
    flat = []
    for t in (A.meet, A.join, A.imp):
        for r in t:
            flat.extend(r)
    if A.neg is not None:
        flat.extend(A.neg)
    return tuple(flat)


def canonical_form(A: FiniteAlgebra) -> FiniteAlgebra:
    """Representative with 0 first, 1 last and lexicographically least tables."""
    n = A.order
    if n == 1:
        return relabel(A, [0], labels=["0"])
    mids = [x for x in range(n) if x not in (A.bottom, A.top)]
    best = None
    for order in itertools.permutations(mids):
        perm = [0] * n
        perm[A.bottom] = 0
        perm[A.top] = n - 1
        for pos, x in enumerate(order, start=1):
            perm[x] = pos
        B = relabel(A, perm, labels=_generic_labels(n))
        key = _table_tuple(B)
        if best is None or key < best[0]:
            best = (key, B)
    return best[1]


def _generic_labels(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    mids = [chr(ord("a") + i) for i in range(n - 2)]
    return ["0"] + mids + ["1"]


# ---------------------------------------------------------------- constructions

def product(A: FiniteAlgebra, B: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    pairs = [(a, b) for a in range(A.order) for b in range(B.order)]
    pos = {p: i for i, p in enumerate(pairs)}
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]

    def table(ta, tb):
        return [[pos[(ta[p[0]][q[0]], tb[p[1]][q[1]])] for q in pairs] for p in pairs]

    neg = None
    if A.neg is not None and B.neg is not None:
        neg = [pos[(A.neg[a], B.neg[b])] for a, b in pairs]
    return FiniteAlgebra(name or f"{A.name}x{B.name}", tuple(labels),
                         pos[(A.bottom, B.bottom)], pos[(A.top, B.top)],
                         table(A.meet, B.meet), table(A.join, B.join), table(A.imp, B.imp),
                         neg, check=False)


def closure(A: FiniteAlgebra, seed: Iterable[int]) -> list[int]:
    """Smallest subuniverse containing seed, 0 and 1 (sorted indices)."""
    got = set(seed) | {A.bottom, A.top}
    frontier = list(got)
    while frontier:
        new = set()
        for a in frontier:
            if A.neg is not None:
                new.add(A.neg[a])
            for b in got:
                for t in (A.meet, A.join, A.imp):
                    new.add(t[a][b])
                    new.add(t[b][a])
        frontier = list(new - got)
        got |= new
    return sorted(got)


def restrict(A: FiniteAlgebra, universe: Sequence[int], name: str | None = None) -> FiniteAlgebra:
    universe = list(universe)
    pos = {x: i for i, x in enumerate(universe)}

    def table(t):
        return [[pos[t[a][b]] for b in universe] for a in universe]

    neg = None if A.neg is None else [pos[A.neg[a]] for a in universe]
    return FiniteAlgebra(name or f"{A.name}[sub]", tuple(A.labels[x] for x in universe),
                         pos[A.bottom], pos[A.top], table(A.meet), table(A.join),
                         table(A.imp), neg, check=False)


def subalgebra_generated(A: FiniteAlgebra, subset: Iterable[int | str],
                         name: str | None = None) -> FiniteAlgebra:
    seed = [A.index(x) for x in subset]
    return restrict(A, closure(A, seed), name)


def generating_set(A: FiniteAlgebra) -> list[int]:
    """A smallest set of elements generating A (first found in index order)."""
    rest = [x for x in range(A.order) if x not in (A.bottom, A.top)]
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            if len(closure(A, combo)) == A.order:
                return list(combo)
    return rest


# ---------------------------------------------------------------- congruences

Partition = tuple[tuple[int, ...], ...]


def _blocks(parent: list[int]) -> Partition:
    groups: dict[int, list[int]] = {}
    for x in range(len(parent)):
        groups.setdefault(_find(parent, x), []).append(x)
    return tuple(sorted(tuple(g) for g in groups.values()))


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _congruence_closure(A: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Partition:
    n = A.order
    parent = list(range(n))
    work = list(pairs)
    while work:
        merged = False
        for a, b in work:
            ra, rb = _find(parent, a), _find(parent, b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
                merged = True
        if not merged:
            break
        # compatibility: related arguments give related results
        work = []
        for a in range(n):
            for b in range(a + 1, n):
                if _find(parent, a) != _find(parent, b):
                    continue
                if A.neg is not None:
                    work.append((A.neg[a], A.neg[b]))
                for c in range(n):
                    for t in (A.meet, A.join, A.imp):
                        work.append((t[a][c], t[b][c]))
                        work.append((t[c][a], t[c][b]))
    return _blocks(parent)


def is_congruence(A: FiniteAlgebra, theta: Partition) -> bool:
    block = {}
    for i, blk in enumerate(theta):
        for x in blk:
            block[x] = i
    if sorted(block) != list(range(A.order)):
        return False
    for a in range(A.order):
        for b in range(A.order):
            if block[a] != block[b]:
                continue
            if A.neg is not None and block[A.neg[a]] != block[A.neg[b]]:
                return False
            for c in range(A.order):
                for t in (A.meet, A.join, A.imp):
                    if block[t[a][c]] != block[t[b][c]] or block[t[c][a]] != block[t[c][b]]:
                        return False
    return True


def congruences(A: FiniteAlgebra) -> list[Partition]:
    """All congruences, as partitions into sorted blocks; sorted by block count."""
    n = A.order
    principal = {_congruence_closure(A, [(a, b)]) for a in range(n) for b in range(a + 1, n)}
    found = {_congruence_closure(A, [])} | principal
    frontier = set(found)
    while frontier:
        new = set()
        for t1 in frontier:
            for t2 in principal:
                pairs = [(blk[0], x) for blk in t1 + t2 for x in blk[1:]]
                j = _congruence_closure(A, pairs)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return sorted(found, key=lambda p: (-len(p), p))


def quotient(A: FiniteAlgebra, theta: Partition, name: str | None = None) -> FiniteAlgebra:
    theta = tuple(tuple(sorted(b)) for b in theta)
    if not is_congruence(A, theta):
        raise AlgebraError(f"{A.name}: partition is not a congruence")
    block = {x: i for i, blk in enumerate(theta) for x in blk}
    reps = [blk[0] for blk in theta]

    def table(t):
        return [[block[t[a][b]] for b in reps] for a in reps]

    labels = ["/".join(A.labels[x] for x in blk) for blk in theta]
    neg = None if A.neg is None else [block[A.neg[a]] for a in reps]
    return FiniteAlgebra(name or f"{A.name}/theta", tuple(labels), block[A.bottom], block[A.top],
                         table(A.meet), table(A.join), table(A.imp), neg, check=False)


# ---------------------------------------------------------------- enumeration

DEFAULT_ENUM_CAP = 4


def bounded_lattices(n: int, distributive: bool = True) -> list[tuple[Table, Table]]:
    """(meet, join) tables of all bounded lattices of order n up to isomorphism.

    Element 0 is the bottom and n-1 the top.
    """
    if n == 1:
        return [(((0,),), ((0,),))]
    mids = list(range(1, n - 1))
    pairs = [(a, b) for a in mids for b in mids if a != b]
    seen, out = set(), []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        le = [[a == b or a == 0 or b == n - 1 for b in range(n)] for a in range(n)]
        for (a, b), on in zip(pairs, bits):
            if on:
                le[a][b] = True
        if any(le[a][b] and le[b][a] for a, b in pairs):
            continue
        if any(le[a][b] and le[b][c] and not le[a][c]
               for a in range(n) for b in range(n) for c in range(n)):
            continue
        meet, join = _lattice_ops(le, n)
        if meet is None:
            continue
        if distributive and any(meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]
                                for a in range(n) for b in range(n) for c in range(n)):
            continue
        key = min(
            tuple(tuple(p[meet[p.index(a)][p.index(b)]] for b in range(n)) for a in range(n))
            for p in _fixing_perms(n))
        if key not in seen:
            seen.add(key)
            out.append((_freeze(meet), _freeze(join)))
    return out


def _fixing_perms(n):
    for mid in itertools.permutations(range(1, n - 1)):
        yield [0, *mid, n - 1]


def _lattice_ops(le, n):
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            lower = [c for c in range(n) if le[c][a] and le[c][b]]
            glb = [c for c in lower if all(le[d][c] for d in lower)]
            upper = [c for c in range(n) if le[a][c] and le[b][c]]
            lub = [c for c in upper if all(le[c][d] for d in upper)]
            if len(glb) != 1 or len(lub) != 1:
                return None, None
            meet[a][b], join[a][b] = glb[0], lub[0]
    return meet, join


def sh_imp_tables(meet: Table, join: Table, top: int) -> Iterable[Table]:
    """All -> tables on a lattice satisfying SH2, SH3 and SH4.

    SH2 and SH4 restrict each entry independently; SH3 is enforced by
    backtracking, checking each instance as soon as both entries it
    mentions are assigned.
    """
    n = len(meet)
    cells = [(a, b) for a in range(n) for b in range(n)]
    cand = {}
    for a, b in cells:
        if a == b:
            cand[(a, b)] = [top]
        else:
            cand[(a, b)] = [c for c in range(n) if meet[a][c] == meet[a][b]]
    # SH3: x & (y->z) = x & ((x&y) -> (x&z)), indexed by the later of its two cells
    order = {c: i for i, c in enumerate(cells)}
    checks: dict[int, list[tuple[int, tuple[int, int], tuple[int, int]]]] = {}
    for x in range(n):
        for y in range(n):
            for z in range(n):
                c1, c2 = (y, z), (meet[x][y], meet[x][z])
                last = max(order[c1], order[c2])
                checks.setdefault(last, []).append((x, c1, c2))
    imp = [[0] * n for _ in range(n)]

    def rec(i):
        if i == len(cells):
            yield _freeze(imp)
            return
        a, b = cells[i]
        for c in cand[(a, b)]:
            imp[a][b] = c
            if all(meet[x][imp[c1[0]][c1[1]]] == meet[x][imp[c2[0]][c2[1]]]
                   for x, c1, c2 in checks.get(i, ())):
                yield from rec(i + 1)

    yield from rec(0)


def enumerate_sh(n: int, cap: int = DEFAULT_ENUM_CAP) -> list[FiniteAlgebra]:
    """Every semi-Heyting algebra of order n, once per isomorphism type."""
    if n < 1:
        raise AlgebraError("order must be >= 1")
    if n > cap:
        raise AlgebraError(f"order {n} exceeds enumeration cap {cap}")
    labels = tuple(_generic_labels(n))
    seen, out = set(), []
    for meet, join in bounded_lattices(n):
        for imp in sh_imp_tables(meet, join, n - 1):
            A = FiniteAlgebra("tmp", labels, 0, n - 1, meet, join, imp, check=False)
            C = canonical_form(A)
            key = _table_tuple(C)
            if key not in seen:
                seen.add(key)
                out.append(C)
    out.sort(key=_table_tuple)
    return [A.renamed(f"SH{n}_{i + 1}") for i, A in enumerate(out)]


def dhmsh_negations(A: FiniteAlgebra) -> Iterable[tuple[int, ...]]:
    """All ' tables making A a dually hemimorphic algebra (0'=1, 1'=0, (x&y)'=x'|y')."""
    n = A.order
    mids = [x for x in range(n) if x not in (A.bottom, A.top)]
    for vals in itertools.product(range(n), repeat=len(mids)):
        neg = [0] * n
        neg[A.bottom], neg[A.top] = A.top, A.bottom
        for x, v in zip(mids, vals):
            neg[x] = v
        if n == 1 or all(neg[A.meet[a][b]] == A.join[neg[a]][neg[b]]
                         for a in range(n) for b in range(n)):
            yield tuple(neg)


def enumerate_dhmsh(n: int, cap: int = DEFAULT_ENUM_CAP) -> list[FiniteAlgebra]:
    seen, out = set(), []
    for A in enumerate_sh(n, cap):
        for neg in dhmsh_negations(A):
            C = canonical_form(A.with_neg(neg))
            key = _table_tuple(C)
            if key not in seen:
                seen.add(key)
                out.append(C)
    out.sort(key=_table_tuple)
    return [A.renamed(f"DHMSH{n}_{i + 1}") for i, A in enumerate(out)]
