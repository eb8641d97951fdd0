"""Propositional formulas over {&, |, ->, ', 0, 1}.

Formulas are immutable trees.  The parser accepts the plain grammar

    formula := join ("->" formula)?
    join    := meet ("|" meet)*
    meet    := unary ("&" unary)*
    unary   := atom postfix* | "~" unary
    atom    := ident | "0" | "1" | "bot" | "top" | "(" formula ")"

plus a few conveniences: postfix ``*`` (x -> 0) and ``+`` (x'*'), and the
binary sugar ``=>`` (x -> (x & y)) and ``<=>`` at the level of ``->``.  All
sugar expands at parse time, so the AST only ever contains the seven
primitive node types.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Formula"


@dataclass(frozen=True)
class Meet:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Join:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Bot, Top, Neg, Meet, Join, Imp]
Substitution = Mapping[str, Formula]

BOT = Bot()
TOP = Top()


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnboundVariable(KeyError):
    pass


# ---------------------------------------------------------------- builders

def var(name: str) -> Var:
    return Var(name)


def variables(*names: str) -> tuple[Var, ...]:
    return tuple(Var(n) for n in names)


def imp_h(a: Formula, b: Formula) -> Formula:
    """Heyting implication a ->H b, i.e. a -> (a & b)."""
    return Imp(a, Meet(a, b))


def star(a: Formula) -> Formula:
    """Pseudocomplement a* = a -> 0."""
    return Imp(a, BOT)


def plus(a: Formula) -> Formula:
    """a+ = a'*'."""
    return Neg(star(Neg(a)))


def iff_h(a: Formula, b: Formula) -> Formula:
    return Meet(imp_h(a, b), imp_h(b, a))


def big_join(parts: list[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = Join(out, p)
    return out


def big_meet(parts: list[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = Meet(out, p)
    return out


def match_imp_h(f: Formula) -> tuple[Formula, Formula] | None:
    """Return (a, b) if f has the shape a -> (a & b)."""
    if isinstance(f, Imp) and isinstance(f.right, Meet) and f.right.left == f.left:
        return f.left, f.right.right
    return None


# ---------------------------------------------------------------- traversal

def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk, each node once per occurrence."""
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        g, seen = stack.pop()
        if seen:
            yield g
            continue
        stack.append((g, True))
        if isinstance(g, Neg):
            stack.append((g.arg, False))
        elif isinstance(g, (Meet, Join, Imp)):
            stack.append((g.right, False))
            stack.append((g.left, False))


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def var_names(f: Formula) -> list[str]:
    """Variable names of f in natural sort order (x1 < x2 < x10)."""
    names = {g.name for g in subformulas(f) if isinstance(g, Var)}
    return sorted(names, key=_natural_key)


def sort_names(names) -> list[str]:
    return sorted(set(names), key=_natural_key)


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def depth(f: Formula) -> int:
    if isinstance(f, Neg):
        return 1 + depth(f.arg)
    if isinstance(f, (Meet, Join, Imp)):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def fold(f: Formula, leaf: Callable[[Formula], object], neg, meet, join, imp):
    """Bottom-up fold, iterative so deep formulas do not hit the recursion limit."""
    cache: dict[int, object] = {}
    for g in subformulas(f):
        if isinstance(g, Neg):
            val = neg(cache[id(g.arg)])
        elif isinstance(g, Meet):
            val = meet(cache[id(g.left)], cache[id(g.right)])
        elif isinstance(g, Join):
            val = join(cache[id(g.left)], cache[id(g.right)])
        elif isinstance(g, Imp):
            val = imp(cache[id(g.left)], cache[id(g.right)])
        else:
            val = leaf(g)
        cache[id(g)] = val
    return cache[id(f)]


def substitute(f: Formula, s: Substitution) -> Formula:
    def leaf(g):
        if isinstance(g, Var):
            if g.name not in s:
                raise UnboundVariable(g.name)
            return s[g.name]
        return g
    return fold(f, leaf, Neg, Meet, Join, Imp)


def rename(f: Formula, s: Mapping[str, str]) -> Formula:
    return substitute(f, {n: Var(s.get(n, n)) for n in var_names(f)})


# ---------------------------------------------------------------- rendering

_PREC = {Imp: 1, Join: 2, Meet: 3}


def render(f: Formula, sugar: bool = False) -> str:
    """Print f so that parse(render(f)) == f.

    With sugar=True the shapes a -> (a & b) and a -> 0 are printed as
    ``a => b`` and ``a*``; both still parse back to the same tree.
    """
    return _render(f, 0, sugar)


def _render(f: Formula, ctx: int, sugar: bool) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bot):
        return "0"
    if isinstance(f, Top):
        return "1"
    if isinstance(f, Neg):
        return _postfix_arg(f.arg, sugar) + "'"
    if sugar and isinstance(f, Imp) and isinstance(f.right, Bot):
        return _postfix_arg(f.left, sugar) + "*"
    if isinstance(f, Imp):
        h = match_imp_h(f) if sugar else None
        if h is not None:
            # nested implications on the right are bracketed for readability
            text = f"{_render(h[0], 2, sugar)} => {_render(h[1], 2, sugar)}"
        else:
            # right associative: the left operand needs parens if it is an implication
            text = f"{_render(f.left, 2, sugar)} -> {_render(f.right, 1, sugar)}"
        return f"({text})" if ctx > 1 else text
    if isinstance(f, Join):
        text = f"{_render(f.left, 2, sugar)} | {_render(f.right, 3, sugar)}"
        return f"({text})" if ctx > 2 else text
    if isinstance(f, Meet):
        text = f"{_render(f.left, 3, sugar)} & {_render(f.right, 4, sugar)}"
        return f"({text})" if ctx > 3 else text
    raise TypeError(f"not a formula: {f!r}")


def _postfix_arg(f: Formula, sugar: bool) -> str:
    if isinstance(f, (Var, Bot, Top, Neg)):
        return _render(f, 9, sugar)
    if sugar and isinstance(f, Imp) and isinstance(f.right, Bot):
        return _render(f, 9, sugar)
    return "(" + _render(f, 0, sugar) + ")"


def __str__(self) -> str:  # shared by all node types
    return render(self)


for _cls in (Var, Bot, Top, Neg, Meet, Join, Imp):
    _cls.__str__ = __str__


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(<=>|=>|->|[|&'~*+()])|([A-Za-z_][A-Za-z0-9_]*)|([01]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos,
                             ("identifier", "0", "1", "(", "~"))
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("op", m.group(1), start))
        elif m.group(2):
            word = m.group(2)
            if word in ("bot", "top"):
                out.append(("const", word, start))
            else:
                out.append(("ident", word, start))
        else:
            out.append(("const", m.group(3), start))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value: str):
        kind, val, pos = self.peek()
        if kind == "op" and val == value:
            self.i += 1
            return
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, (value,))

    def formula(self) -> Formula:
        left = self.join()
        kind, val, _ = self.peek()
        if kind == "op" and val in ("->", "=>", "<=>"):
            self.i += 1
            right = self.formula()
            if val == "->":
                return Imp(left, right)
            if val == "=>":
                return imp_h(left, right)
            return iff_h(left, right)
        return left

    def join(self) -> Formula:
        out = self.meet()
        while self.peek()[:2] == ("op", "|"):
            self.i += 1
            out = Join(out, self.meet())
        return out

    def meet(self) -> Formula:
        out = self.unary()
        while self.peek()[:2] == ("op", "&"):
            self.i += 1
            out = Meet(out, self.unary())
        return out

    def unary(self) -> Formula:
        if self.peek()[:2] == ("op", "~"):
            self.i += 1
            return Neg(self.unary())
        out = self.atom()
        while True:
            kind, val, _ = self.peek()
            if kind != "op" or val not in ("'", "*", "+"):
                return out
            self.i += 1
            out = Neg(out) if val == "'" else star(out) if val == "*" else plus(out)

    def atom(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "ident":
            self.i += 1
            return Var(val)
        if kind == "const":
            self.i += 1
            return BOT if val in ("0", "bot") else TOP
        if kind == "op" and val == "(":
            self.i += 1
            inner = self.formula()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos,
                         ("identifier", "0", "1", "bot", "top", "(", "~"))


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos,
                         ("->", "=>", "<=>", "|", "&", "'", "end of input"))
    return f
