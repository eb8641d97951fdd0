"""Hilbert-style proof kernel for DHMSH and its axiomatic extensions.

Formulas in scripts are stored with ->H expanded (a -> (a & b)); ``=>`` is
accepted on input and used for display.  A script is checked line by line:
every line must be an instance of an axiom schema of the script's logic, a
premise, or the result of a rule applied to earlier lines.

Premises may be marked ``cited NAME``.  A cited premise stands for a known
theorem of the semi-intuitionistic fragment that the kernel does not derive
itself; it is accepted only when it is an instance of the named lemma schema
in LEMMAS, so scripts whose premises are all cited still prove theorems.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterator, Mapping, Sequence

from .formula import (BOT, TOP, Bot, Formula, Imp, Join, Meet, Neg, ParseError, Top, Var, imp_h,
                      match_imp_h, parse, render, sort_names, subformulas, substitute, var_names)

GREEK = {"α": "a", "β": "b", "γ": "c", "δ": "d"}


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    template: Formula
    note: str = ""

    @property
    def metavars(self) -> list[str]:
        return var_names(self.template)

    def instantiate(self, s: Mapping[str, Formula | str]) -> Formula:
        return instantiate(self, s)

    def __str__(self):
        return f"{self.name}: {render(self.template, sugar=True)}"


class MissingMetavariable(KeyError):
    pass


def _schema(name, text, note=""):
    return AxiomSchema(name, parse(text), note)


# Negation-free core (T), then the three negation axioms.
_CORE = [
    ("A1", "a => a | b"),
    ("A2", "b => a | b"),
    ("A3", "(a => c) => ((b => c) => (a | b => c))"),
    ("A4", "a & b => a"),
    ("A5", "(c => a) => ((c => b) => (c => a & b))"),
    ("A6", "1"),
    ("A7", "0 => a"),
    ("A8", "(a & b => c) => (a => (b => c))"),
    ("A9", "(a => (b => c)) => (a & b => c)"),
    ("A10", "(a => b) => ((b => a) => ((a -> c) => (b -> c)))"),
    ("A11", "(a => b) => ((b => a) => ((c -> b) => (c -> a)))"),
    ("A12", "1 => 0'"),
    ("A13", "1' => 0"),
    ("A14", "(a & b)' => a' | b'"),
]

# Extension axioms, named as they are added over DHMSH.
_EXTENSION = [
    ("A15", "a & b -> a"),
    ("A16", "(a | b)' => a' & b'"),
    ("A17", "a' & b' => (a | b)'"),
    ("A18", "a'' => a"),
    ("A19", "a => a''"),
    ("A20", "(a | b)'' => a'' | b''"),
    ("A21", "a'' | b'' => (a | b)''"),
    ("A22", "a''' => a'"),
    ("A23", "a' => a'''"),
    ("A24", "a | a'"),
    ("A25", "(a | a*)' => a' & a*'"),
    ("A26", "a' & a*' => (a | a*)'"),
    ("A27", "(a | b*)' => a' & b*'"),
    ("A28", "a' & b*' => (a | b*)'"),
    ("A29", "a | a*"),
    ("A30", "(a | b')' => a' & b''"),
    ("A31", "a' & b'' => (a | b')'"),
    ("A32", "a' & a'' => 0"),
    ("A33", "a' | a''"),
]

# Moisil's logic, with plain implication and rules mp/cp.
_MOISIL = [
    ("B1", "a -> (b -> a)"),
    ("B2", "(a -> (b -> c)) -> ((a -> b) -> (a -> c))"),
    ("B3", "a & b -> a"),
    ("B4", "a & b -> b"),
    ("B5", "((a -> b) -> (a -> c)) -> (a -> b & c)"),
    ("B6", "a -> a | b"),
    ("B7", "b -> a | b"),
    ("B8", "((a -> c) -> (b -> c)) -> (a | b -> c)"),
    ("B9", "a -> a''"),
    ("B10", "a'' -> a"),
]

SCHEMAS: dict[str, AxiomSchema] = {n: _schema(n, t) for n, t in _CORE + _EXTENSION + _MOISIL}

T_AXIOMS = tuple(f"A{i}" for i in range(1, 12))
T0_AXIOMS = T_AXIOMS + ("A12", "A13", "A14")

# Theorems used as cited premises.  "contraposition" is only a theorem of
# logics with the deduction property, and is checked for that.
LEMMAS: dict[str, AxiomSchema] = {
    "identity": _schema("identity", "a => a", "every formula implies itself"),
    "meet-right": _schema("meet-right", "a & b => b", "right conjunct elimination"),
    "transitivity": _schema("transitivity", "(a => b) => ((b => c) => (a => c))",
                            "hypothetical syllogism for ->H"),
    "contraposition": _schema("contraposition", "(a => b) => (b' => a')",
                              "contraposition; needs the deduction property"),
}


def get_schema(name: str) -> AxiomSchema:
    if name in SCHEMAS:
        return SCHEMAS[name]
    raise KeyError(f"unknown axiom schema {name!r}")


def _coerce(v) -> Formula:
    return parse(v) if isinstance(v, str) else v


def instantiate(schema: AxiomSchema | str, s: Mapping[str, Formula | str]) -> Formula:
    """Replace every metavariable of the schema by its image under s."""
    if isinstance(schema, str):
        schema = get_schema(schema)
    sub = {GREEK.get(k, k): _coerce(v) for k, v in s.items()}
    missing = [m for m in schema.metavars if m not in sub]
    if missing:
        raise MissingMetavariable(f"{schema.name}: no value for {', '.join(missing)}")
    return substitute(schema.template, sub)


def match(template: Formula, f: Formula, s: dict | None = None) -> dict | None:
    """One-way matching: a substitution s with template[s] == f, extending s."""
    s = dict(s or {})
    stack = [(template, f)]
    while stack:
        t, g = stack.pop()
        if isinstance(t, Var):
            bound = s.get(t.name)
            if bound is None:
                s[t.name] = g
            elif bound != g:
                return None
            continue
        if type(t) is not type(g):
            return None
        if isinstance(t, Neg):
            stack.append((t.arg, g.arg))
        elif isinstance(t, (Meet, Join, Imp)):
            stack.append((t.right, g.right))
            stack.append((t.left, g.left))
    return s


# ---------------------------------------------------------------- logics

@dataclass(frozen=True)
class AxiomSystem:
    logic: str
    schemas: tuple[AxiomSchema, ...]
    rules: tuple[str, ...]
    deduction_property: bool | None = None
    note: str = ""

    def get(self, name: str) -> AxiomSchema | None:
        for sc in self.schemas:
            if sc.name == name:
                return sc
        return None

    def names(self) -> list[str]:
        return [sc.name for sc in self.schemas]


def _identity_schemas(prefix: str, idents) -> list[AxiomSchema]:
    """Axioms s =>H t and t =>H s for s = t; just s when t is 1."""
    out = []
    for k, e in enumerate(idents, 1):
        label = f"{prefix}.{e.name or k}"
        lhs, rhs = e.lhs, e.rhs
        if isinstance(rhs, Top):
            out.append(AxiomSchema(label, lhs, str(e)))
        elif isinstance(lhs, Top):
            out.append(AxiomSchema(label, rhs, str(e)))
        else:
            out.append(AxiomSchema(label + ":lr", imp_h(lhs, rhs), str(e)))
            out.append(AxiomSchema(label + ":rl", imp_h(rhs, lhs), str(e)))
    return out


# classes whose identities are already covered by T0
_BUILTIN_CLASSES = {"SH", "DHMSH"}


def _class_schemas(cls_name: str) -> list[AxiomSchema]:
    from .classes import get_class
    out = []
    for c in get_class(cls_name).chain():
        if c.name in _BUILTIN_CLASSES:
            continue
        out.extend(_identity_schemas(c.name, c.own_identities()))
    return out


def _list_schemas(name: str) -> list[str]:
    from .varieties import LOGICS
    names: list[str] = []
    lg = LOGICS[name]
    while lg is not None:
        names[:0] = list(lg.axioms)
        lg = LOGICS.get(lg.base) if lg.base else None
    return list(dict.fromkeys(names))


def _corpus_schemas(generators: Sequence[str]) -> list[AxiomSchema] | None:
    from .corpus import corpus
    want = sorted(generators)
    for key, entry in corpus().items():
        if sorted(entry.generators) == want:
            return _class_schemas(entry.ambient) + _identity_schemas(key, entry.identities())
    return None


@lru_cache(maxsize=None)
def axiom_system(logic: str) -> AxiomSystem:
    """Schemas and rules of a registered logic.

    LIST-style logics use their named schemas.  Logics of identity-defined
    varieties get T0 plus two schemas per defining identity.  Logics of
    finitely generated varieties borrow a base from the corpus when one with
    the same generators exists, and otherwise fall back to T0 alone (sound,
    not complete).
    """
    from .varieties import NotFinitelyGenerated, deduction_property, get_logic, get_variety
    lg = get_logic(logic)
    if lg.axioms:
        schemas = [SCHEMAS[n] for n in _list_schemas(lg.name)]
        note = "named schemas"
    else:
        schemas = [SCHEMAS[n] for n in T0_AXIOMS]
        v = get_variety(lg.variety)
        extra = None
        if v.cls is not None:
            extra, note = _class_schemas(v.cls), "T0 plus identity axioms"
        elif v.generators:
            extra = _corpus_schemas(v.generators)
            note = "T0 plus a corpus base" if extra is not None else "T0 only; incomplete"
        else:
            note = "T0 only; incomplete"
        schemas += extra or []
    dp = None
    try:
        dp = deduction_property(lg.variety).holds
    except (NotFinitelyGenerated, KeyError):
        pass
    return AxiomSystem(lg.name, tuple(schemas), lg.rules, dp, note)


# ---------------------------------------------------------------- scripts

@dataclass(frozen=True)
class Axiom:
    schema: str
    subst: tuple[tuple[str, Formula], ...] = ()

    def __str__(self):
        if not self.subst:
            return f"axiom {self.schema}"
        inner = ", ".join(f"{k}={render(v, sugar=True)}" for k, v in self.subst)
        return f"axiom {self.schema} [{inner}]"


@dataclass(frozen=True)
class Premise:
    index: int

    def __str__(self):
        return f"premise {self.index}"


@dataclass(frozen=True)
class Rule:
    name: str                 # smp, scp, mp, cp
    refs: tuple[int, ...]

    def __str__(self):
        return f"{self.name} " + " ".join(map(str, self.refs))


Justification = Axiom | Premise | Rule


@dataclass(frozen=True)
class PremiseDecl:
    formula: Formula
    cited: str | None = None


@dataclass(frozen=True)
class Line:
    number: int
    formula: Formula
    just: Justification


@dataclass
class ProofScript:
    logic: str
    premises: list[PremiseDecl] = field(default_factory=list)
    lines: list[Line] = field(default_factory=list)
    discharge: int | None = None          # premise index for deduction fixtures
    name: str = ""
    sugar: bool = True                    # print ->H shapes as =>

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None

    def premise_formulas(self) -> list[Formula]:
        return [p.formula for p in self.premises]

    def dump(self) -> str:
        return dump_script(self)


class ScriptSyntaxError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


_LINE = re.compile(r"^(\d+)\.\s*(.*?)\s*;\s*(.*)$")
_SUBST = re.compile(r"\[(.*)\]\s*$")


def _split_top(text: str) -> list[str]:
    """Split on commas outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p.strip() for p in out if p.strip()]


def parse_justification(text: str, lineno: int = 0) -> Justification:
    text = text.strip()
    head, _, rest = text.partition(" ")
    head = head.lower()
    if head == "axiom":
        m = _SUBST.search(rest)
        name = (rest[:m.start()] if m else rest).strip()
        if not name:
            raise ScriptSyntaxError("axiom needs a schema name", lineno)
        pairs = []
        if m:
            for item in _split_top(m.group(1)):
                k, eq, v = item.partition("=")
                if not eq:
                    raise ScriptSyntaxError(f"bad substitution item {item!r}", lineno)
                k = GREEK.get(k.strip(), k.strip())
                try:
                    pairs.append((k, parse(v)))
                except ParseError as exc:
                    raise ScriptSyntaxError(str(exc), lineno) from None
        return Axiom(name, tuple(pairs))
    try:
        nums = tuple(int(t) for t in rest.split())
    except ValueError:
        raise ScriptSyntaxError(f"bad line references in {text!r}", lineno) from None
    if head == "premise" and len(nums) == 1:
        return Premise(nums[0])
    if head in ("smp", "mp") and len(nums) == 2:
        return Rule(head, nums)
    if head in ("scp", "cp") and len(nums) == 1:
        return Rule(head, nums)
    raise ScriptSyntaxError(f"unknown justification {text!r}", lineno)


def parse_script(text: str, name: str = "") -> ProofScript:
    """Read the script format: ``logic NAME``, optional ``premises:`` block, numbered lines."""
    logic = None
    premises: list[PremiseDecl] = []
    lines: list[Line] = []
    discharge = None
    in_premises = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("logic "):
            logic = s[6:].strip()
            continue
        if s.startswith("discharge "):
            discharge = int(s.split()[1])
            continue
        if s == "premises:":
            in_premises = True
            continue
        m = _LINE.match(s)
        if m:
            in_premises = False
            n, ftext, jtext = m.groups()
            try:
                f = parse(ftext)
            except ParseError as exc:
                raise ScriptSyntaxError(str(exc), lineno) from None
            lines.append(Line(int(n), f, parse_justification(jtext, lineno)))
            continue
        if in_premises:
            body = s[1:].strip() if s.startswith("-") else s
            cited = None
            if ";" in body:
                body, tag = (p.strip() for p in body.split(";", 1))
                if not tag.startswith("cited "):
                    raise ScriptSyntaxError(f"unknown premise tag {tag!r}", lineno)
                cited = tag[6:].strip()
            try:
                premises.append(PremiseDecl(parse(body), cited))
            except ParseError as exc:
                raise ScriptSyntaxError(str(exc), lineno) from None
            continue
        raise ScriptSyntaxError(f"cannot read {s!r}", lineno)
    if logic is None:
        raise ScriptSyntaxError("missing 'logic NAME' header", 1)
    return ProofScript(logic, premises, lines, discharge, name)


def load_script(path) -> ProofScript:
    from pathlib import Path
    p = Path(path)
    return parse_script(p.read_text(), p.stem)


def dump_script(script: ProofScript) -> str:
    out = [f"logic {script.logic}"]
    if script.discharge is not None:
        out.append(f"discharge {script.discharge}")
    if script.premises:
        out.append("premises:")
        for p in script.premises:
            tag = f" ; cited {p.cited}" if p.cited else ""
            out.append(f"  - {render(p.formula, sugar=script.sugar)}{tag}")
    for ln in script.lines:
        out.append(f"{ln.number}. {render(ln.formula, sugar=script.sugar)} ; {ln.just}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- checking

@dataclass
class LineStatus:
    number: int
    ok: bool
    reason: str = ""


@dataclass
class Verdict:
    accepted: bool
    lines: list[LineStatus] = field(default_factory=list)
    first_failure: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.accepted

    def as_dict(self) -> dict:
        return {"verdict": "accepted" if self.accepted else "rejected",
                "first_failure": self.first_failure, "reason": self.reason or None,
                "lines": [{"line": s.number, "ok": s.ok, "reason": s.reason or None}
                          for s in self.lines]}

    def __str__(self):
        if self.accepted:
            return f"accepted ({len(self.lines)} lines)"
        return f"rejected at line {self.first_failure}: {self.reason}"


def _check_cited(decl: PremiseDecl, system: AxiomSystem) -> str | None:
    lemma = LEMMAS.get(decl.cited or "")
    if lemma is None:
        return f"unknown cited lemma {decl.cited!r}"
    if match(lemma.template, decl.formula) is None:
        return f"not an instance of {decl.cited}: {render(lemma.template, sugar=True)}"
    if decl.cited == "contraposition" and not system.deduction_property:
        return f"contraposition is not a theorem of {system.logic}"
    return None


def _check_axiom(j: Axiom, f: Formula, system: AxiomSystem) -> str | None:
    sc = system.get(j.schema)
    if sc is None:
        return f"{j.schema} is not an axiom of {system.logic}"
    given = dict(j.subst)
    extra = set(given) - set(sc.metavars)
    if extra:
        return f"{j.schema} has no metavariable {', '.join(sorted(extra))}"
    if match(sc.template, f, given) is None:
        return f"not an instance of {sc.name}: {render(sc.template, sugar=True)}"
    return None


def _check_rule(j: Rule, f: Formula, known: dict[int, Formula],
                system: AxiomSystem) -> str | None:
    if j.name not in system.rules:
        return f"rule {j.name} is not a rule of {system.logic}"
    for r in j.refs:
        if r not in known:
            return f"line {r} is not an earlier accepted line"
    if j.name in ("smp", "mp"):
        a, b = (known[r] for r in j.refs)
        for minor, major in ((a, b), (b, a)):
            if j.name == "smp":
                h = match_imp_h(major)
                if h is not None and h[0] == minor and h[1] == f:
                    return None
            elif isinstance(major, Imp) and major.left == minor and major.right == f:
                return None
        shape = "phi and phi => gamma" if j.name == "smp" else "phi and phi -> gamma"
        return f"{j.name} needs {shape} with gamma the current line"
    src = known[j.refs[0]]
    if j.name == "scp":
        h = match_imp_h(src)
        if h is None:
            return f"scp needs a line of the form phi => gamma; line {j.refs[0]} is not"
        want = imp_h(Neg(h[1]), Neg(h[0]))
    else:
        if not isinstance(src, Imp):
            return f"cp needs a line of the form phi -> gamma; line {j.refs[0]} is not"
        want = Imp(Neg(src.right), Neg(src.left))
    if f != want:
        return f"{j.name} of line {j.refs[0]} gives {render(want, sugar=True)}"
    return None


def check_proof(script: ProofScript) -> Verdict:
    """Check every line; the verdict records the first failing line."""
    try:
        system = axiom_system(script.logic)
    except KeyError as exc:
        return Verdict(False, [], 0, f"unknown logic: {exc}")
    for i, p in enumerate(script.premises, 1):
        if p.cited:
            why = _check_cited(p, system)
            if why:
                return Verdict(False, [], 0, f"premise {i}: {why}")
    known: dict[int, Formula] = {}
    statuses: list[LineStatus] = []
    first, first_reason = None, ""
    for ln in script.lines:
        j = ln.just
        if ln.number in known or (known and ln.number <= max(known)):
            why = "line numbers must increase"
        elif isinstance(j, Axiom):
            why = _check_axiom(j, ln.formula, system)
        elif isinstance(j, Premise):
            if not 1 <= j.index <= len(script.premises):
                why = f"no premise {j.index}"
            elif script.premises[j.index - 1].formula != ln.formula:
                why = f"premise {j.index} is {render(script.premises[j.index - 1].formula, sugar=True)}"
            else:
                why = None
        else:
            why = _check_rule(j, ln.formula, known, system)
        statuses.append(LineStatus(ln.number, why is None, why or ""))
        if why is None:
            known[ln.number] = ln.formula
        elif first is None:
            first, first_reason = ln.number, why
    if not script.lines:
        return Verdict(False, [], 0, "empty script")
    return Verdict(first is None, statuses, first, first_reason)


def cited_only(script: ProofScript) -> bool:
    """True when every premise is a cited theorem, so each line is a theorem."""
    return all(p.cited for p in script.premises)


# ---------------------------------------------------------------- search

@dataclass
class _Node:
    formula: Formula
    just: object           # ("axiom", name, subst) | ("premise", i) | (rule, children)


def _pool(goal: Formula, gamma: Sequence[Formula]) -> list[Formula]:
    seen: dict[Formula, None] = {}
    for g in [goal, *gamma]:
        for h in subformulas(g):
            seen.setdefault(h, None)
    seen.setdefault(TOP, None)
    return sorted(seen, key=lambda f: (len(render(f)), render(f)))


def search_proof(logic: str, gamma: Sequence[Formula | str], goal: Formula | str,
                 depth_cap: int = 2) -> ProofScript | None:
    """Iterative deepening over rule applications; None when nothing is found.

    Axiom instances are found by matching schemas against the current goal;
    the minor premises tried for smp are subformulas of the goal and of
    gamma, plus 1.  Finding nothing says nothing about provability.
    """
    system = axiom_system(logic)
    gamma = [_coerce(g) for g in gamma]
    goal = _coerce(goal)
    pool = _pool(goal, gamma)
    binary, unary = ("smp", "scp") if "smp" in system.rules else ("mp", "cp")

    failed: set[tuple[Formula, int]] = set()

    def prove(g: Formula, d: int) -> _Node | None:
        if (g, d) in failed:
            return None
        if g in gamma:
            return _Node(g, ("premise", gamma.index(g) + 1))
        for sc in system.schemas:
            if isinstance(sc.template, Var):
                continue
            s = match(sc.template, g)
            if s is not None:
                return _Node(g, ("axiom", sc.name, tuple(sorted(s.items()))))
        if d > 0:
            h = match_imp_h(g) if unary == "scp" else ((g.left, g.right) if isinstance(g, Imp) else None)
            if h is not None and isinstance(h[0], Neg) and isinstance(h[1], Neg):
                src = imp_h(h[1].arg, h[0].arg) if unary == "scp" else Imp(h[1].arg, h[0].arg)
                sub = prove(src, d - 1)
                if sub is not None:
                    return _Node(g, (unary, (sub,)))
            for phi in pool:
                major = imp_h(phi, g) if binary == "smp" else Imp(phi, g)
                left = prove(phi, d - 1)
                if left is None:
                    continue
                right = prove(major, d - 1)
                if right is not None:
                    return _Node(g, (binary, (left, right)))
        failed.add((g, d))
        return None

    for d in range(depth_cap + 1):
        node = prove(goal, d)
        if node is not None:
            return _linearize(node, logic, gamma)
    return None


def _linearize(root: _Node, logic: str, gamma: list[Formula]) -> ProofScript:
    lines: list[Line] = []
    index: dict[Formula, int] = {}

    def emit(node: _Node) -> int:
        if node.formula in index:
            return index[node.formula]
        kind = node.just[0]
        if kind == "axiom":
            just = Axiom(node.just[1], node.just[2])
        elif kind == "premise":
            just = Premise(node.just[1])
        else:
            refs = tuple(emit(c) for c in node.just[1])
            just = Rule(kind, refs)
        n = len(lines) + 1
        lines.append(Line(n, node.formula, just))
        index[node.formula] = n
        return n

    emit(root)
    return ProofScript(logic, [PremiseDecl(g) for g in gamma], lines, name="search")


# ---------------------------------------------------------------- deduction

class PropertyAbsent(ValueError):
    pass


class _Builder:
    def __init__(self, logic, premises):
        self.logic = logic
        self.premises: list[PremiseDecl] = list(premises)
        self.lines: list[Line] = []

    def premise(self, f: Formula, cited: str | None = None) -> int:
        for i, p in enumerate(self.premises, 1):
            if p.formula == f:
                return i
        self.premises.append(PremiseDecl(f, cited))
        return len(self.premises)

    def add(self, f: Formula, just) -> int:
        n = len(self.lines) + 1
        self.lines.append(Line(n, f, just))
        return n

    def axiom(self, name: str, **s) -> int:
        f = instantiate(name, s)
        return self.add(f, Axiom(name, tuple(sorted(s.items()))))

    def cited(self, lemma: str, **s) -> int:
        f = instantiate(LEMMAS[lemma], s)
        return self.add(f, Premise(self.premise(f, lemma)))

    def smp(self, minor: int, major: int) -> int:
        h = match_imp_h(self.lines[major - 1].formula)
        assert h is not None and h[0] == self.lines[minor - 1].formula
        return self.add(h[1], Rule("smp", (minor, major)))

    def script(self, name="") -> ProofScript:
        return ProofScript(self.logic, self.premises, self.lines, name=name)


def weaken(b: _Builder, line: int, phi: Formula) -> int:
    """From a line psi, derive phi => psi (four lines, no cited lemmas)."""
    psi = b.lines[line - 1].formula
    a4 = b.axiom("A4", a=psi, b=phi)
    a8 = b.axiom("A8", a=psi, b=phi, c=psi)
    k = b.smp(a4, a8)
    return b.smp(line, k)


def discharge(script: ProofScript, index: int | None = None) -> ProofScript:
    """Turn a proof of Gamma, phi |- psi into one of Gamma |- phi => psi.

    phi is premise ``index`` (default: script.discharge, else the last
    premise).  Each line is rewritten by the case of its justification:
    axioms and other premises are weakened, phi itself becomes an instance
    of the identity lemma, and smp/scp lines are combined from the
    rewritten earlier lines.  The scp case needs the contraposition lemma,
    which the checker only allows in logics with the deduction property.
    """
    if index is None:
        index = script.discharge or len(script.premises)
    phi = script.premises[index - 1].formula
    keep = [p for i, p in enumerate(script.premises, 1) if i != index]
    b = _Builder(script.logic, keep)

    def new_premise(i: int) -> int:
        return i if i < index else i - 1

    done: dict[int, int] = {}
    for ln in script.lines:
        j, psi = ln.just, ln.formula
        if isinstance(j, Premise) and j.index == index:
            done[ln.number] = b.cited("identity", a=phi)
        elif isinstance(j, (Premise, Axiom)):
            src = b.add(psi, Premise(new_premise(j.index)) if isinstance(j, Premise) else j)
            done[ln.number] = weaken(b, src, phi)
        elif j.name == "smp":
            x, y = j.refs
            fx, fy = (script.lines[_pos(script, r)].formula for r in (x, y))
            h = match_imp_h(fy)
            if h is None or h[0] != fx:
                x, y = y, x
                fx, fy = fy, fx
            alpha = fx
            l1, l2 = done[x], done[y]                       # phi=>alpha, phi=>(alpha=>psi)
            l3 = b.cited("identity", a=phi)
            a5 = b.axiom("A5", c=phi, a=phi, b=alpha)
            l4 = b.smp(l1, b.smp(l3, a5))                   # phi => phi & alpha
            a9 = b.axiom("A9", a=phi, b=alpha, c=psi)
            l5 = b.smp(l2, a9)                              # phi & alpha => psi
            tr = b.cited("transitivity", a=phi, b=Meet(phi, alpha), c=psi)
            done[ln.number] = b.smp(l5, b.smp(l4, tr))
        elif j.name == "scp":
            src = script.lines[_pos(script, j.refs[0])].formula
            a, c = match_imp_h(src)
            l1 = done[j.refs[0]]                            # phi => (a => c)
            cp = b.cited("contraposition", a=a, b=c)
            tr = b.cited("transitivity", a=phi, b=src, c=psi)
            done[ln.number] = b.smp(cp, b.smp(l1, tr))
        else:
            raise ValueError(f"cannot discharge through rule {j.name}")
    return ProofScript(script.logic, b.premises, b.lines, name=f"{script.name}-discharged")


def _pos(script: ProofScript, number: int) -> int:
    for k, ln in enumerate(script.lines):
        if ln.number == number:
            return k
    raise KeyError(number)


@dataclass
class DischargeItem:
    name: str
    original: Verdict
    transformed: Verdict
    goal: str
    goal_ok: bool

    @property
    def ok(self) -> bool:
        return self.original.accepted and self.transformed.accepted and self.goal_ok

    def as_dict(self) -> dict:
        return {"fixture": self.name, "original": str(self.original),
                "transformed": str(self.transformed), "goal": self.goal, "ok": self.ok}


@dataclass
class DeductionClosureReport:
    logic: str
    items: list[DischargeItem]

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.items)

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"logic": self.logic, "verdict": "pass" if self.ok else "fail",
                "items": [it.as_dict() for it in self.items]}


def deduction_closure_check(logic: str, fixtures: Sequence[ProofScript] | None = None
                            ) -> DeductionClosureReport:
    """For each fixture proof of Gamma, phi |- psi, check the discharged proof of phi => psi.

    Raises PropertyAbsent when the logic's variety lacks the deduction property.
    """
    system = axiom_system(logic)
    if not system.deduction_property:
        raise PropertyAbsent(f"{logic}: deduction property absent or not established")
    if fixtures is None:
        fixtures = [s for s in fixture_scripts().values() if s.discharge is not None]
    items = []
    for s in fixtures:
        s = ProofScript(logic, s.premises, s.lines, s.discharge, s.name)
        v0 = check_proof(s)
        t = discharge(s)
        v1 = check_proof(t)
        idx = s.discharge or len(s.premises)
        goal = imp_h(s.premises[idx - 1].formula, s.conclusion)
        items.append(DischargeItem(s.name, v0, v1, render(goal, sugar=True), t.conclusion == goal))
    return DeductionClosureReport(logic, items)


# ---------------------------------------------------------------- fixtures

def _proof_files() -> Iterator:
    root = resources.files("shlab") / "data" / "proofs"
    for p in sorted(root.iterdir(), key=lambda q: q.name):
        if p.name.endswith(".proof"):
            yield p


@lru_cache(maxsize=None)
def _fixture_texts() -> dict[str, str]:
    return {p.name[:-6]: p.read_text() for p in _proof_files()}


def fixture_scripts() -> dict[str, ProofScript]:
    """Shipped scripts that should be accepted (names not starting with 'mut-')."""
    return {n: parse_script(t, n) for n, t in _fixture_texts().items() if not n.startswith("mut-")}


def mutation_scripts() -> dict[str, tuple[ProofScript, int]]:
    """Shipped single-line mutations with the line at which each must be rejected."""
    out = {}
    for n, t in _fixture_texts().items():
        if n.startswith("mut-"):
            m = re.search(r"#\s*reject-at:\s*(\d+)", t)
            out[n] = (parse_script(t, n), int(m.group(1)) if m else -1)
    return out


__all__ = [
    "AxiomSchema", "SCHEMAS", "LEMMAS", "T_AXIOMS", "T0_AXIOMS", "get_schema", "instantiate",
    "match", "MissingMetavariable", "AxiomSystem", "axiom_system", "Axiom", "Premise", "Rule",
    "PremiseDecl", "Line", "ProofScript", "ScriptSyntaxError", "parse_script", "load_script",
    "dump_script", "LineStatus", "Verdict", "check_proof", "cited_only", "search_proof",
    "discharge", "weaken", "deduction_closure_check", "DeductionClosureReport", "PropertyAbsent",
    "fixture_scripts", "mutation_scripts",
]
