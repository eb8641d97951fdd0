"""Identities, exhaustive validity checks and base verification."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .algebra import FiniteAlgebra, decode_valuation, evaluate_all, valuation_grid
from .formula import (TOP, Formula, Imp, Meet, Neg, Var, big_join, imp_h, parse, render, sort_names,
                      star, var_names)


@dataclass(frozen=True)
class Identity:
    lhs: Formula
    rhs: Formula
    name: str | None = None
    display: str | None = field(default=None, compare=False)

    def variables(self) -> list[str]:
        return sort_names(var_names(self.lhs) + var_names(self.rhs))

    def __str__(self) -> str:
        if self.display:
            return self.display
        return f"{render(self.lhs)} = {render(self.rhs)}"

    def label(self) -> str:
        return f"{self.name}: {self}" if self.name else str(self)


@dataclass(frozen=True)
class Inequality:
    """u <= v, checked as u & v = u."""
    lhs: Formula
    rhs: Formula
    name: str | None = None

    def to_identity(self) -> Identity:
        return Identity(Meet(self.lhs, self.rhs), self.lhs, self.name,
                        f"{render(self.lhs)} <= {render(self.rhs)}")

    def __str__(self) -> str:
        return f"{render(self.lhs)} <= {render(self.rhs)}"


IdentityLike = Union[Identity, Inequality]


def as_identity(e: IdentityLike) -> Identity:
    return e.to_identity() if isinstance(e, Inequality) else e


def parse_identity(text: str, name: str | None = None) -> Identity:
    """Parse ``lhs = rhs`` or ``lhs <= rhs``; a bare formula t means t = 1."""
    m = re.search(r"(?<![<=])(<=|=)(?![>=])", text)
    if m is None:
        f = parse(text)
        return Identity(f, TOP, name, f"{render(f)} = 1")
    lhs, rhs = parse(text[:m.start()]), parse(text[m.end():])
    if m.group(1) == "<=":
        return Inequality(lhs, rhs, name).to_identity()
    return Identity(lhs, rhs, name, f"{render(lhs)} = {render(rhs)}")


# ---------------------------------------------------------------- checking

@dataclass
class HoldsResult:
    identity: Identity
    algebra: str
    ok: bool
    checked: int
    valuation: dict[str, str] | None = None
    lhs_value: str | None = None
    rhs_value: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        out = {"identity": self.identity.label(), "algebra": self.algebra,
               "verdict": "pass" if self.ok else "fail", "valuations_checked": self.checked}
        if not self.ok:
            out.update(valuation=self.valuation, lhs=self.lhs_value, rhs=self.rhs_value)
        return out

    def __str__(self) -> str:
        if self.ok:
            return f"{self.algebra} |= {self.identity.label()}  ({self.checked} valuations)"
        val = ", ".join(f"{k}={v}" for k, v in self.valuation.items()) or "(no variables)"
        return (f"{self.algebra} fails {self.identity.label()} at {val}: "
                f"lhs={self.lhs_value}, rhs={self.rhs_value}")


def _sides(A: FiniteAlgebra, ident: Identity):
    names = ident.variables()
    grid = valuation_grid(A.order, len(names))
    lv = evaluate_all(ident.lhs, A, names, grid)
    rv = evaluate_all(ident.rhs, A, names, grid)
    return names, lv, rv


def holds(A: FiniteAlgebra, ident: IdentityLike) -> HoldsResult:
    """Check ident under all n**k valuations; report the first failure in lexicographic order."""
    ident = as_identity(ident)
    names, lv, rv = _sides(A, ident)
    bad = np.nonzero(lv != rv)[0]
    if bad.size == 0:
        return HoldsResult(ident, A.name, True, lv.size)
    i = int(bad[0])
    return HoldsResult(ident, A.name, False, lv.size, decode_valuation(A, names, i),
                       A.labels[int(lv[i])], A.labels[int(rv[i])])


def failures(A: FiniteAlgebra, ident: IdentityLike) -> Iterator[HoldsResult]:
    """Every failing valuation, in lexicographic order."""
    ident = as_identity(ident)
    names, lv, rv = _sides(A, ident)
    for i in np.nonzero(lv != rv)[0]:
        i = int(i)
        yield HoldsResult(ident, A.name, False, lv.size, decode_valuation(A, names, i),
                          A.labels[int(lv[i])], A.labels[int(rv[i])])


def holds_all(A: FiniteAlgebra, idents: Iterable[IdentityLike]) -> HoldsResult | None:
    """First failing identity result, or None if all hold."""
    for e in idents:
        r = holds(A, e)
        if not r.ok:
            return r
    return None


def holds_pointwise_star_eq_neg(A: FiniteAlgebra) -> bool:
    return A.neg is not None and all(A.imp[x][A.bottom] == A.neg[x] for x in range(A.order))


# ---------------------------------------------------------------- named constructions

DEDUCTION = Identity(imp_h(imp_h(Var("x"), Var("y")), imp_h(Neg(Var("y")), Neg(Var("x")))), TOP,
                     "deduction")


def chain_identity(kind: str, n: int) -> Identity:
    """x1 | ... | xn | (x1->x2) | ... | (x(n-1)->xn) = 1."""
    kind = kind.upper()
    lo = {"DMHC3": 2, "AN": 3}.get(kind)
    if lo is None:
        raise ValueError(f"unknown chain identity kind {kind!r}")
    if n < lo:
        raise ValueError(f"{kind} needs n >= {lo}")
    xs = [Var(f"x{i}") for i in range(1, n + 1)]
    parts = xs + [Imp(xs[i], xs[i + 1]) for i in range(n - 1)]
    name = f"DMHC3_{n}" if kind == "DMHC3" else f"An_{n}"
    return Identity(big_join(parts), TOP, name)


# ---------------------------------------------------------------- catalog

class UnknownIdentity(KeyError):
    pass


def parse_identity_file(text: str) -> tuple[dict[str, Identity], dict[str, list[str]]]:
    """Read ``id NAME: lhs = rhs`` / ``id NAME: lhs <= rhs`` and ``group NAME: a b c`` lines."""
    ids: dict[str, Identity] = {}
    groups: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"(id|group)\s+([^\s:]+)\s*:\s*(.*)$", line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'id NAME: ...' or 'group NAME: ...'")
        kind, name, body = m.groups()
        if name in ids or name in groups:
            raise ValueError(f"line {lineno}: duplicate name {name}")
        if kind == "id":
            ids[name] = parse_identity(body, name)
        else:
            groups[name] = body.split()
    return ids, groups


@lru_cache(maxsize=None)
def _catalog_data():
    text = resources.files("shlab").joinpath("data/identities.txt").read_text()
    return parse_identity_file(text)


def catalog() -> dict[str, Identity]:
    return dict(_catalog_data()[0])


def groups() -> dict[str, list[str]]:
    return dict(_catalog_data()[1])


def resolve(name: str) -> list[Identity]:
    """Identities named by a catalog entry, group, chain identity or corpus key."""
    ids, grp = _catalog_data()
    if name in ids:
        return [ids[name]]
    if name in grp:
        out: list[Identity] = []
        for member in grp[name]:
            out.extend(resolve(member))
        return out
    m = re.fullmatch(r"(DMHC3|An)_(\d+)", name)
    if m:
        return [chain_identity(m.group(1), int(m.group(2)))]
    from .corpus import corpus_identity
    found = corpus_identity(name)
    if found is not None:
        return [found]
    raise UnknownIdentity(name)


def get(name: str) -> Identity:
    found = resolve(name)
    if len(found) != 1:
        raise UnknownIdentity(f"{name} names a group of {len(found)} identities")
    return found[0]


def identities_from(spec: str | Sequence) -> list[Identity]:
    """Accept names, expressions or Identity objects; strings may be ';'-separated."""
    if isinstance(spec, str):
        spec = [s for s in spec.split(";") if s.strip()]
    out: list[Identity] = []
    for item in spec:
        if isinstance(item, (Identity, Inequality)):
            out.append(as_identity(item))
            continue
        item = item.strip()
        try:
            out.extend(resolve(item))
        except UnknownIdentity:
            out.append(parse_identity(item))
    return out


# ---------------------------------------------------------------- base verification

@dataclass
class ProbeResult:
    algebra: str
    in_ambient: bool
    ambient_failure: HoldsResult | None = None
    base_failure: HoldsResult | None = None
    member: bool | None = None
    certificate: object = None
    note: str = ""

    @property
    def satisfies_base(self) -> bool:
        return self.in_ambient and self.base_failure is None

    @property
    def consistent(self) -> bool:
        """Base holds exactly when the probe belongs to the generated variety.

        An undetermined membership is not a contradiction; it only blocks
        full separation.
        """
        if not self.in_ambient:
            return True
        if self.member is None:
            return True
        return self.member == self.satisfies_base

    def as_dict(self) -> dict:
        out: dict = {"algebra": self.algebra, "in_ambient": self.in_ambient}
        if not self.in_ambient:
            out["ambient_failure"] = self.ambient_failure.as_dict() if self.ambient_failure else None
            return out
        out["satisfies_base"] = self.satisfies_base
        if self.base_failure is not None:
            out["witness"] = self.base_failure.as_dict()
        out["member"] = self.member
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class BaseReport:
    generators: list[str]
    ambient: str
    base: list[Identity]
    generator_failures: list[HoldsResult]
    probes: list[ProbeResult]
    key: str | None = None

    @property
    def generator_side_ok(self) -> bool:
        return not self.generator_failures

    @property
    def ok(self) -> bool:
        return self.generator_side_ok and all(p.consistent for p in self.probes)

    @property
    def fully_separated(self) -> bool:
        return self.ok and all(p.member is not None for p in self.probes if p.in_ambient)

    def as_dict(self) -> dict:
        return {
            "key": self.key, "generators": self.generators, "ambient": self.ambient,
            "base": [e.label() for e in self.base],
            "verdict": "pass" if self.ok else "fail",
            "fully_separated": self.fully_separated,
            "generator_failures": [r.as_dict() for r in self.generator_failures],
            "probes": [p.as_dict() for p in self.probes],
        }

    def summary(self) -> str:
        lines = [f"base {'; '.join(e.label() for e in self.base)}",
                 f"  generators: {', '.join(self.generators)}  ambient: {self.ambient}"]
        for r in self.generator_failures:
            lines.append(f"  GENERATOR FAILURE: {r}")
        for p in self.probes:
            if not p.in_ambient:
                continue
            if p.base_failure is not None:
                state = f"fails base: {p.base_failure}"
            else:
                state = "satisfies base"
            mem = {True: "member", False: "not a member", None: "membership undetermined"}[p.member]
            flag = "" if p.consistent else "  <-- MISMATCH"
            note = f" ({p.note})" if p.note else ""
            lines.append(f"  {p.algebra}: {state}; {mem}{note}{flag}")
        lines.append(f"  verdict: {'pass' if self.ok else 'fail'}"
                     f"{'' if self.fully_separated or not self.ok else ' (not fully separated)'}")
        return "\n".join(lines)


class OutsideAmbient(ValueError):
    pass


def verify_base(generators: Sequence[FiniteAlgebra], ambient, base: Sequence[IdentityLike],
                probe_set: Sequence[FiniteAlgebra] | None = None, *, key: str | None = None,
                check_membership: bool = True, cap=None) -> BaseReport:
    """Check that `base` defines V(generators) relative to `ambient` on a probe set.

    A probe in the ambient that satisfies the base must be a member of the
    generated variety; a probe that fails it gets a witness.  Membership of
    base-failing probes is also computed when possible, as a cross-check.
    """
    from .classes import get_class, check_class
    from .varieties import CapExceeded, member_of_variety

    amb = get_class(ambient) if isinstance(ambient, str) else ambient
    base = [as_identity(e) for e in base]
    for G in generators:
        r = check_class(G, amb)
        if not r.ok:
            raise OutsideAmbient(f"generator {G.name} is not in {amb.name}: {r}")
    gen_fail = []
    for G in generators:
        for e in base:
            r = holds(G, e)
            if not r.ok:
                gen_fail.append(r)
    probes = []
    for P in (probe_set if probe_set is not None else []):
        amb_r = check_class(P, amb)
        if not amb_r.ok:
            probes.append(ProbeResult(P.name, False, ambient_failure=amb_r.failure))
            continue
        pr = ProbeResult(P.name, True, base_failure=holds_all(P, base))
        if pr.base_failure is not None and not gen_fail:
            # the failing identity holds in every generator, so it separates
            pr.member, pr.certificate = False, pr.base_failure
        elif check_membership:
            try:
                m = member_of_variety(P, list(generators), cap=cap)
                pr.member, pr.certificate = m.member, m.certificate
            except CapExceeded as exc:
                pr.note = f"cap exceeded: {exc}"
        probes.append(pr)
    return BaseReport([G.name for G in generators], amb.name, base, gen_fail, probes, key)
