"""Identity-defined classes of algebras, each relative to an ambient class."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraError, FiniteAlgebra
from .equations import HoldsResult, Identity, holds, identities_from


@dataclass(frozen=True)
class ClassSpec:
    name: str
    ambient: str          # name of the ambient class, or "all"
    identities: tuple[str, ...]
    description: str = ""
    aliases: tuple[str, ...] = field(default=())

    def own_identities(self) -> list[Identity]:
        return identities_from(list(self.identities))

    def chain(self) -> list["ClassSpec"]:
        """Ambient chain from the root down to this class."""
        out = [self]
        while out[-1].ambient != "all":
            out.append(get_class(out[-1].ambient))
        return out[::-1]

    def all_identities(self) -> list[Identity]:
        out: list[Identity] = []
        for c in self.chain():
            out.extend(c.own_identities())
        return out

    def uses_negation(self) -> bool:
        from .formula import Neg, subformulas
        return any(isinstance(g, Neg) for e in self.all_identities()
                   for side in (e.lhs, e.rhs) for g in subformulas(side))


_SPECS = [
    ClassSpec("SH", "all", ("SH1", "SH2", "SH3", "SH4"), "semi-Heyting algebras"),
    ClassSpec("H", "SH", ("H",), "Heyting algebras"),
    ClassSpec("StSH", "SH", ("stone",), "Stone semi-Heyting algebras", ("Stone-SH",)),
    ClassSpec("SLSH", "SH", ("semilinear",), "semi-linear semi-Heyting algebras", ("semi-linear",)),
    ClassSpec("DHMSH", "SH", ("hemimorphism",), "dually hemimorphic semi-Heyting algebras"),
    ClassSpec("DHMH", "DHMSH", ("H",)),
    ClassSpec("OCKSH", "DHMSH", ("join-demorgan",), "Ockham semi-Heyting algebras"),
    ClassSpec("DmsSH", "OCKSH", ("dms",), "De Morgan-Stone-like: x'' <= x"),
    ClassSpec("DMSH", "OCKSH", ("involution",), "De Morgan semi-Heyting algebras"),
    ClassSpec("DMH", "DMSH", ("H",), "De Morgan Heyting algebras"),
    ClassSpec("DSDSH", "DHMSH", ("dsd-join", "triple-neg")),
    ClassSpec("DQDSH", "DSDSH", ("dms",), "dually quasi-De Morgan semi-Heyting algebras"),
    ClassSpec("DPCSH", "DQDSH", ("excluded-middle",), "dually pseudocomplemented semi-Heyting algebras"),
    ClassSpec("DPCH", "DPCSH", ("H",)),
    ClassSpec("BDQDSH", "DQDSH", ("blended",)),
    ClassSpec("SBDQDSH", "DQDSH", ("strongly-blended",)),
    ClassSpec("DQDBSH", "DQDSH", ("star-excluded-middle",)),
    ClassSpec("DQSSH", "DHMSH", ("dms", "weak-join-demorgan", "dual-stone")),
    ClassSpec("DSSH", "DQSSH", ("join-demorgan",)),
    ClassSpec("BDQSSH", "DQSSH", ("blended",)),
    ClassSpec("SBDQSSH", "DQSSH", ("strongly-blended",)),
    ClassSpec("DSCSH", "DHMSH", ("excluded-middle",)),
    ClassSpec("DDPCSH", "DHMSH", ("dual-double",)),
    ClassSpec("DAPCSH", "DDPCSH", ("dms",)),
    # level 1, regular, Stone
    ClassSpec("DQDSH1", "DQDSH", ("level1",), "DQDSH-algebras of level 1", ("level-1",)),
    ClassSpec("RDQDSH", "DQDSH", ("regular",), "regular DQDSH-algebras", ("regular",)),
    ClassSpec("DQDStSH", "DQDSH", ("stone",)),
    ClassSpec("DQDStSH1", "DQDStSH", ("level1",)),
    ClassSpec("RDQDStSH1", "DQDStSH1", ("regular",)),
    ClassSpec("RDQDStH1", "RDQDStSH1", ("H",)),
    ClassSpec("RDMStSH1", "RDQDStSH1", ("involution",)),
    ClassSpec("RDPCStSH1", "RDQDStSH1", ("excluded-middle",)),
    ClassSpec("RDMStH1", "RDMStSH1", ("H",)),
    ClassSpec("RDPCStH1", "RDPCStSH1", ("H",)),
    ClassSpec("RDQDcmStSH1", "RDQDStSH1", ("commutative",)),
    ClassSpec("DMSH1", "DMSH", ("level1",)),
    ClassSpec("RDMSH1", "DMSH1", ("regular",)),
    ClassSpec("RDMH1", "RDMSH1", ("H",)),
    ClassSpec("RDMcmSH1", "RDMSH1", ("commutative",)),
    # JI-distributive and linear
    ClassSpec("JIDSH", "DQDSH", ("JID",), "JI-distributive DQDSH-algebras", ("JID",)),
    ClassSpec("JIDSH1", "JIDSH", ("level1",)),
    ClassSpec("JIDL1", "JIDSH1", ("semilinear",)),
    ClassSpec("DStHC", "JIDL1", ("excluded-middle",)),
    # chain-generated varieties, by their identity bases
    ClassSpec("DMHC", "DMSH", ("star-regular", "semilinear")),
    ClassSpec("DPCHC", "DQDSH", ("plus-is-neg", "semilinear")),
    ClassSpec("DQDSHC3", "DQDSH", ("dqdc3-double-star", "dqdc3-regular")),
    ClassSpec("DMSHC3", "DQDSHC3", ("involution",)),
    ClassSpec("DPCSHC3", "DQDSHC3", ("excluded-middle",)),
    ClassSpec("V2", "DHMSH", ("neg-star-is-id",), "the variety generated by 2e and 2ebar"),
]

REGISTRY: dict[str, ClassSpec] = {}
_ALIASES: dict[str, str] = {}
for _c in _SPECS:
    assert _c.name not in REGISTRY, _c.name
    REGISTRY[_c.name] = _c
    for _a in _c.aliases:
        _ALIASES[_a] = _c.name


class UnknownClass(KeyError):
    pass


def get_class(name: str | ClassSpec) -> ClassSpec:
    if isinstance(name, ClassSpec):
        return name
    key = _ALIASES.get(name, name)
    if key not in REGISTRY:
        raise UnknownClass(name)
    return REGISTRY[key]


def class_names() -> list[str]:
    return list(REGISTRY)


@dataclass
class ClassReport:
    algebra: str
    cls: str
    ok: bool
    failure: HoldsResult | None = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        out = {"algebra": self.algebra, "class": self.cls, "verdict": "pass" if self.ok else "fail"}
        if self.failure is not None:
            out["failure"] = self.failure.as_dict()
        if self.message:
            out["message"] = self.message
        return out

    def __str__(self):
        if self.ok:
            return f"{self.algebra} is in {self.cls}"
        if self.failure is not None:
            return f"{self.algebra} is not in {self.cls}: {self.failure}"
        return f"{self.algebra} is not in {self.cls}: {self.message}"


def check_class(A: FiniteAlgebra, c: str | ClassSpec) -> ClassReport:
    spec = get_class(c)
    for e in spec.all_identities():
        try:
            r = holds(A, e)
        except AlgebraError as exc:
            return ClassReport(A.name, spec.name, False, message=str(exc))
        if not r.ok:
            return ClassReport(A.name, spec.name, False, r)
    return ClassReport(A.name, spec.name, True)


def is_semiheyting(A: FiniteAlgebra) -> ClassReport:
    return check_class(A, "SH")


def classes_of(A: FiniteAlgebra) -> list[str]:
    return [name for name in REGISTRY if check_class(A, name).ok]
