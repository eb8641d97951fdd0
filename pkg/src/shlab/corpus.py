"""The shipped corpus of equational bases.

Each entry names a finitely generated variety (by generators), the ambient
class its base is relative to, and the base itself.  Entries are loaded from
``data/bases.ini``.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .equations import BaseReport, Identity, identities_from, parse_identity, verify_base


@dataclass(frozen=True)
class BaseEntry:
    key: str
    generators: tuple[str, ...]
    ambient: str
    ids: tuple[str, ...]
    curated: bool = False

    def identities(self) -> list[Identity]:
        return identities_from(list(self.ids))

    def as_dict(self) -> dict:
        return {"key": self.key, "generators": list(self.generators), "ambient": self.ambient,
                "ids": list(self.ids), "curated": self.curated}


def parse_corpus(text: str) -> dict[str, BaseEntry]:
    cp = configparser.RawConfigParser(comment_prefixes=("#",), inline_comment_prefixes=None)
    cp.read_string(text)
    out = {}
    for key in cp.sections():
        sec = cp[key]
        gens = tuple(g.strip() for g in sec["generators"].split(",") if g.strip())
        ids = tuple(i.strip() for i in sec["ids"].split(";") if i.strip())
        out[key] = BaseEntry(key, gens, sec["ambient"].strip(), ids, sec.getboolean("curated", False))
    return out


@lru_cache(maxsize=None)
def corpus() -> dict[str, BaseEntry]:
    text = resources.files("shlab").joinpath("data/bases.ini").read_text()
    return parse_corpus(text)


def curated() -> list[BaseEntry]:
    return [e for e in corpus().values() if e.curated]


def get_entry(key: str) -> BaseEntry:
    try:
        return corpus()[key]
    except KeyError:
        raise KeyError(f"unknown base key {key!r}") from None


def corpus_identity(name: str) -> Identity | None:
    """Resolve `key` or `key#i` (1-based) to a base identity from the corpus."""
    key, _, idx = name.partition("#")
    entry = corpus().get(key)
    if entry is None:
        return None
    if idx:
        raw = entry.ids[int(idx) - 1]
    elif len(entry.ids) == 1:
        raw = entry.ids[0]
    else:
        return None
    if raw == name:
        return None
    found = identities_from([raw])
    return found[0] if len(found) == 1 else None


def default_probes(ambient_name: str | None = None):
    """Every library algebra with a negation; the ambient filter is applied by verify_base."""
    from .library import expanded_library
    return expanded_library()


def verify_entry(key: str, *, check_membership: bool = True, probes=None, cap=None) -> BaseReport:
    from .library import get_many
    e = get_entry(key)
    gens = get_many(list(e.generators))
    return verify_base(gens, e.ambient, e.identities(),
                       probes if probes is not None else default_probes(e.ambient),
                       key=key, check_membership=check_membership, cap=cap)


__all__ = ["BaseEntry", "corpus", "curated", "get_entry", "corpus_identity", "verify_entry",
           "parse_corpus", "parse_identity"]
