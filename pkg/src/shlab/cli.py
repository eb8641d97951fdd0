"""Command-line interface.

Exit codes: 0 pass/valid/accepted, 1 fail/countermodel/rejected, 2 usage error.
``--json`` prints a report under the versioned schema name in SCHEMA.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra as alg
from . import classes, corpus, equations, library, matrices, proofs, varieties
from .formula import ParseError, parse, render

SCHEMA = "shlab/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(args, command: str, ok: bool, text: str, data) -> int:
    if args.json:
        doc = {"schema": SCHEMA, "command": command, "ok": ok, "result": data}
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(text)
    return 0 if ok else 1


def _formula(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse formula {text!r}: {exc}") from None


def _algebras(spec: str):
    try:
        return library.get_many(spec)
    except alg.AlgebraError as exc:
        raise UsageError(str(exc)) from None


def _generators(spec: str):
    """Comma-separated algebra names, or a registered variety name."""
    if "," not in spec:
        try:
            return varieties.get_variety(spec).generator_algebras()
        except KeyError:
            pass
        except varieties.NotFinitelyGenerated as exc:
            raise UsageError(str(exc)) from None
    return _algebras(spec)


# ---------------------------------------------------------------- algebra

def cmd_algebra_list(args) -> int:
    rows = []
    for A in library.library().values():
        rows.append({"name": A.name, "order": A.order, "negation": A.has_neg})
    text = "\n".join(f"{r['name']:<8} order {r['order']}  {'with' if r['negation'] else 'no'} negation"
                     for r in rows)
    return _emit(args, "algebra list", True, text, rows)


def cmd_algebra_show(args) -> int:
    A = _algebras(args.name)[0]
    data = {"name": A.name, "elements": list(A.labels), "bottom": A.labels[A.bottom],
            "top": A.labels[A.top],
            "meet": [[A.labels[x] for x in r] for r in A.meet],
            "join": [[A.labels[x] for x in r] for r in A.join],
            "imp": [[A.labels[x] for x in r] for r in A.imp],
            "neg": [A.labels[x] for x in A.neg] if A.neg is not None else None}
    return _emit(args, "algebra show", True, alg.dump_algebra(A).rstrip("\n"), data)


def cmd_algebra_check(args) -> int:
    A = _algebras(args.name)[0]
    if args.cls:
        try:
            r = classes.check_class(A, args.cls)
        except classes.UnknownClass as exc:
            raise UsageError(f"unknown class {exc}") from None
        return _emit(args, "algebra check", r.ok, str(r), r.as_dict())
    found = classes.classes_of(A)
    return _emit(args, "algebra check", True, f"{A.name}: " + " ".join(found),
                 {"algebra": A.name, "classes": found})


def cmd_enumerate(args) -> int:
    cls = args.cls
    try:
        spec = classes.get_class(cls)
    except classes.UnknownClass:
        raise UsageError(f"unknown class {cls}") from None
    try:
        pool = alg.enumerate_dhmsh(args.order) if spec.uses_negation() or cls == "DHMSH" \
            else alg.enumerate_sh(args.order)
    except alg.AlgebraError as exc:
        raise UsageError(str(exc)) from None
    found = [A for A in pool if classes.check_class(A, spec).ok]
    text = [f"{len(found)} algebras of order {args.order} in {spec.name}"]
    for A in found:
        text.append(alg.dump_algebra(A).rstrip("\n"))
    data = {"order": args.order, "class": spec.name, "count": len(found),
            "algebras": [{"name": A.name, "imp": [[A.labels[x] for x in r] for r in A.imp],
                          "elements": list(A.labels),
                          "neg": [A.labels[x] for x in A.neg] if A.neg is not None else None}
                         for A in found]}
    return _emit(args, "enumerate", True, "\n\n".join(text), data)


# ---------------------------------------------------------------- identities and bases

def _identities(name: str | None, expr: str | None):
    if name:
        try:
            return equations.resolve(name)
        except equations.UnknownIdentity as exc:
            raise UsageError(f"unknown identity {exc}") from None
    try:
        return [equations.parse_identity(expr)]
    except (ParseError, ValueError) as exc:
        raise UsageError(f"cannot parse identity {expr!r}: {exc}") from None


def cmd_identity_check(args) -> int:
    A = _algebras(args.algebra)[0]
    results = [equations.holds(A, e) for e in _identities(args.id, args.expr)]
    ok = all(r.ok for r in results)
    return _emit(args, "identity check", ok, "\n".join(map(str, results)),
                 [r.as_dict() for r in results])


def cmd_base_list(args) -> int:
    entries = list(corpus.corpus().values())
    if args.curated:
        entries = [e for e in entries if e.curated]
    text = "\n".join(f"{e.key:<24} {','.join(e.generators):<30} mod {e.ambient}" for e in entries)
    return _emit(args, "base list", True, text, [e.as_dict() for e in entries])


def cmd_base_verify(args) -> int:
    cap = args.cap
    if args.full or args.curated:
        keys = [e.key for e in (corpus.curated() if args.curated else corpus.corpus().values())]
        reports = [corpus.verify_entry(k, check_membership=not args.no_membership, cap=cap)
                   for k in keys]
        gen_fail = sum(len(r.generator_failures) for r in reports)
        ok = all(r.ok for r in reports)
        lines = [f"{r.key:<24} {'pass' if r.ok else 'FAIL'}"
                 f"{'' if r.fully_separated else '  (not fully separated)'}" for r in reports]
        lines.append(f"{len(reports)} bases, {sum(r.ok for r in reports)} pass, "
                     f"{gen_fail} generator-side failures")
        data = {"bases": len(reports), "passed": sum(r.ok for r in reports),
                "generator_failures": gen_fail, "reports": [r.as_dict() for r in reports]}
        return _emit(args, "base verify", ok, "\n".join(lines), data)
    if args.key:
        try:
            r = corpus.verify_entry(args.key, check_membership=not args.no_membership, cap=cap)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    else:
        if not (args.generators and args.ambient and args.ids):
            raise UsageError("base verify needs --key, --full, or --generators/--ambient/--ids")
        gens = _algebras(args.generators)
        try:
            base = equations.identities_from(args.ids)
            r = equations.verify_base(gens, args.ambient, base, corpus.default_probes(),
                                      check_membership=not args.no_membership, cap=cap)
        except (ParseError, classes.UnknownClass) as exc:
            raise UsageError(str(exc)) from None
        except equations.OutsideAmbient as exc:
            raise UsageError(str(exc)) from None
    return _emit(args, "base verify", r.ok, r.summary(), r.as_dict())


# ---------------------------------------------------------------- logics

def _family(name: str):
    try:
        return matrices.family(name)
    except varieties.NotFinitelyGenerated as exc:
        raise UsageError(f"undecided here: {exc}") from None
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def cmd_logic_list(args) -> int:
    rows = []
    decidable = set(matrices.decidable_logics())
    for name, lg in varieties.LOGICS.items():
        rows.append({"name": name, "variety": lg.variety, "decidable": name in decidable,
                     "extends": lg.base, "axioms": list(lg.axioms), "note": lg.note})
    text = "\n".join(f"{r['name']:<14} {'matrices' if r['decidable'] else 'proofs only':<12} "
                     f"{r['note']}".rstrip() for r in rows)
    return _emit(args, "logic list", True, text, rows)


def cmd_logic_decide(args) -> int:
    fam = _family(args.logic)
    v = matrices.is_tautology(fam, _formula(args.formula))
    data = v.as_dict() | {"logic": args.logic, "formula": args.formula}
    return _emit(args, "logic decide", v.valid, str(v), data)


def _read_formulas(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    out = []
    for raw in text.splitlines():
        s = raw.split("#", 1)[0].strip()
        if s:
            out.append(_formula(s))
    return out


def cmd_logic_consequence(args) -> int:
    fam = _family(args.logic)
    gamma = _read_formulas(args.premises) if args.premises else []
    v = matrices.consequence(fam, gamma, _formula(args.formula))
    data = v.as_dict() | {"logic": args.logic, "premises": [render(g) for g in gamma],
                          "formula": args.formula}
    return _emit(args, "logic consequence", v.valid, str(v), data)


# ---------------------------------------------------------------- varieties

def cmd_free(args) -> int:
    K = _generators(args.generators)
    try:
        F = varieties.free_algebra(K, args.arity, cap=args.cap)
    except varieties.CapExceeded as exc:
        raise UsageError(f"cap exceeded: {exc}") from None
    lines = [f"free algebra over {','.join(B.name for B in K)} on {args.arity} generators: "
             f"{F.size} elements"]
    if args.terms:
        lines += [f"  e{i}: {render(t)}" for i, t in enumerate(F.terms)]
    data = F.as_dict() if args.terms else {"generators": [B.name for B in K],
                                           "arity": args.arity, "size": F.size}
    return _emit(args, "free", True, "\n".join(lines), data)


def cmd_member(args) -> int:
    A = _algebras(args.algebra)[0]
    K = _generators(args.generators)
    try:
        m = varieties.member_of_variety(A, K, cap=args.cap)
    except varieties.CapExceeded as exc:
        raise UsageError(f"cap exceeded: {exc}") from None
    except alg.AlgebraError as exc:
        raise UsageError(str(exc)) from None
    verdict = "is in" if m.member else "is not in"
    text = f"{A.name} {verdict} V({','.join(B.name for B in K)}): {m.certificate}"
    return _emit(args, "member", m.member, text, m.as_dict())


# ---------------------------------------------------------------- proofs

def cmd_proof_check(args) -> int:
    try:
        script = proofs.load_script(args.file)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except proofs.ScriptSyntaxError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    v = proofs.check_proof(script)
    return _emit(args, "proof check", v.accepted, f"{args.file}: {v}", v.as_dict())


def cmd_proof_search(args) -> int:
    try:
        proofs.axiom_system(args.logic)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    gamma = [_formula(p) for p in args.premise or []]
    found = proofs.search_proof(args.logic, gamma, _formula(args.goal), args.depth)
    if found is None:
        return _emit(args, "proof search", False, f"no proof found up to depth {args.depth}",
                     {"found": False, "depth": args.depth})
    text = found.dump().rstrip("\n")
    return _emit(args, "proof search", True, text, {"found": True, "script": found.dump()})


def cmd_registry_dump(args) -> int:
    # the dump is structured data either way, so it always uses the JSON envelope
    args.json = True
    return _emit(args, "registry dump", True, "", varieties.registry_dump())


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    p = _Parser(prog="shlab", description="Finite semi-Heyting algebras, their logics and proofs",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("algebra", help="library algebras").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = a.add_parser("list", parents=[common])
    q.set_defaults(func=cmd_algebra_list)
    q = a.add_parser("show", parents=[common])
    q.add_argument("name")
    q.set_defaults(func=cmd_algebra_show)
    q = a.add_parser("check", parents=[common])
    q.add_argument("name")
    q.add_argument("--class", dest="cls", help="class name; without it, list all classes")
    q.set_defaults(func=cmd_algebra_check)

    q = sub.add_parser("enumerate", parents=[common], help="all algebras of a small order")
    q.add_argument("--order", type=int, required=True)
    q.add_argument("--class", dest="cls", default="SH")
    q.set_defaults(func=cmd_enumerate)

    i = sub.add_parser("identity", help="check an identity in an algebra").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = i.add_parser("check", parents=[common])
    q.add_argument("--algebra", required=True)
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", help="catalog name, group, chain identity or base key")
    g.add_argument("--expr", help="'lhs = rhs', 'lhs <= rhs' or a formula meaning formula = 1")
    q.set_defaults(func=cmd_identity_check)

    b = sub.add_parser("base", help="equational bases from the corpus").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = b.add_parser("list", parents=[common])
    q.add_argument("--curated", action="store_true")
    q.set_defaults(func=cmd_base_list)
    q = b.add_parser("verify", parents=[common])
    q.add_argument("--key")
    q.add_argument("--full", action="store_true", help="every base in the corpus")
    q.add_argument("--curated", action="store_true", help="the curated bases")
    q.add_argument("--generators")
    q.add_argument("--ambient")
    q.add_argument("--ids", help="';'-separated identity names or expressions")
    q.add_argument("--no-membership", action="store_true")
    q.add_argument("--cap", type=int)
    q.set_defaults(func=cmd_base_verify)

    lg = sub.add_parser("logic", help="decide formulas in a logic").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = lg.add_parser("list", parents=[common])
    q.set_defaults(func=cmd_logic_list)
    q = lg.add_parser("decide", parents=[common])
    q.add_argument("--logic", required=True)
    q.add_argument("formula")
    q.set_defaults(func=cmd_logic_decide)
    q = lg.add_parser("consequence", parents=[common])
    q.add_argument("--logic", required=True)
    q.add_argument("--premises", help="file with one formula per line")
    q.add_argument("formula")
    q.set_defaults(func=cmd_logic_consequence)

    q = sub.add_parser("free", parents=[common], help="free algebra of V(K)")
    q.add_argument("--generators", required=True)
    q.add_argument("--arity", type=int, required=True)
    q.add_argument("--terms", action="store_true", help="list a witness term per element")
    q.add_argument("--cap", type=int)
    q.set_defaults(func=cmd_free)

    q = sub.add_parser("member", parents=[common], help="membership in V(K)")
    q.add_argument("--algebra", required=True)
    q.add_argument("--generators", required=True)
    q.add_argument("--cap", type=int)
    q.set_defaults(func=cmd_member)

    pr = sub.add_parser("proof", help="check or search Hilbert proofs").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = pr.add_parser("check", parents=[common])
    q.add_argument("file")
    q.set_defaults(func=cmd_proof_check)
    q = pr.add_parser("search", parents=[common])
    q.add_argument("--logic", required=True)
    q.add_argument("--goal", required=True)
    q.add_argument("--premise", action="append", help="may be repeated")
    q.add_argument("--depth", type=int, default=2)
    q.set_defaults(func=cmd_proof_search)

    r = sub.add_parser("registry", help="classes, varieties and logics").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = r.add_parser("dump", parents=[common])
    q.set_defaults(func=cmd_registry_dump)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SystemExit as exc:       # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
