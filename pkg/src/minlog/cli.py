"""Command line entry point: ``minlog <subcommand> ...``.

Exit status is 0 on success, 1 when a check fails or a refutation is found,
and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chains, hierarchy, kernel, kripke
from .schemes import SCHEMES, SchemeError
from .syntax import ParseError, parse_formula

DATA = Path(__file__).parent / "data"


class UsageError(Exception):
    pass


def _resolve(path: str) -> Path:
    """A user path, falling back to the shipped data directory."""
    p = Path(path)
    if p.exists():
        return p
    q = DATA / path
    if q.exists():
        return q
    raise UsageError(f"no such file or directory: {path}")


def _emit(args, text, records):
    if args.json:
        for r in records:
            print(json.dumps(r, sort_keys=True))
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    paths = [_resolve(p) for p in args.paths]
    rep = kernel.corpus_verify(paths)
    if not rep.results and not rep.errors:
        raise UsageError("no proof scripts found")
    _emit(args, rep.text(), rep.records())
    return 0 if rep.ok else 1


def _load_model(args):
    m = kripke.read_model(_resolve(args.model))
    if getattr(args, "valuation", None):
        m = kripke.load_valuation(_resolve(args.valuation).read_text(encoding="ascii"), m)
    return m


def cmd_model(args) -> int:
    m = _load_model(args)
    f = parse_formula(args.formula)
    forced = kripke.forces(m, args.world, f)
    verdict = "forced" if forced else "not-forced"
    _emit(args, verdict + "\n", [{"id": f"{m.name}:{args.world}:{args.formula}", "verdict": verdict}])
    return 0 if forced else 1


def cmd_scheme(args) -> int:
    m = _load_model(args)
    v = kripke.scheme_holds_full(m, args.scheme)
    text = f"{args.scheme} {'HOLDS' if v.holds else 'FAILS'} in {m.name}\n"
    rec = {"id": f"{m.name}:{args.scheme}", "verdict": "holds" if v.holds else "fails"}
    if v.witness is not None:
        text += "witness: " + v.witness.as_text(m) + "\n"
        rec["witness"] = v.witness.as_dict(m)
    elif v.note:
        text += v.note + "\n"
    _emit(args, text, [rec])
    return 0 if v.holds else 1


def cmd_catalog(args) -> int:
    results = kripke.run_catalog(_resolve(args.catalog) if args.catalog else None)
    recs = [{"id": r.entry.model, "verdict": "pass" if r.ok else "fail", "mismatches": r.mismatches}
            for r in results]
    _emit(args, kripke.catalog_text(results), recs)
    return 0 if all(r.ok for r in results) else 1


def _family(ident):
    p = Path(ident)
    if p.suffix == ".fam" and p.exists():
        return p.stem, chains.read_family(p)
    return ident, chains.get_family(ident)


def cmd_certify(args) -> int:
    fid, fam = _family(args.family)
    rep = chains.certify_paper_facts(fid, fam, strict=False)
    _emit(args, rep.text(), rep.records())
    return 0 if rep.ok else 1


def cmd_closure(args) -> int:
    fid, fam = _family(args.family)
    classes = chains.predicate_closure(fam, args.seeds or None, cap=args.cap)
    text = chains.closure_text(classes)
    recs = [{"id": c.text(), "verdict": "predicate" if c.predicate else "proposition",
             "zones": str(c.zones)} for c in classes]
    status = 0
    if args.identities:
        results = chains.check_identities(fam)
        text += "\n".join(r.line() for r in results) + "\n"
        held = sum(r.holds for r in results)
        text += f"{held}/{len(results)} identities hold\n"
        recs += [{"id": f"{r.left} == {r.right}", "verdict": "pass" if r.holds else "fail",
                  "actual": r.actual} for r in results]
        status = 0 if held == len(results) else 1
    _emit(args, text, recs)
    return status


def cmd_hierarchy(args) -> int:
    manifest = hierarchy.read_manifest(_resolve(args.manifest) if args.manifest else None)
    rep = hierarchy.verify_hierarchy(manifest)
    if args.dot:
        dot = hierarchy.export_dot(manifest)
        if args.dot == "-":
            sys.stdout.write(dot)
            return 0 if rep.ok else 1
        Path(args.dot).write_text(dot, encoding="ascii")
    _emit(args, rep.text(), rep.records())
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minlog", description="Minimal-logic scheme reductions and Kripke models.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON record per claim")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="verify proof scripts")
    s.add_argument("paths", nargs="+", help="script files or directories")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("model", parents=[common], help="evaluate a formula at a world")
    s.add_argument("model")
    s.add_argument("world")
    s.add_argument("formula")
    s.add_argument("--valuation", help="[atoms] file overriding the model's atoms")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("scheme", parents=[common], help="exhaustively check a scheme in a model")
    s.add_argument("model")
    s.add_argument("scheme", choices=sorted(SCHEMES) + ["TT"])
    s.add_argument("--valuation", help="[atoms] file overriding the model's atoms")
    s.set_defaults(func=cmd_scheme)

    s = sub.add_parser("catalog", parents=[common], help="reproduce the model catalog")
    s.add_argument("catalog", nargs="?")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("certify", parents=[common], help="certify facts about a chain family")
    s.add_argument("family", help="family id or .fam file")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("closure", parents=[common], help="definable predicate classes of a family")
    s.add_argument("family")
    s.add_argument("--seeds", nargs="+")
    s.add_argument("--cap", type=int, default=64)
    s.add_argument("--identities", action="store_true", help="also check the equivalence table")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("hierarchy", parents=[common], help="verify the hierarchy manifest")
    s.add_argument("manifest", nargs="?")
    s.add_argument("--dot", metavar="OUT", help="write the diagram as DOT ('-' for stdout)")
    s.set_defaults(func=cmd_hierarchy)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"minlog: {exc}", file=sys.stderr)
    except (ParseError, kripke.ModelError, kripke.EvalError, kripke.CapExceeded, SchemeError,
            chains.FamilyError, chains.ForceError, chains.ClosureCapExceeded,
            hierarchy.ManifestError, kernel.ScriptError) as exc:
        print(f"minlog: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"minlog: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
