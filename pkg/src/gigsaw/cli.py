"""Command line front end.

Exit codes: 0 success, 1 bad input, 2 an invariant check failed,
3 the engines disagreed with each other.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import figures, text
from .chamber import ChamberError, chamber, curve_label
from .checks import CheckReport, run_checks
from .gclusters import FanError, OracleError, gigsaw_between
from .groups import Group, GroupSpecError, cyclic, cyclic_sweep, parse_group_spec
from .recipe import RecipeError, chain_order, reids_recipe, tensor_rule_violations
from .serialize import Document, DocumentError, build_document, dumps, loads
from .triangulation import ComplexError, triangulate
from .unlocking import UnlockError, Unlocker

log = logging.getLogger("gigsaw")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_INTERNAL = 3

FORMATS = ("text", "json", "svg", "tikz")
EXTENSIONS = {"text": "txt", "json": "json", "svg": "svg", "tikz": "tex"}
INTERNAL_ERRORS = (ChamberError, UnlockError, RecipeError, ComplexError, FanError, OracleError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; 2 means "violation" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Pipeline:
    """Everything computed for one group, up to the requested stage."""

    group: Group
    stage: str
    max_quotient_size: int | None = None

    def __post_init__(self) -> None:
        self.tri = triangulate(self.group)
        self.rec = reids_recipe(self.tri) if self.stage != "complex" else None
        self.unlocker = Unlocker(self.rec) if self.rec is not None else None
        self.report = None
        if self.stage == "walls":
            self.report = chamber(self.rec, self.unlocker, self.max_quotient_size)

    def document(self) -> Document:
        return build_document(self.tri, self.rec, self.report)


def slug(spec: str) -> str:
    return re.sub(r"[^0-9-]+", "_", spec).strip("_")


def render(doc: Document, fmt: str) -> str:
    if fmt == "json":
        return dumps(doc)
    if fmt == "text":
        return text.render(doc)
    return figures.emit_figure(doc, fmt)


def _groups(args) -> list[Group]:
    out = [parse_group_spec(s) for s in args.groups]
    if args.sweep is not None:
        if args.sweep < 2:
            raise UsageError("--sweep needs a maximum order of at least 2")
        out += [cyclic(*t) for t in cyclic_sweep(args.sweep)]
    if not out:
        raise UsageError("give a group such as 1/6(1,2,3) or --sweep N")
    return out


def _emit(args, name: str, body: str, count: int) -> None:
    if args.out is None:
        if count > 1 and args.format != "text":
            raise UsageError(f"{count} {args.format} documents need --out")
        sys.stdout.write(body)
        return
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / name
    path.write_text(body, encoding="utf-8")
    print(path)


def _strict_warnings(p: Pipeline) -> list[str]:
    out = []
    if p.rec is not None:
        out += [f"valency rule: {w}" for w in tensor_rule_violations(p.rec)]
    if p.report is not None and p.report.quotient_cap is not None:
        out.append(f"quotient divisors capped at {p.report.quotient_cap} vertices")
    return out


def cmd_stage(args) -> int:
    groups = _groups(args)
    status = EXIT_OK
    for k, g in enumerate(groups):
        p = Pipeline(g, args.command if args.command != "triangulate" else "complex", args.max_quotient_size)
        body = render(p.document(), args.format)
        if args.out is None and k and args.format == "text":
            body = "\n" + body
        ext = EXTENSIONS[args.format]
        _emit(args, f"{slug(g.spec())}.{args.command}.{ext}", body, len(groups))
        if args.strict:
            for w in _strict_warnings(p):
                log.warning("%s: %s", g.spec(), w)
                status = EXIT_VIOLATION
    return status


def _parse_char(group: Group, raw: str) -> int:
    try:
        parts = [int(x) for x in raw.strip("()").split(",")]
    except ValueError as exc:
        raise UsageError(f"bad character {raw!r}") from exc
    if len(parts) != len(group.factors):
        raise UsageError(f"character {raw!r} needs {len(group.factors)} components")
    return group.encode(tuple(x % n for x, n in zip(parts, group.factors)))


def _pick_curve(p: Pipeline, args) -> int:
    tri, rec = p.tri, p.rec
    if args.edge is not None:
        try:
            v1, v2 = (int(x) for x in args.edge.split(","))
            e = tri.edge(v1, v2)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"no edge {args.edge!r}") from exc
        if e is None or e.index not in rec.edge_marks:
            raise UsageError(f"edge {args.edge} is not a compact curve")
        return e.index
    if args.char is None:
        raise UsageError("gig needs --edge V1,V2 or --char C")
    chi = _parse_char(p.group, args.char)
    curves = chain_order(rec, chi) if chi in rec.chains else []
    if not curves:
        raise UsageError(f"no curve is marked by character {args.char}")
    if not 0 <= args.index < len(curves):
        raise UsageError(f"--index must be below {len(curves)} for character {args.char}")
    return curves[args.index]


def cmd_gig(args) -> int:
    if len(args.groups) != 1 or args.sweep is not None:
        raise UsageError("gig takes exactly one group")
    p = Pipeline(parse_group_spec(args.groups[0]), "recipe")
    tri, rec = p.tri, p.rec
    e = _pick_curve(p, args)
    edge = tri.edges[e]
    piece = p.unlocker(e)
    truth = gigsaw_between(*(tri.graph(t) for t in edge.triangles))
    verdict = "MATCH" if truth == piece.characters else "MISMATCH"
    lab = p.group.char_label
    if args.format == "json":
        value = {
            "group": p.group.spec(),
            "curve": {
                "label": curve_label(rec, e),
                "edge": e,
                "v1": edge.v1,
                "v2": edge.v2,
                "curve_type": tri.curve_types[e].value,
                "character": p.group.char_tuple(rec.edge_marks[e]),
            },
            "gig": [p.group.char_tuple(c) for c in sorted(piece.characters)],
            "provenance": [
                {"character": p.group.char_tuple(c), "step": step, "detail": detail}
                for c, (step, detail) in sorted(piece.provenance.items())
            ],
            "unlocked": [curve_label(rec, x) for x in piece.unlocked],
            "oracle": {"gig": [p.group.char_tuple(c) for c in sorted(truth)], "verdict": verdict},
        }
        sys.stdout.write(json.dumps(value, indent=1) + "\n")
    elif args.format == "text":
        print(
            f"{p.group.spec()} curve {curve_label(rec, e)}: "
            f"{tri.vertex_name(edge.v1)} - {tri.vertex_name(edge.v2)} {tri.curve_types[e].value}"
        )
        print("G-ig = {" + ",".join(lab(c) for c in sorted(piece.characters)) + "}")
        for c, (step, detail) in sorted(piece.provenance.items()):
            print(f"  {lab(c):>6}  {step:<3} {detail}")
        if piece.unlocked:
            print("unlocks " + ", ".join(curve_label(rec, x) for x in piece.unlocked))
        print("oracle  {" + ",".join(lab(c) for c in sorted(truth)) + "}  " + verdict)
    else:
        raise UsageError("gig prints text or json")
    return EXIT_OK if verdict == "MATCH" else EXIT_VIOLATION


def _check_json(r: CheckReport) -> dict:
    return {"group": r.group, "ok": r.ok, "violations": r.violations, "warnings": r.warnings, "counts": r.counts}


def cmd_check(args) -> int:
    if args.format not in ("text", "json"):
        raise UsageError("check prints text or json")
    groups = _groups(args)
    reports = []
    for g in groups:
        r = run_checks(g, args.max_quotient_size)
        reports.append(r)
        if args.format == "text":
            counts = ", ".join(f"{n} {k}" for k, n in r.counts.items())
            state = "ok" if r.ok else f"{len(r.violations)} violations"
            print(f"{r.group}: {state} ({counts})")
            for v in r.violations:
                print(f"  violation: {v}")
            for w in r.warnings:
                print(f"  warning: {w}")
    bad = sum(1 for r in reports if not r.ok)
    warned = sum(1 for r in reports if r.warnings)
    if args.format == "json":
        value = [_check_json(r) for r in reports]
        sys.stdout.write(json.dumps(value if len(value) > 1 else value[0], indent=1) + "\n")
    elif len(reports) > 1:
        print(f"{len(reports)} groups, {bad} with violations, {warned} with warnings")
    if bad or (args.strict and warned):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_convert(args) -> int:
    try:
        doc = loads(Path(args.source).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, f"{slug(doc.group.spec)}.{doc.stage}.{EXTENSIONS[args.format]}", render(doc, args.format), 1)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", type=Path, help="write one file per group into this directory")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    computed = _Parser(add_help=False)
    computed.add_argument("groups", nargs="*", metavar="GROUP", help="e.g. 1/6(1,2,3) or 1/2(1,1,0);1/2(0,1,1)")
    computed.add_argument("--sweep", type=int, metavar="MAX_ORDER", help="add every cyclic group up to this order")
    computed.add_argument(
        "--max-quotient-size",
        type=int,
        metavar="N",
        help="largest connected divisor set tried for quotient inequalities",
    )
    computed.add_argument("--strict", action="store_true", help="treat cross-check warnings as failures")

    parser = _Parser(prog="gigsaw", description="G-Hilb toric geometry for abelian subgroups of SL(3).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("triangulate", parents=[common, computed], help="junior simplex triangulation")
    sub.add_parser("recipe", parents=[common, computed], help="triangulation marked by the recipe")
    sub.add_parser("walls", parents=[common, computed], help="chamber inequalities and walls")
    gig = sub.add_parser("gig", parents=[common, computed], help="G-igsaw piece of one curve")
    gig.add_argument("--edge", metavar="V1,V2", help="curve between two vertex indices")
    gig.add_argument("--char", metavar="C", help="marking character, an int or a tuple for products")
    gig.add_argument("--index", type=int, default=0, help="position among curves of --char, in label order")
    sub.add_parser("check", parents=[common, computed], help="run the invariant suite")
    conv = sub.add_parser("convert", parents=[common], help="re-render a saved JSON document")
    conv.add_argument("source", help="JSON file written by --format json")
    return parser


COMMANDS = {
    "triangulate": cmd_stage,
    "recipe": cmd_stage,
    "walls": cmd_stage,
    "gig": cmd_gig,
    "check": cmd_check,
    "convert": cmd_convert,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="gigsaw: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GroupSpecError, DocumentError) as exc:
        print(f"gigsaw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except INTERNAL_ERRORS as exc:
        print(f"gigsaw: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
