"""Command-line front end.

Exit status: 0 pass, 1 fail, 2 some answer unknown within budget, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, NoReturn, Sequence

from .compiler import compile_bool
from .cover import cover_path, min_basis
from .crd import DEFAULT_BOUND, Status, verify_decides
from .crn import add
from .dsl import CrdDocument, DslError, corpus_names, load_corpus, parse_multiset, parse_pred, serialize
from .explore import DEFAULT_BUDGET, Exploration
from .transforms import TRANSFORMS, apply_and_reverify, resolve

EXIT = {Status.PASS: 0, Status.FAIL: 1, Status.UNKNOWN: 2}
USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _predicate(args: argparse.Namespace, doc: CrdDocument):
    if getattr(args, "pred", None):
        return parse_pred(args.pred)
    if doc.pred is None:
        raise UsageError("no predicate: pass --pred or add a 'pred' line to the file")
    return doc.pred


def _fmt_input(x: dict[str, int]) -> str:
    return "{" + ", ".join(f"{n}: {k}" for n, k in x.items()) + "}"


def _print_verification(label: str, rep, out) -> None:
    c = rep.to_dict()["counts"]
    seeded = ", seeded" if rep.seeded else ""
    print(
        f"{label}: {rep.status.value} ({c['inputs']} inputs: {c['agree']} agree, {c['disagree']} disagree, "
        f"{c['violation']} violation, {c['unknown']} unknown; bound {rep.bound}, budget {rep.budget}{seeded})",
        file=out,
    )
    for e in rep.entries:
        if e.verdict == "agree":
            continue
        parts = []
        for i, v in enumerate(e.report.reaches):
            desc = f"O{i}: {v.answer.value}"
            if v.is_yes and v.witness:
                desc += " via " + "; ".join(rep.crn.format_reaction(k) for k in v.witness)
            parts.append(desc)
        print(
            f"  {e.verdict}: x={_fmt_input(e.report.input)} expected {int(e.expected)}, "
            f"got {e.report.classification.value} [{' | '.join(parts)}]",
            file=out,
        )


def cmd_verify(args: argparse.Namespace) -> int:
    doc = load_corpus(args.crd)
    pred = _predicate(args, doc)
    rep = verify_decides(doc.crd, pred, args.bound, args.budget)
    if args.json:
        print(_dump({"name": doc.name or args.crd, **rep.to_dict()}))
    else:
        _print_verification(doc.name or args.crd, rep, sys.stdout)
    return EXIT[rep.status]


def cmd_transform(args: argparse.Namespace) -> int:
    doc = load_corpus(args.crd)
    fn = resolve(args.name)
    name = f"{doc.name}-{args.name.replace('_', '-')}" if doc.name else None
    if not args.reverify:
        target = fn(doc.crd)
        text = serialize(target, None, name)
        status = Status.PASS
    else:
        rep = apply_and_reverify(args.name, doc.crd, _predicate(args, doc), args.bound, args.budget)
        target = rep.target
        text = serialize(target, None, name)
        status = rep.status
        if args.json:
            print(_dump(rep.to_dict()))
        else:
            _print_verification("source", rep.source_report, sys.stdout)
            _print_verification("target", rep.target_report, sys.stdout)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif not args.reverify:
        sys.stdout.write(text)
    return EXIT[status]


def cmd_compile(args: argparse.Namespace) -> int:
    pred = parse_pred(args.pred)
    inputs = args.inputs.replace(",", " ").split() if args.inputs else None
    crd = compile_bool(pred, inputs)
    text = serialize(crd, pred, args.name)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_explore(args: argparse.Namespace) -> int:
    doc = load_corpus(args.crd)
    sp = doc.species
    root = parse_multiset(args.input, sp)
    if doc.seed is not None and not args.no_seed:
        root = add(root, doc.seed)
    ex = Exploration(root, doc.crn, args.budget).run()
    terminal = [c for c in ex.nodes if not any(a.enabled_at(c) for a in doc.crn.reactions)]
    if args.json:
        print(
            _dump(
                {
                    "root": sp.as_dict(root),
                    "visited": len(ex.nodes),
                    "saturated": ex.saturated,
                    "terminal": [sp.as_dict(c) for c in terminal],
                }
            )
        )
    else:
        state = "saturated" if ex.saturated else "budget exhausted"
        print(f"root {sp.format(root)}: {len(ex.nodes)} configurations visited ({state})")
        shown = terminal[: args.limit]
        print(f"terminal configurations: {len(terminal)}" + (f" (showing {len(shown)})" if len(shown) < len(terminal) else ""))
        for c in shown:
            print(f"  {sp.format(c)}")
    return 0 if ex.saturated else 2


def cmd_cover(args: argparse.Namespace) -> int:
    doc = load_corpus(args.crd)
    sp = doc.species
    src = parse_multiset(args.source, sp)
    target = parse_multiset(args.target, sp)
    path = cover_path(src, min_basis([target], doc.crn.dim), doc.crn)
    if args.json:
        body: dict[str, Any] = {"from": sp.as_dict(src), "target": sp.as_dict(target), "coverable": path is not None}
        if path is not None:
            body["witness"] = list(path)
            body["witness_reactions"] = [doc.crn.format_reaction(k) for k in path]
        print(_dump(body))
    elif path is None:
        print(f"{sp.format(src)} cannot cover {sp.format(target)}")
    else:
        steps = "; ".join(doc.crn.format_reaction(k) for k in path) or "(already covered)"
        print(f"{sp.format(src)} covers {sp.format(target)} via {steps}")
    return 0 if path is not None else 1


def cmd_report(args: argparse.Namespace) -> int:
    refs = args.files or corpus_names()
    rows = []
    worst = 0
    for ref in refs:
        doc = load_corpus(ref)
        label = doc.name or ref
        if doc.convention is None or doc.pred is None:
            rows.append({"name": label, "status": "skipped", "reason": "no decider predicate"})
            continue
        rep = verify_decides(doc.crd, doc.pred, args.bound, args.budget)
        worst = max(worst, EXIT[rep.status], key=lambda k: (k == 1, k))
        rows.append({"name": label, **rep.to_dict()})
    if args.json:
        print(_dump({"reports": rows}))
    else:
        for row in rows:
            if row["status"] == "skipped":
                print(f"{row['name']}: skipped ({row['reason']})")
                continue
            c = row["counts"]
            print(f"{row['name']}: {row['status']} ({c['inputs']} inputs, {c['disagree']} disagree, {c['violation']} violation, {c['unknown']} unknown)")
    return worst


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crdverify", description="Verify chemical reaction deciders.")
    sub = p.add_subparsers(dest="command", metavar="command")

    def common(sp: argparse.ArgumentParser, bound: int = DEFAULT_BOUND) -> None:
        sp.add_argument("--bound", type=int, default=bound, help=f"max total input count (default {bound})")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max distinct configurations per exploration")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    v = sub.add_parser("verify", help="check that a decider decides a predicate")
    v.add_argument("crd", help="decider file or corpus name")
    v.add_argument("--pred", help="predicate (defaults to the file's pred line)")
    common(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transform", help="rewrite a decider into another convention")
    t.add_argument("name", help="one of: " + ", ".join(TRANSFORMS))
    t.add_argument("crd")
    t.add_argument("--reverify", action="store_true", help="verify source and result against the predicate")
    t.add_argument("--pred")
    t.add_argument("-o", "--output")
    common(t)
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("compile", help="compile a predicate into a consensus decider")
    c.add_argument("--pred", required=True)
    c.add_argument("--inputs", help="input species (default: those named in the predicate)")
    c.add_argument("--name")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compile)

    e = sub.add_parser("explore", help="forward reachability from a configuration")
    e.add_argument("crd")
    e.add_argument("--input", required=True, help='multiset such as "2 X + Y"')
    e.add_argument("--no-seed", action="store_true", help="do not add the file's seed")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.add_argument("--limit", type=int, default=20, help="terminal configurations to print")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_explore)

    k = sub.add_parser("cover", help="can one configuration cover another")
    k.add_argument("crd")
    k.add_argument("--from", dest="source", required=True)
    k.add_argument("--target", required=True)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_cover)

    r = sub.add_parser("report", help="verify every decider with an embedded predicate")
    r.add_argument("files", nargs="*", help="files or corpus names (default: whole corpus)")
    common(r)
    r.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return USAGE_ERROR
    try:
        return args.func(args)
    except (DslError, UsageError, FileNotFoundError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"crdverify: error: {msg}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
