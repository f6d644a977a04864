"""Command-line interface: ``ngraph <verb> ...``.

Exit codes: 0 success / sound, 1 unsound input or derivation, 2 malformed or
structurally invalid input, 3 switchable-link bound exceeded, 4 split
requested where a simpler reduction applies.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import dot, lk
from .empires import Empire, Side, empire_by_intersection, empire_closure
from .formula import FormulaSyntaxError
from .generate import GeneratorError, GeneratorSpec, generate_sound, generate_unsound_labelled
from .graph import InvalidGraph, ProofGraph, check_valid, end_sequent, load, save
from .order import NoSplit, PreconditionViolated, find_split
from .sequentialize import Trace, UnsoundGraph, sequentialize
from .switching import ResourceLimitExceeded, is_ngraph

EXIT_OK, EXIT_UNSOUND, EXIT_INVALID, EXIT_LIMIT, EXIT_PRECONDITION = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_graph(path: str) -> ProofGraph:
    try:
        return check_valid(load(path))
    except InvalidGraph as exc:
        raise _Fail(EXIT_INVALID, "structural violations:\n" + "\n".join(f"  {v}" for v in exc.violations))
    except FormulaSyntaxError as exc:
        raise _Fail(EXIT_INVALID, f"bad formula: {exc}")
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise _Fail(EXIT_INVALID, f"cannot read {path}: {exc}")


def _require_sound(g: ProofGraph, bound: Optional[int]) -> None:
    verdict = is_ngraph(g, bound)
    if not verdict.sound:
        raise _Fail(EXIT_UNSOUND, f"{verdict}; witness: {verdict.witness.describe(g)}")


def cmd_check(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    verdict = is_ngraph(g, args.max_switchables)
    if verdict.sound:
        print(f"Sound  {end_sequent(g).pretty()}")
        return EXIT_OK
    print(f"{verdict}  witness: {verdict.witness.describe(g)}")
    if args.witness_dot:
        _write(args.witness_dot, dot.graph_dot(g, switching=verdict.witness))
    return EXIT_UNSOUND


def cmd_empire(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    if args.node not in g.index:
        raise _Fail(EXIT_INVALID, f"unknown node {args.node!r}")
    _require_sound(g, args.max_switchables)
    side = Side(args.side)
    if side is Side.WHOLE:
        parts = [empire_closure(g, args.node, s) for s in (Side.NORTH, Side.SOUTH)]
        members = parts[0].members | parts[1].members
        shown = parts
    else:
        members = empire_closure(g, args.node, side).members
        shown = [Empire(args.node, side, members)]
    if args.oracle:
        sides = [Side.NORTH, Side.SOUTH] if side is Side.WHOLE else [side]
        oracle = frozenset().union(*(empire_by_intersection(g, args.node, s, args.max_switchables) for s in sides))
        if oracle != members:
            raise _Fail(EXIT_UNSOUND, f"closure and intersection disagree: {sorted(members)} vs {sorted(oracle)}")
    for n in g.sorted_ids(members):
        print(f"{n}\t{g.label[n]}")
    if args.dot:
        _write(args.dot, dot.empire_dot(g, shown))
    return EXIT_OK


def cmd_split(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    _require_sound(g, args.max_switchables)
    try:
        split = find_split(g)
    except PreconditionViolated as exc:
        raise _Fail(EXIT_PRECONDITION, str(exc))
    except (NoSplit, ValueError) as exc:
        raise _Fail(EXIT_PRECONDITION, str(exc))
    print(f"split node: {split.node} ({g.label[split.node]})")
    for emp in (split.north, split.south):
        sub = emp.subgraph(g)
        print(f"{emp.side.value}: {' '.join(g.sorted_ids(emp.members))}    {end_sequent(sub).pretty()}")
    if args.dot:
        _write(args.dot, dot.split_dot(g, split))
    return EXIT_OK


def cmd_sequentialize(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    trace = Trace()
    try:
        d = sequentialize(g, encode=args.encode_units, verify=args.verify, trace=trace,
                          max_switchables=args.max_switchables)
    except UnsoundGraph as exc:
        raise _Fail(EXIT_UNSOUND, str(exc))
    if args.format == "json":
        text = lk.dumps(d)
    elif args.format == "dot":
        text = dot.derivation_dot(d)
    else:
        text = lk.render_text(d)
    _write(args.out, text)
    return EXIT_OK


def cmd_verify_lk(args: argparse.Namespace) -> int:
    try:
        d = lk.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError, TypeError, FormulaSyntaxError) as exc:
        raise _Fail(EXIT_INVALID, f"cannot read derivation: {exc}")
    result = lk.lk_check(d)
    print(f"{result}  {d.conclusion.pretty()}")
    return EXIT_OK if result.sound else EXIT_UNSOUND


def cmd_gen(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = []
    for k in range(args.count):
        seed = args.seed + k
        spec = GeneratorSpec(seed=seed, max_links=args.max_links, max_switchables=args.max_switchables,
                             mutation_rate=args.mutation_rate)
        try:
            if args.unsound:
                g, applied = generate_unsound_labelled(spec)
            else:
                g, applied = generate_sound(spec), []
        except GeneratorError as exc:
            raise _Fail(EXIT_UNSOUND, str(exc))
        name = f"{'unsound' if args.unsound else 'sound'}_{seed}.json"
        save(g, out / name)
        entry = {"file": name, "seed": seed, "max_links": args.max_links, "links": len(g.links),
                 "switchable": len(g.switchable_links)}
        if args.unsound:
            entry["mutations"] = applied
        manifest.append(entry)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(manifest)} graphs to {out}")
    return EXIT_OK


def cmd_dot(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    if args.node:
        if args.node not in g.index:
            raise _Fail(EXIT_INVALID, f"unknown node {args.node!r}")
        _require_sound(g, args.max_switchables)
        sides = [Side.NORTH, Side.SOUTH] if args.side == "whole" else [Side(args.side)]
        text = dot.empire_dot(g, [empire_closure(g, args.node, s) for s in sides])
    elif args.split:
        _require_sound(g, args.max_switchables)
        try:
            text = dot.split_dot(g, find_split(g))
        except (PreconditionViolated, NoSplit, ValueError) as exc:
            raise _Fail(EXIT_PRECONDITION, str(exc))
    else:
        text = dot.graph_dot(g)
    _write(args.out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ngraph", description="N-Graph proof-graph workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_bound(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--max-switchables", type=int, default=None,
                       help="bound on switchable links (default from NGRAPH_MAX_SWITCHABLES or 20)")
        return p

    p = with_bound(sub.add_parser("check", help="decide the soundness criterion"))
    p.add_argument("file")
    p.add_argument("--witness-dot", help="write the failing switching as DOT")
    p.set_defaults(func=cmd_check)

    p = with_bound(sub.add_parser("empire", help="north, south or whole empire of a node"))
    p.add_argument("file")
    p.add_argument("--node", required=True)
    p.add_argument("--side", choices=["north", "south", "whole"], default="north")
    p.add_argument("--oracle", action="store_true", help="cross-check against the intersection oracle")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_empire)

    p = with_bound(sub.add_parser("split", help="find the split node"))
    p.add_argument("file")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_split)

    p = with_bound(sub.add_parser("sequentialize", help="translate into an LK derivation"))
    p.add_argument("file")
    p.add_argument("--encode-units", action="store_true", help="rewrite T and F away")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--verify", action="store_true", help="re-check every intermediate graph")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_sequentialize)

    p = sub.add_parser("verify-lk", help="check a derivation file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_lk)

    p = with_bound(sub.add_parser("gen", help="generate random proof-graphs"))
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--sound", action="store_true")
    kind.add_argument("--unsound", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-links", type=int, default=GeneratorSpec.max_links)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--mutation-rate", type=float, default=GeneratorSpec.mutation_rate)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = with_bound(sub.add_parser("dot", help="render a proof-graph as DOT"))
    p.add_argument("file")
    p.add_argument("--node", help="paint the empire of this node")
    p.add_argument("--side", choices=["north", "south", "whole"], default="whole")
    p.add_argument("--split", action="store_true", help="draw the split clusters")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    raise SystemExit(main())
